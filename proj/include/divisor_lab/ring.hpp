#pragma once

// Finite rings with unity: Z/k, M_d(Z/k) and the group ring (Z/k)[G].
// Elements are coordinate vectors reduced into [0, k): one residue, d*d
// matrix entries in row-major order, or one coefficient per group element.
// Equality is therefore structural.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"

namespace divlab {

enum class RingKind { modular, matrix, group_ring };

struct RingElement {
  std::vector<std::int64_t> coords;
  friend bool operator==(const RingElement&, const RingElement&) = default;
  friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

/// Largest number of elements `FiniteRing::all_elements` will list.
inline constexpr std::uint64_t ring_listing_cap = 1U << 20;

class FiniteRing {
 public:
  static FiniteRing modular(std::int64_t k) { return FiniteRing(RingKind::modular, k, 1, {}); }
  static FiniteRing matrix(std::int64_t k, std::size_t d) { return FiniteRing(RingKind::matrix, k, d, {}); }
  static FiniteRing group_ring(std::int64_t k, FiniteGroup g) {
    return FiniteRing(RingKind::group_ring, k, 1, std::move(g));
  }

  RingKind kind() const noexcept { return kind_; }
  std::int64_t modulus() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return d_; }
  const FiniteGroup& base_group() const noexcept { return group_; }

  std::size_t width() const noexcept {
    switch (kind_) {
      case RingKind::modular: return 1;
      case RingKind::matrix: return d_ * d_;
      case RingKind::group_ring: return group_.order();
    }
    return 1;
  }

  std::string describe() const {
    switch (kind_) {
      case RingKind::modular: return "Z/" + std::to_string(k_);
      case RingKind::matrix: return "M_" + std::to_string(d_) + "(Z/" + std::to_string(k_) + ")";
      case RingKind::group_ring: return "(Z/" + std::to_string(k_) + ")[G], |G| = " + std::to_string(group_.order());
    }
    return {};
  }

  /// Builds an element from raw integers, reducing modulo k.
  RingElement element(std::vector<std::int64_t> coords) const {
    if (coords.size() != width())
      throw Error(ErrorKind::input_error, "ring element needs " + std::to_string(width()) + " coordinates");
    for (auto& c : coords) c = reduce(c);
    return RingElement{std::move(coords)};
  }

  RingElement zero() const { return RingElement{std::vector<std::int64_t>(width(), 0)}; }

  RingElement one() const { return scalar(1); }

  /// c times the unity.
  RingElement scalar(std::int64_t c) const {
    RingElement e = zero();
    switch (kind_) {
      case RingKind::modular: e.coords[0] = reduce(c); break;
      case RingKind::matrix:
        for (std::size_t i = 0; i < d_; ++i) e.coords[i * d_ + i] = reduce(c);
        break;
      case RingKind::group_ring: e.coords[identity_id] = reduce(c); break;
    }
    return e;
  }

  /// The basis element of a group ring belonging to g.
  RingElement basis(ElementId g) const {
    if (kind_ != RingKind::group_ring) throw Error(ErrorKind::precondition_violated, "basis needs a group ring");
    RingElement e = zero();
    e.coords.at(g) = reduce(1);
    return e;
  }

  RingElement add(const RingElement& a, const RingElement& b) const {
    RingElement c = a;
    for (std::size_t i = 0; i < c.coords.size(); ++i) c.coords[i] = (c.coords[i] + b.coords[i]) % k_;
    return c;
  }

  RingElement neg(const RingElement& a) const {
    RingElement c = a;
    for (auto& x : c.coords) x = (k_ - x) % k_;
    return c;
  }

  RingElement sub(const RingElement& a, const RingElement& b) const { return add(a, neg(b)); }

  RingElement mul(const RingElement& a, const RingElement& b) const {
    RingElement c = zero();
    switch (kind_) {
      case RingKind::modular: c.coords[0] = a.coords[0] * b.coords[0] % k_; break;
      case RingKind::matrix:
        for (std::size_t i = 0; i < d_; ++i)
          for (std::size_t l = 0; l < d_; ++l) {
            const std::int64_t x = a.coords[i * d_ + l];
            if (x == 0) continue;
            for (std::size_t j = 0; j < d_; ++j)
              c.coords[i * d_ + j] = (c.coords[i * d_ + j] + x * b.coords[l * d_ + j]) % k_;
          }
        break;
      case RingKind::group_ring:
        for (ElementId g = 0; g < group_.order(); ++g) {
          if (a.coords[g] == 0) continue;
          for (ElementId h = 0; h < group_.order(); ++h) {
            if (b.coords[h] == 0) continue;
            auto& slot = c.coords[group_.mul(g, h)];
            slot = (slot + a.coords[g] * b.coords[h]) % k_;
          }
        }
        break;
    }
    return c;
  }

  /// a^e for e >= 0.
  RingElement power(RingElement a, std::uint64_t e) const {
    RingElement acc = one();
    while (e > 0) {
      if (e & 1U) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return acc;
  }

  bool is_zero(const RingElement& a) const {
    for (auto x : a.coords)
      if (x != 0) return false;
    return true;
  }

  /// Two-sided inverse, found on the cycle of powers of a.
  std::optional<RingElement> inverse(const RingElement& a) const {
    const RingElement u = one();
    std::set<RingElement> seen;
    RingElement prev = u, cur = a;
    while (seen.insert(cur).second) {
      if (cur == u) return prev;
      prev = cur;
      cur = mul(cur, a);
    }
    return std::nullopt;
  }

  std::uint64_t size_capped(std::uint64_t cap) const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < width(); ++i) {
      if (n > cap / static_cast<std::uint64_t>(k_)) return cap + 1;
      n *= static_cast<std::uint64_t>(k_);
    }
    return n;
  }

  /// Every element, in lexicographic coordinate order.
  std::vector<RingElement> all_elements() const {
    if (size_capped(ring_listing_cap) > ring_listing_cap)
      throw Error(ErrorKind::size_cap_exceeded, describe() + " has more than " + std::to_string(ring_listing_cap) +
                                                    " elements");
    std::vector<RingElement> out;
    RingElement e = zero();
    for (;;) {
      out.push_back(e);
      bool carried_out = true;
      for (std::size_t i = width(); i-- > 0;) {
        if (++e.coords[i] < k_) {
          carried_out = false;
          break;
        }
        e.coords[i] = 0;
      }
      if (carried_out) return out;
    }
  }

  std::string format(const RingElement& a) const {
    switch (kind_) {
      case RingKind::modular: return std::to_string(a.coords[0]);
      case RingKind::matrix: {
        std::string s = "[";
        for (std::size_t i = 0; i < d_; ++i) {
          s += i ? ",[" : "[";
          for (std::size_t j = 0; j < d_; ++j) s += (j ? "," : "") + std::to_string(a.coords[i * d_ + j]);
          s += "]";
        }
        return s + "]";
      }
      case RingKind::group_ring: {
        std::string s;
        for (ElementId g = 0; g < group_.order(); ++g) {
          if (a.coords[g] == 0) continue;
          if (!s.empty()) s += " + ";
          if (a.coords[g] != 1) s += std::to_string(a.coords[g]) + "*";
          s += group_.name(g);
        }
        return s.empty() ? "0" : s;
      }
    }
    return {};
  }

 private:
  FiniteRing(RingKind kind, std::int64_t k, std::size_t d, FiniteGroup g)
      : kind_(kind), k_(k), d_(d), group_(std::move(g)) {
    if (k_ < 1) throw Error(ErrorKind::input_error, "ring modulus must be >= 1");
    if (k_ > (std::int64_t{1} << 30)) throw Error(ErrorKind::size_cap_exceeded, "ring modulus too large");
    if (d_ < 1) throw Error(ErrorKind::input_error, "matrix dimension must be >= 1");
  }

  std::int64_t reduce(std::int64_t c) const {
    c %= k_;
    return c < 0 ? c + k_ : c;
  }

  RingKind kind_;
  std::int64_t k_;
  std::size_t d_;
  FiniteGroup group_;
};

/// A finite group together with ring images of its elements; `images[g]` is
/// the image of element-id g.
struct UnitEmbedding {
  FiniteGroup group;
  std::vector<RingElement> images;
};

/// Checks that the images are units and multiply like the group; with
/// `injective` also that distinct elements have distinct images.
inline void validate_embedding(const FiniteRing& r, const UnitEmbedding& e, bool injective) {
  const FiniteGroup& g = e.group;
  if (e.images.size() != g.order()) throw Error(ErrorKind::input_error, "need one ring image per group element");
  for (const auto& x : e.images)
    if (x.coords.size() != r.width()) throw Error(ErrorKind::input_error, "ring image has the wrong width");
  for (ElementId a = 0; a < g.order(); ++a) {
    if (!(r.mul(e.images[a], e.images[g.inv(a)]) == r.one()))
      throw Error(ErrorKind::precondition_violated, "image of " + g.name(a) + " is not invertible by its inverse");
    for (ElementId b = 0; b < g.order(); ++b)
      if (!(r.mul(e.images[a], e.images[b]) == e.images[g.mul(a, b)]))
        throw Error(ErrorKind::precondition_violated,
                    "embedding is not multiplicative at (" + g.name(a) + ", " + g.name(b) + ")");
  }
  if (injective) {
    std::set<RingElement> distinct(e.images.begin(), e.images.end());
    if (distinct.size() != e.images.size()) throw Error(ErrorKind::precondition_violated, "embedding is not injective");
  }
}

/// The subgroup of R* generated by the given units, with unity as identity
/// and elements named by their ring formatting.
inline UnitEmbedding unit_group_generated(const FiniteRing& r, const std::vector<RingElement>& gens) {
  for (const auto& x : gens)
    if (!r.inverse(x)) throw Error(ErrorKind::precondition_violated, r.format(x) + " is not a unit");
  std::vector<RingElement> elems{r.one()};
  std::map<RingElement, std::size_t> index{{r.one(), 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& x : gens) {
      RingElement y = r.mul(elems[i], x);
      if (index.emplace(y, elems.size()).second) {
        elems.push_back(std::move(y));
        if (elems.size() > catalog_order_cap)
          throw Error(ErrorKind::size_cap_exceeded, "unit subgroup larger than " + std::to_string(catalog_order_cap));
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<long long>> table(n, std::vector<long long>(n));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(r.format(elems[a]));
    for (std::size_t b = 0; b < n; ++b) table[a][b] = static_cast<long long>(index.at(r.mul(elems[a], elems[b])));
  }
  UnitEmbedding out{build_group(table, names), {}};
  // build_group keeps the identity at 0 and preserves the other positions
  out.images = std::move(elems);
  return out;
}

/// The full unit group R*, by listing every element.
inline UnitEmbedding all_units(const FiniteRing& r) {
  std::vector<RingElement> units;
  for (auto& x : r.all_elements())
    if (r.inverse(x)) units.push_back(std::move(x));
  return unit_group_generated(r, units);
}

/// G inside (Z/k)[G] via g -> 1*g.
inline UnitEmbedding group_ring_embedding(const FiniteRing& r) {
  if (r.kind() != RingKind::group_ring) throw Error(ErrorKind::precondition_violated, "needs a group ring");
  UnitEmbedding e{r.base_group(), {}};
  for (ElementId g = 0; g < r.base_group().order(); ++g) e.images.push_back(r.basis(g));
  return e;
}

}  // namespace divlab
