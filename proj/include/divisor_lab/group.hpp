#pragma once

// Finite groups given by Cayley tables, and the subgroup-level primitives
// (generated subgroups, centralizers, normalizers of subsets, double cosets,
// GCD(G, n), Brauer witnesses) that the solvers are built from.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "divisor_lab/bigint.hpp"
#include "divisor_lab/error.hpp"

namespace divlab {

using ElementId = std::uint32_t;

/// Every group stores its identity at id 0.
inline constexpr ElementId identity_id = 0;

/// Largest group order the catalog will build.
inline constexpr std::size_t catalog_order_cap = 720;

/// Largest group whose subgroup lattice `all_subgroups` will enumerate.
inline constexpr std::size_t subgroup_enumeration_cap = 48;

class FiniteGroup;
FiniteGroup build_group(const std::vector<std::vector<long long>>& table,
                        std::vector<std::string> names);

/// Immutable finite group with named elements. Copies share the table.
class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup() : FiniteGroup(build_group({{0}}, {"1"})) {}

  std::size_t order() const noexcept { return d_->order; }

  ElementId mul(ElementId a, ElementId b) const noexcept { return d_->table[a * d_->order + b]; }
  ElementId inv(ElementId a) const noexcept { return d_->inverse[a]; }

  /// a^k for any integer k (negative powers go through the inverse).
  ElementId pow(ElementId a, long long k) const {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    ElementId result = identity_id;
    ElementId base = a;
    auto e = static_cast<unsigned long long>(k);
    while (e != 0) {
      if (e & 1U) result = mul(result, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return result;
  }

  /// x^y = y^-1 x y.
  ElementId conj(ElementId x, ElementId y) const noexcept { return mul(mul(inv(y), x), y); }

  bool commute(ElementId a, ElementId b) const noexcept { return mul(a, b) == mul(b, a); }

  std::size_t element_order(ElementId a) const noexcept {
    std::size_t k = 1;
    for (ElementId x = a; x != identity_id; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const noexcept {
    for (ElementId a = 0; a < order(); ++a)
      for (ElementId b = a + 1; b < order(); ++b)
        if (!commute(a, b)) return false;
    return true;
  }

  const std::string& name(ElementId a) const { return d_->names.at(a); }
  const std::vector<std::string>& names() const noexcept { return d_->names; }

  std::optional<ElementId> find(const std::string& name) const {
    auto it = d_->index.find(name);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }

  /// Looks up an element by display name; throws InputError if absent.
  ElementId id_of(const std::string& name) const {
    if (auto id = find(name)) return *id;
    throw Error(ErrorKind::input_error, "no element named '" + name + "'");
  }

  std::span<const ElementId> table() const noexcept { return d_->table; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.d_ == b.d_ || (a.d_->table == b.d_->table && a.d_->names == b.d_->names);
  }

 private:
  struct Data {
    std::size_t order = 0;
    std::vector<ElementId> table;
    std::vector<ElementId> inverse;
    std::vector<std::string> names;
    std::unordered_map<std::string, ElementId> index;
  };

  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;

  friend FiniteGroup build_group(const std::vector<std::vector<long long>>& table,
                                 std::vector<std::string> names);
};

namespace detail {

// Greedy generating set of the magma (table, order): each chosen element is
// not in the multiplicative closure of the earlier ones.
inline std::vector<std::size_t> magma_generators(const std::vector<std::size_t>& t, std::size_t n) {
  std::vector<char> in(n, 0);
  std::vector<std::size_t> closure;
  std::vector<std::size_t> gens;
  for (std::size_t x = 0; x < n; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    std::vector<std::size_t> queue{x};
    in[x] = 1;
    closure.push_back(x);
    while (!queue.empty()) {
      std::size_t y = queue.back();
      queue.pop_back();
      for (std::size_t i = 0; i < closure.size(); ++i) {
        std::size_t z = closure[i];
        for (std::size_t p : {t[y * n + z], t[z * n + y]}) {
          if (!in[p]) {
            in[p] = 1;
            closure.push_back(p);
            queue.push_back(p);
          }
        }
      }
    }
  }
  return gens;
}

}  // namespace detail

/// Validates a Cayley table and returns the group it defines. The identity is
/// relabelled to id 0 if the table puts it elsewhere.
inline FiniteGroup build_group(const std::vector<std::vector<long long>>& table,
                               std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) throw NotAGroup(GroupAxiom::identity, "empty table");
  if (names.size() != n)
    throw Error(ErrorKind::bad_names, "expected " + std::to_string(n) + " names, got " +
                                          std::to_string(names.size()));
  {
    std::unordered_set<std::string> seen;
    for (const auto& s : names) {
      if (s.empty()) throw Error(ErrorKind::bad_names, "empty element name");
      if (!seen.insert(s).second) throw Error(ErrorKind::bad_names, "duplicate name '" + s + "'");
    }
  }

  std::vector<std::size_t> t(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n)
      throw NotAGroup(GroupAxiom::closure, "row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      long long v = table[i][j];
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw NotAGroup(GroupAxiom::closure, "entry (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") out of range");
      t[i * n + j] = static_cast<std::size_t>(v);
    }
  }

  std::optional<std::size_t> e;
  for (std::size_t c = 0; c < n && !e; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = t[c * n + x] == x && t[x * n + c] == x;
    if (ok) e = c;
  }
  if (!e) throw NotAGroup(GroupAxiom::identity, "no two-sided identity");

  if (*e != 0) {
    auto relabel = [&](std::size_t x) { return x == 0 ? *e : (x == *e ? 0 : x); };
    std::vector<std::size_t> r(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[relabel(i) * n + relabel(j)] = relabel(t[i * n + j]);
    t = std::move(r);
    std::swap(names[0], names[*e]);
  }

  std::vector<ElementId> inverse(n);
  for (std::size_t x = 0; x < n; ++x) {
    bool found = false;
    for (std::size_t y = 0; y < n && !found; ++y) {
      if (t[x * n + y] == 0 && t[y * n + x] == 0) {
        inverse[x] = static_cast<ElementId>(y);
        found = true;
      }
    }
    if (!found) throw NotAGroup(GroupAxiom::inverse, "element " + names[x] + " has no inverse");
  }

  // Light's associativity test: checking (x a) y = x (a y) for a in a
  // generating set of the magma is enough.
  for (std::size_t a : detail::magma_generators(t, n)) {
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t xa = t[x * n + a];
      for (std::size_t y = 0; y < n; ++y) {
        if (t[xa * n + y] != t[x * n + t[a * n + y]])
          throw NotAGroup(GroupAxiom::associativity,
                          "(" + names[x] + "*" + names[a] + ")*" + names[y]);
      }
    }
  }

  auto d = std::make_shared<FiniteGroup::Data>();
  d->order = n;
  d->table.assign(t.begin(), t.end());
  d->inverse = std::move(inverse);
  d->names = std::move(names);
  for (std::size_t i = 0; i < n; ++i) d->index.emplace(d->names[i], static_cast<ElementId>(i));
  return FiniteGroup(std::move(d));
}

/// Subgroup of a parent group, stored as a sorted id set plus a membership mask.
class Subgroup {
 public:
  /// Validates that `members` is a subgroup of `group`.
  static Subgroup from_members(FiniteGroup group, std::vector<ElementId> members) {
    Subgroup h(std::move(group), std::move(members));
    const auto& g = h.group_;
    if (!h.contains(identity_id))
      throw Error(ErrorKind::precondition_violated, "subset does not contain the identity");
    for (ElementId a : h.members_) {
      if (!h.contains(g.inv(a)))
        throw Error(ErrorKind::precondition_violated, "subset not closed under inverse");
      for (ElementId b : h.members_)
        if (!h.contains(g.mul(a, b)))
          throw Error(ErrorKind::precondition_violated, "subset not closed under product");
    }
    if (g.order() % h.order() != 0)
      throw Error(ErrorKind::precondition_violated, "subgroup order does not divide group order");
    return h;
  }

  static Subgroup whole(const FiniteGroup& g) {
    std::vector<ElementId> all(g.order());
    std::iota(all.begin(), all.end(), ElementId{0});
    return Subgroup(g, std::move(all));
  }

  static Subgroup trivial(const FiniteGroup& g) { return Subgroup(g, {identity_id}); }

  const FiniteGroup& group() const noexcept { return group_; }
  std::span<const ElementId> members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(ElementId a) const noexcept { return a < mask_.size() && mask_[a] != 0; }
  bool is_trivial() const noexcept { return members_.size() == 1; }

  bool is_normal() const {
    for (ElementId g = 0; g < group_.order(); ++g)
      for (ElementId h : members_)
        if (!contains(group_.conj(h, g))) return false;
    return true;
  }

  /// The subgroup as a standalone group; element i of the result is members()[i].
  FiniteGroup to_group() const {
    std::vector<ElementId> position(group_.order(), 0);
    for (std::size_t i = 0; i < members_.size(); ++i) position[members_[i]] = static_cast<ElementId>(i);
    std::vector<std::vector<long long>> table(order(), std::vector<long long>(order()));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < order(); ++i) {
      names.push_back(group_.name(members_[i]));
      for (std::size_t j = 0; j < order(); ++j)
        table[i][j] = position[group_.mul(members_[i], members_[j])];
    }
    return build_group(table, std::move(names));
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.members_ == b.members_ && a.group_ == b.group_;
  }

 private:
  Subgroup(FiniteGroup group, std::vector<ElementId> members)
      : group_(std::move(group)), members_(std::move(members)), mask_(group_.order(), 0) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (ElementId a : members_) {
      if (a >= group_.order())
        throw Error(ErrorKind::precondition_violated, "element id out of range");
      mask_[a] = 1;
    }
  }

  FiniteGroup group_;
  std::vector<ElementId> members_;
  std::vector<char> mask_;

  friend Subgroup subgroup_generated(const FiniteGroup&, std::span<const ElementId>);
  friend Subgroup subgroup_from_mask(const FiniteGroup&, const std::vector<char>&);
};

/// Builds a subgroup from a membership mask that is already known to be one.
inline Subgroup subgroup_from_mask(const FiniteGroup& g, const std::vector<char>& mask) {
  std::vector<ElementId> members;
  for (ElementId a = 0; a < g.order(); ++a)
    if (mask[a]) members.push_back(a);
  return Subgroup(g, std::move(members));
}

/// Smallest subgroup containing `gens` (closure fixpoint under right multiplication).
inline Subgroup subgroup_generated(const FiniteGroup& g, std::span<const ElementId> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<ElementId> members{identity_id};
  in[identity_id] = 1;
  for (ElementId s : gens)
    if (s >= g.order()) throw Error(ErrorKind::precondition_violated, "generator id out of range");
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (ElementId s : gens) {
      ElementId y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  return Subgroup(g, std::move(members));
}

inline Subgroup subgroup_generated(const FiniteGroup& g, std::initializer_list<ElementId> gens) {
  return subgroup_generated(g, std::span<const ElementId>(gens.begin(), gens.size()));
}

/// {g : g s = s g for all s in S}.
inline Subgroup centralizer(const FiniteGroup& g, std::span<const ElementId> s) {
  std::vector<char> mask(g.order(), 0);
  for (ElementId a = 0; a < g.order(); ++a)
    mask[a] = std::all_of(s.begin(), s.end(), [&](ElementId x) { return g.commute(a, x); });
  return subgroup_from_mask(g, mask);
}

/// {g : g^-1 A g = A} with set equality; A is any subset.
inline Subgroup normalizer_of_subset(const FiniteGroup& g, std::span<const ElementId> a) {
  std::vector<char> in_a(g.order(), 0);
  for (ElementId x : a) in_a.at(x) = 1;
  std::vector<char> mask(g.order(), 0);
  for (ElementId y = 0; y < g.order(); ++y) {
    // conjugation is injective, so inclusion of a finite set forces equality
    mask[y] = std::all_of(a.begin(), a.end(), [&](ElementId x) { return in_a[g.conj(x, y)] != 0; });
  }
  return subgroup_from_mask(g, mask);
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<char> mask(a.group().order(), 0);
  for (ElementId x : a.members()) mask[x] = b.contains(x);
  return subgroup_from_mask(a.group(), mask);
}

/// H^g = g^-1 H g.
inline Subgroup conjugate(const Subgroup& h, ElementId g) {
  const auto& grp = h.group();
  std::vector<char> mask(grp.order(), 0);
  for (ElementId x : h.members()) mask[grp.conj(x, g)] = 1;
  return subgroup_from_mask(grp, mask);
}

struct DoubleCoset {
  Subgroup subgroup;
  ElementId representative;
  std::vector<ElementId> members;  // sorted

  bool contains(ElementId a) const { return std::binary_search(members.begin(), members.end(), a); }
  std::size_t size() const noexcept { return members.size(); }
};

/// H g H = {h1 g h2}.
inline DoubleCoset double_coset(const Subgroup& h, ElementId g) {
  const auto& grp = h.group();
  std::vector<char> mask(grp.order(), 0);
  for (ElementId h1 : h.members()) {
    ElementId h1g = grp.mul(h1, g);
    for (ElementId h2 : h.members()) mask[grp.mul(h1g, h2)] = 1;
  }
  std::vector<ElementId> members;
  for (ElementId a = 0; a < grp.order(); ++a)
    if (mask[a]) members.push_back(a);
  return DoubleCoset{h, g, std::move(members)};
}

/// Every subgroup exactly once, ordered by (order, members). Requires |G| <= 48.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n > subgroup_enumeration_cap)
    throw Error(ErrorKind::size_cap_exceeded, "subgroup enumeration needs |G| <= " +
                                                  std::to_string(subgroup_enumeration_cap));
  using Mask = std::uint64_t;
  auto close = [&](Mask seed) {
    std::vector<ElementId> gens;
    for (ElementId a = 0; a < n; ++a)
      if ((seed >> a) & 1U) gens.push_back(a);
    Mask in = 1;
    std::vector<ElementId> list{identity_id};
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (ElementId s : gens) {
        ElementId y = g.mul(list[i], s);
        if (!((in >> y) & 1U)) {
          in |= Mask{1} << y;
          list.push_back(y);
        }
      }
    }
    return in;
  };

  std::set<Mask> cyclic;
  for (ElementId a = 0; a < n; ++a) cyclic.insert(close(Mask{1} << a));

  std::set<Mask> found(cyclic.begin(), cyclic.end());
  std::vector<Mask> work(cyclic.begin(), cyclic.end());
  while (!work.empty()) {
    Mask a = work.back();
    work.pop_back();
    for (Mask c : cyclic) {
      if ((c & ~a) == 0) continue;
      Mask joined = close(a | c);
      if (found.insert(joined).second) work.push_back(joined);
    }
  }

  std::vector<Subgroup> out;
  for (Mask m : found) {
    std::vector<char> mask(n, 0);
    for (ElementId a = 0; a < n; ++a) mask[a] = static_cast<char>((m >> a) & 1U);
    out.push_back(subgroup_from_mask(g, mask));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return std::lexicographical_compare(x.members().begin(), x.members().end(),
                                        y.members().begin(), y.members().end());
  });
  return out;
}

enum class GcdMode { fast, oracle };

/// GCD(H, n): LCM of the orders of subgroups of H dividing n. For finite H this
/// is gcd(|H|, n), and GCD(H, 0) = |H|. The oracle mode enumerates subgroups.
inline std::uint64_t group_gcd(const Subgroup& h, const BigInt& n, GcdMode mode = GcdMode::fast) {
  const auto order = static_cast<std::uint64_t>(h.order());
  if (mode == GcdMode::fast) {
    BigInt r = boost::multiprecision::abs(n) % order;
    return std::gcd(order, static_cast<std::uint64_t>(r));
  }
  if (h.order() > subgroup_enumeration_cap)
    throw Error(ErrorKind::size_cap_exceeded, "oracle GCD needs |H| <= " +
                                                  std::to_string(subgroup_enumeration_cap));
  const FiniteGroup standalone = h.is_trivial() ? FiniteGroup() : h.to_group();
  std::uint64_t acc = 1;
  for (const auto& k : all_subgroups(standalone)) {
    if (divides(BigInt(k.order()), n)) acc = std::lcm(acc, static_cast<std::uint64_t>(k.order()));
  }
  return acc;
}

inline std::uint64_t group_gcd(const FiniteGroup& g, const BigInt& n, GcdMode mode = GcdMode::fast) {
  return group_gcd(Subgroup::whole(g), n, mode);
}

/// For U normal in V and u in U, returns w in U with w^-1 v^|U| w = (vu)^|U|.
/// An empty result would contradict Brauer's lemma.
inline std::optional<ElementId> brauer_check(const FiniteGroup& v_group, const Subgroup& u_sub,
                                             ElementId v, ElementId u) {
  if (!(u_sub.group() == v_group))
    throw Error(ErrorKind::precondition_violated, "U is not a subgroup of V");
  if (!u_sub.contains(u)) throw Error(ErrorKind::precondition_violated, "u is not in U");
  if (v >= v_group.order()) throw Error(ErrorKind::precondition_violated, "v out of range");
  if (!u_sub.is_normal()) throw Error(ErrorKind::not_normal, "U is not normal in V");
  const auto k = static_cast<long long>(u_sub.order());
  const ElementId lhs = v_group.pow(v, k);
  const ElementId rhs = v_group.pow(v_group.mul(v, u), k);
  for (ElementId w : u_sub.members())
    if (v_group.conj(lhs, w) == rhs) return w;
  return std::nullopt;
}

/// [G, G], generated by all commutators a^-1 b^-1 a b.
inline Subgroup commutator_subgroup(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<ElementId> commutators;
  for (ElementId a = 0; a < g.order(); ++a) {
    for (ElementId b = 0; b < g.order(); ++b) {
      ElementId c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
      if (!seen[c]) {
        seen[c] = 1;
        commutators.push_back(c);
      }
    }
  }
  return subgroup_generated(g, commutators);
}

inline std::size_t conjugacy_class_count(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::size_t classes = 0;
  for (ElementId a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    ++classes;
    for (ElementId y = 0; y < g.order(); ++y) seen[g.conj(a, y)] = 1;
  }
  return classes;
}

}  // namespace divlab
