#pragma once

// Right actions F x B -> B by automorphisms, the semidirect product
// F ⋉ B with (f,b)(f',b') = (ff', b^{f'} b'), and crossed homomorphisms
// α(ff') = α(f)^{f'} α(f'), counted both directly and as sections of the
// projection F ⋉ B -> F.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divisor_lab/bigint.hpp"
#include "divisor_lab/enumerate.hpp"
#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"
#include "divisor_lab/solver.hpp"

namespace divlab {

/// perms[f][b] = b^f.
class GroupAction {
 public:
  GroupAction(FiniteGroup actor, FiniteGroup target, std::vector<std::vector<ElementId>> perms)
      : actor_(std::move(actor)), target_(std::move(target)), perms_(std::move(perms)) {
    const FiniteGroup& f = actor_;
    const FiniteGroup& b = target_;
    if (perms_.size() != f.order()) throw Error(ErrorKind::invalid_action, "need one permutation per actor element");
    for (ElementId x = 0; x < f.order(); ++x) {
      const auto& p = perms_[x];
      if (p.size() != b.order()) throw Error(ErrorKind::invalid_action, "permutation of the wrong length");
      std::vector<char> hit(b.order(), 0);
      for (ElementId y : p) {
        if (y >= b.order() || hit[y]) throw Error(ErrorKind::invalid_action, "image list is not a permutation");
        hit[y] = 1;
      }
      for (ElementId u = 0; u < b.order(); ++u)
        for (ElementId v = 0; v < b.order(); ++v)
          if (p[b.mul(u, v)] != b.mul(p[u], p[v]))
            throw Error(ErrorKind::invalid_action, "action of " + f.name(x) + " is not an automorphism");
    }
    for (ElementId y = 0; y < b.order(); ++y)
      if (perms_[identity_id][y] != y) throw Error(ErrorKind::invalid_action, "identity must act trivially");
    for (ElementId x = 0; x < f.order(); ++x)
      for (ElementId z = 0; z < f.order(); ++z)
        for (ElementId y = 0; y < b.order(); ++y)
          if (perms_[f.mul(x, z)][y] != perms_[z][perms_[x][y]])
            throw Error(ErrorKind::invalid_action,
                        "not a right action at (" + f.name(x) + ", " + f.name(z) + ")");
  }

  const FiniteGroup& actor() const noexcept { return actor_; }
  const FiniteGroup& target() const noexcept { return target_; }
  const std::vector<std::vector<ElementId>>& perms() const noexcept { return perms_; }
  /// b^f
  ElementId act(ElementId b, ElementId f) const { return perms_[f][b]; }

  bool is_trivial() const {
    for (const auto& p : perms_)
      for (ElementId y = 0; y < p.size(); ++y)
        if (p[y] != y) return false;
    return true;
  }

 private:
  FiniteGroup actor_;
  FiniteGroup target_;
  std::vector<std::vector<ElementId>> perms_;
};

inline GroupAction trivial_action(const FiniteGroup& f, const FiniteGroup& b) {
  std::vector<ElementId> id(b.order());
  std::iota(id.begin(), id.end(), ElementId{0});
  return GroupAction(f, b, std::vector<std::vector<ElementId>>(f.order(), id));
}

/// Greedy generating set: repeatedly add the smallest element outside the
/// subgroup generated so far.
inline std::vector<ElementId> small_generating_set(const FiniteGroup& g) {
  std::vector<ElementId> gens;
  Subgroup h = Subgroup::trivial(g);
  for (ElementId x = 0; x < g.order(); ++x) {
    if (h.contains(x)) continue;
    gens.push_back(x);
    h = subgroup_generated(g, gens);
  }
  return gens;
}

namespace detail {

/// Extends generator images to a map on all of F by breadth-first search,
/// value(f s) = step(value(f), s). Returns nullopt on a conflict.
template <class Value, class Step>
std::optional<std::vector<Value>> extend_from_generators(const FiniteGroup& f, const std::vector<ElementId>& gens,
                                                         const Value& at_identity, Step step) {
  std::vector<std::optional<Value>> val(f.order());
  val[identity_id] = at_identity;
  std::vector<ElementId> queue{identity_id};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const ElementId x = queue[qi];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const ElementId y = f.mul(x, gens[i]);
      Value v = step(*val[x], i);
      if (!val[y]) {
        val[y] = std::move(v);
        queue.push_back(y);
      } else if (!(*val[y] == v)) {
        return std::nullopt;
      }
    }
  }
  std::vector<Value> out;
  out.reserve(f.order());
  for (auto& v : val) {
    if (!v) return std::nullopt;  // gens do not generate
    out.push_back(std::move(*v));
  }
  return out;
}

}  // namespace detail

/// All automorphisms of B as permutations of element ids.
inline std::vector<std::vector<ElementId>> automorphisms(const FiniteGroup& b) {
  const auto gens = small_generating_set(b);
  std::vector<std::vector<ElementId>> out;
  std::vector<ElementId> images(gens.size(), 0);
  const std::uint64_t total = search_space(b.order(), gens.size(), 100'000'000);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    detail::decode_tuple(idx, b.order(), images);
    auto map = detail::extend_from_generators<ElementId>(
        b, gens, identity_id, [&](ElementId v, std::size_t i) { return b.mul(v, images[i]); });
    if (!map) continue;
    std::vector<char> hit(b.order(), 0);
    bool ok = true;
    for (ElementId y : *map) {
      if (hit[y]) ok = false;
      hit[y] = 1;
    }
    for (ElementId u = 0; ok && u < b.order(); ++u)
      for (ElementId v = 0; ok && v < b.order(); ++v) ok = (*map)[b.mul(u, v)] == b.mul((*map)[u], (*map)[v]);
    if (ok) out.push_back(std::move(*map));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every right action of F on B, as homomorphisms F -> Aut(B) with
/// composition "act by f, then by f'".
inline std::vector<GroupAction> all_actions(const FiniteGroup& f, const FiniteGroup& b) {
  const auto autos = automorphisms(b);
  const auto gens = small_generating_set(f);
  std::vector<ElementId> id(b.order());
  std::iota(id.begin(), id.end(), ElementId{0});
  std::vector<GroupAction> out;
  std::vector<ElementId> choice(gens.size(), 0);
  const std::uint64_t total = search_space(autos.size(), gens.size(), 10'000'000);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    detail::decode_tuple(idx, autos.size(), choice);
    auto perms = detail::extend_from_generators<std::vector<ElementId>>(
        f, gens, id, [&](const std::vector<ElementId>& p, std::size_t i) {
          std::vector<ElementId> q(p.size());
          for (ElementId y = 0; y < p.size(); ++y) q[y] = autos[choice[i]][p[y]];
          return q;
        });
    if (!perms) continue;
    try {
      out.emplace_back(f, b, std::move(*perms));
    } catch (const Error&) {
      // generator images that do not satisfy F's relations
    }
  }
  return out;
}

struct SemidirectProduct {
  FiniteGroup group;
  std::vector<ElementId> projection;  // element -> F element
  std::size_t target_order = 1;
  /// id of (f, b)
  ElementId section(ElementId f, ElementId b) const {
    return static_cast<ElementId>(f * target_order + b);
  }
};

inline SemidirectProduct semidirect_product(const GroupAction& act) {
  const FiniteGroup& f = act.actor();
  const FiniteGroup& b = act.target();
  const std::size_t nf = f.order(), nb = b.order(), n = nf * nb;
  if (n > catalog_order_cap) throw Error(ErrorKind::size_cap_exceeded, "semidirect product too large");
  std::vector<std::vector<long long>> table(n, std::vector<long long>(n));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x) {
    const auto fx = static_cast<ElementId>(x / nb), bx = static_cast<ElementId>(x % nb);
    names.push_back("(" + f.name(fx) + "," + b.name(bx) + ")");
    for (std::size_t y = 0; y < n; ++y) {
      const auto fy = static_cast<ElementId>(y / nb), by = static_cast<ElementId>(y % nb);
      table[x][y] = static_cast<long long>(f.mul(fx, fy) * nb + b.mul(act.act(bx, fy), by));
    }
  }
  SemidirectProduct out{build_group(table, std::move(names)), std::vector<ElementId>(n), nb};
  for (std::size_t x = 0; x < n; ++x) out.projection[x] = static_cast<ElementId>(x / nb);
  return out;
}

/// Direct route: α on generators, extended by α(fs) = α(f)^s α(s), then the
/// identity α(ff') = α(f)^{f'} α(f') checked on all pairs.
inline std::uint64_t count_crossed_homs_direct(const GroupAction& act, const std::vector<ElementId>& gens,
                                               std::uint64_t cap = 100'000'000) {
  const FiniteGroup& f = act.actor();
  const FiniteGroup& b = act.target();
  const std::uint64_t total = search_space(b.order(), gens.size(), cap);
  std::vector<ElementId> images(gens.size(), 0);
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    detail::decode_tuple(idx, b.order(), images);
    auto alpha = detail::extend_from_generators<ElementId>(f, gens, identity_id, [&](ElementId v, std::size_t i) {
      return b.mul(act.act(v, gens[i]), images[i]);
    });
    if (!alpha) continue;
    bool ok = true;
    for (ElementId x = 0; ok && x < f.order(); ++x)
      for (ElementId y = 0; ok && y < f.order(); ++y)
        ok = (*alpha)[f.mul(x, y)] == b.mul(act.act((*alpha)[x], y), (*alpha)[y]);
    count += ok;
  }
  return count;
}

/// Correspondence route: homomorphisms φ: F -> F ⋉ B with π∘φ = id, via
/// generator images (s, b_s) and the semidirect multiplication table.
inline std::uint64_t count_crossed_homs(const GroupAction& act, const std::vector<ElementId>& gens,
                                        std::uint64_t cap = 100'000'000) {
  const FiniteGroup& f = act.actor();
  const FiniteGroup& b = act.target();
  const SemidirectProduct sp = semidirect_product(act);
  const FiniteGroup& p = sp.group;
  const std::uint64_t total = search_space(b.order(), gens.size(), cap);
  std::vector<ElementId> images(gens.size(), 0);
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    detail::decode_tuple(idx, b.order(), images);
    auto phi = detail::extend_from_generators<ElementId>(f, gens, identity_id, [&](ElementId v, std::size_t i) {
      return p.mul(v, sp.section(gens[i], images[i]));
    });
    if (!phi) continue;
    bool ok = true;
    for (ElementId x = 0; ok && x < f.order(); ++x) ok = sp.projection[(*phi)[x]] == x;
    for (ElementId x = 0; ok && x < f.order(); ++x)
      for (ElementId y = 0; ok && y < f.order(); ++y) ok = (*phi)[f.mul(x, y)] == p.mul((*phi)[x], (*phi)[y]);
    count += ok;
  }
  return count;
}

inline std::uint64_t count_crossed_homs(const GroupAction& act) {
  return count_crossed_homs(act, small_generating_set(act.actor()));
}

inline std::uint64_t count_crossed_homs_direct(const GroupAction& act) {
  return count_crossed_homs_direct(act, small_generating_set(act.actor()));
}

/// Invariant factors d_1 | d_2 | ... (all > 1) of G/[G,G].
inline std::vector<std::uint64_t> abelianization(const FiniteGroup& g) {
  const Subgroup comm = commutator_subgroup(g);
  const std::uint64_t q = g.order() / comm.order();
  // |{x G' : x^e ∈ G'}| for the quotient's e-torsion
  auto torsion = [&](std::uint64_t e) {
    std::uint64_t n = 0;
    for (ElementId x = 0; x < g.order(); ++x) n += comm.contains(g.pow(x, static_cast<long long>(e)));
    return n / comm.order();
  };
  // per prime p: exponents of the cyclic p-parts, largest first
  std::vector<std::vector<std::uint64_t>> parts;  // prime powers
  std::uint64_t rest = q;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    std::vector<std::uint64_t> rank_at;  // rank_at[j-1] = number of cyclic factors of order >= p^j
    std::uint64_t prev = 1, pj = 1;
    for (;;) {
      pj *= p;
      const std::uint64_t t = torsion(pj);
      if (t == prev) break;
      std::uint64_t ratio = t / prev, r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      rank_at.push_back(r);
      prev = t;
    }
    std::vector<std::uint64_t> powers;
    for (std::size_t j = 0; j < rank_at.size(); ++j) {
      const std::uint64_t exactly = rank_at[j] - (j + 1 < rank_at.size() ? rank_at[j + 1] : 0);
      std::uint64_t pw = 1;
      for (std::size_t e = 0; e <= j; ++e) pw *= p;
      for (std::uint64_t c = 0; c < exactly; ++c) powers.push_back(pw);
    }
    std::sort(powers.rbegin(), powers.rend());
    parts.push_back(std::move(powers));
  }
  std::size_t len = 0;
  for (const auto& ps : parts) len = std::max(len, ps.size());
  std::vector<std::uint64_t> out(len, 1);  // out[0] is the largest
  for (const auto& ps : parts)
    for (std::size_t i = 0; i < ps.size(); ++i) out[i] *= ps[i];
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::uint64_t abelianization_exponent(const FiniteGroup& g) {
  const auto inv = abelianization(g);
  return inv.empty() ? 1 : inv.back();
}

inline std::uint64_t abelianization_order(const FiniteGroup& g) {
  std::uint64_t n = 1;
  for (auto d : abelianization(g)) n *= d;
  return n;
}

/// One report per n dividing exp(F/F'), bound GCD(B, n), followed by the
/// corollary bound GCD(exp(F/F'), B).
inline std::vector<DivisibilityReport> theorem4_verdict(const GroupAction& act, const SolveOptions& opts = {}) {
  const std::uint64_t count = count_crossed_homs(act);
  const auto inv = abelianization(act.actor());
  const std::uint64_t e = inv.empty() ? 1 : inv.back();
  std::string inv_text;
  for (auto d : inv) inv_text += (inv_text.empty() ? "" : ",") + std::to_string(d);

  std::vector<DivisibilityReport> out;
  for (std::uint64_t n = 1; n <= e; ++n) {
    if (e % n != 0) continue;
    DivisibilityBreakdown b;
    b.invariant_factor = BigInt(n);
    b.notes.emplace_back("abelianization", inv_text);
    out.push_back(make_report("theorem4", count, group_gcd(act.target(), n, opts.gcd_mode), std::move(b)));
  }
  DivisibilityBreakdown b;
  b.invariant_factor = BigInt(e);
  b.notes.emplace_back("abelianization", inv_text);
  out.push_back(make_report("theorem4_corollary", count, group_gcd(act.target(), e, opts.gcd_mode), std::move(b)));
  return out;
}

}  // namespace divlab
