#pragma once

// Homomorphisms from a finitely presented n-indexed group F = <g_1..g_k | R>
// with deg: F -> Z/n into a finite group G, and checkers for the machinery
// around them: φ-cores, the degree-one twist of Lemma 0, closure
// conditions I and II, and the containment ψ(f) ∈ φ(f)H_φ.
//
// A homomorphism is stored as the tuple of generator images.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divisor_lab/enumerate.hpp"
#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"
#include "divisor_lab/int_matrix.hpp"
#include "divisor_lab/solver.hpp"
#include "divisor_lab/system.hpp"
#include "divisor_lab/word.hpp"

namespace divlab {

using HomImages = std::vector<ElementId>;

struct FinitePresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;  // coefficient-free, arity = generators.size()

  std::size_t rank() const noexcept { return generators.size(); }
};

inline FinitePresentation make_presentation(std::vector<std::string> generators,
                                            const std::vector<std::string>& relators) {
  if (generators.empty()) throw Error(ErrorKind::input_error, "a presentation needs a generator");
  std::vector<std::string> sorted = generators;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::bad_names, "duplicate generator name");
  FinitePresentation p{std::move(generators), {}};
  for (const auto& r : relators) p.relators.push_back(parse_word(r, p.generators));
  return p;
}

/// deg(g_i) = degrees[i] in Z/n, n >= 1.
struct Indexing {
  std::vector<long long> degrees;
  long long n = 1;
};

inline long long reduce_mod(long long x, long long n) {
  x %= n;
  return x < 0 ? x + n : x;
}

inline long long degree_of(const Word& w, const Indexing& idx) {
  long long d = 0;
  for (std::size_t j = 0; j < idx.degrees.size(); ++j)
    d = reduce_mod(d + exponent_sum(w, j) * reduce_mod(idx.degrees[j], idx.n), idx.n);
  return d;
}

/// Relators have degree 0 and the generator degrees generate Z/n.
inline void validate_indexing(const FinitePresentation& p, const Indexing& idx) {
  if (idx.n < 1) throw Error(ErrorKind::degree_mismatch, "only n >= 1 is supported");
  if (idx.degrees.size() != p.rank()) throw Error(ErrorKind::degree_mismatch, "need one degree per generator");
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    if (degree_of(p.relators[r], idx) != 0)
      throw Error(ErrorKind::degree_mismatch, "relator " + std::to_string(r) + " has nonzero degree");
  long long g = idx.n;
  for (long long d : idx.degrees) g = std::gcd(g, reduce_mod(d, idx.n));
  if (g != 1) throw Error(ErrorKind::degree_mismatch, "generator degrees do not generate Z/" + std::to_string(idx.n));
}

inline bool satisfies_relators(const FiniteGroup& g, const FinitePresentation& p, const HomImages& images) {
  for (const auto& r : p.relators)
    if (evaluate(g, r, images) != identity_id) return false;
  return true;
}

/// Every generator-image tuple satisfying all relators, row-major.
inline std::vector<HomImages> enumerate_homs(const FinitePresentation& p, const FiniteGroup& g,
                                             std::uint64_t cap = 100'000'000) {
  std::vector<CompiledWord> rel;
  for (const auto& r : p.relators) rel.emplace_back(g, r);
  std::vector<HomImages> out;
  std::vector<ElementId> inverses(p.rank());
  for_each_assignment(g.order(), p.rank(), cap, [&](std::span<const ElementId> t) {
    for (std::size_t j = 0; j < t.size(); ++j) inverses[j] = g.inv(t[j]);
    for (const auto& r : rel)
      if (r(g, t, inverses) != identity_id) return;
    out.emplace_back(t.begin(), t.end());
  });
  return out;
}

/// φ(F) and φ(ker deg), read off K = <(φ(g_i), deg g_i)> inside G x Z/n.
struct HomImageSets {
  std::vector<ElementId> image;
  std::vector<ElementId> kernel_image;
};

inline HomImageSets hom_image_sets(const FiniteGroup& g, const Indexing& idx, const HomImages& images) {
  const auto n = static_cast<std::size_t>(idx.n);
  std::vector<char> seen(g.order() * n, 0);
  std::vector<std::pair<ElementId, std::size_t>> queue{{identity_id, 0}};
  seen[0] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto [a, d] = queue[qi];
    for (std::size_t i = 0; i < images.size(); ++i) {
      const ElementId b = g.mul(a, images[i]);
      const auto e = static_cast<std::size_t>(reduce_mod(static_cast<long long>(d) + idx.degrees[i], idx.n));
      if (!seen[b * n + e]) {
        seen[b * n + e] = 1;
        queue.push_back({b, e});
      }
    }
  }
  HomImageSets out;
  for (ElementId a = 0; a < g.order(); ++a) {
    bool any = false;
    for (std::size_t d = 0; d < n; ++d) any = any || seen[a * n + d];
    if (any) out.image.push_back(a);
    if (seen[a * n]) out.kernel_image.push_back(a);
  }
  return out;
}

/// H_φ = ∩_{a ∈ φ(F)} H^a ∩ C(φ(ker deg)).
inline Subgroup phi_core(const FiniteGroup& g, const Indexing& idx, const HomImages& images, const Subgroup& h) {
  if (!(h.group() == g)) throw Error(ErrorKind::precondition_violated, "H is not a subgroup of G");
  const auto sets = hom_image_sets(g, idx, images);
  Subgroup core = intersect(h, centralizer(g, sets.kernel_image));
  for (ElementId a : sets.image) core = intersect(core, conjugate(h, a));
  return core;
}

/// The first word of degree 1 when words over g_1, g_1^-1, g_2, g_2^-1, ...
/// are listed by length, then lexicographically.
inline Word canonical_degree_one_word(const FinitePresentation& p, const Indexing& idx) {
  const std::size_t k = p.rank(), letters = 2 * k;
  std::uint64_t budget = 1'000'000;
  for (std::size_t len = 0; len <= 32; ++len) {
    std::vector<std::size_t> w(len, 0);
    for (;;) {
      long long d = 0;
      for (std::size_t c : w) d += (c % 2 == 0 ? 1 : -1) * idx.degrees[c / 2];
      if (reduce_mod(d, idx.n) == reduce_mod(1, idx.n)) {
        std::vector<Letter> out;
        for (std::size_t c : w) out.emplace_back(VariableLetter{c / 2, c % 2 == 0 ? 1 : -1});
        return Word(k, std::move(out));
      }
      if (--budget == 0) break;
      std::size_t i = len;
      while (i > 0 && ++w[i - 1] == letters) w[--i] = 0;
      if (i == 0) break;
    }
    if (budget == 0) break;
  }
  throw Error(ErrorKind::degree_mismatch, "no word of degree one found");
}

struct Lemma0Result {
  bool by_conditions = false;
  bool by_construction = false;
  std::optional<HomImages> psi;  // the extension, when it exists
};

/// Does ψ with ψ = φ on ker deg and ψ(f1) = φ(f1)g exist? Answered twice:
/// from the two conditions g ∈ C(φ(ker deg)), (φ(f1)g)^n = φ(f1)^n, and by
/// building the only candidate and checking it.
inline Lemma0Result lemma0_check(const FiniteGroup& g, const FinitePresentation& p, const Indexing& idx,
                                 const HomImages& phi, const Word& f1, ElementId twist) {
  if (degree_of(f1, idx) != reduce_mod(1, idx.n))
    throw Error(ErrorKind::degree_mismatch, "f1 does not have degree one");
  if (twist >= g.order()) throw Error(ErrorKind::input_error, "twist is not an element of the group");
  const long long n = idx.n;
  const ElementId v = evaluate(g, f1, phi);
  const ElementId w = g.mul(v, twist);

  Lemma0Result out;
  const auto sets = hom_image_sets(g, idx, phi);
  bool central = true;
  for (ElementId a : sets.kernel_image) central = central && g.commute(a, twist);
  out.by_conditions = central && g.pow(w, n) == g.pow(v, n);

  // g_i = f1^{d_i} (f1^{-d_i} g_i) with the second factor of degree zero
  HomImages psi(p.rank());
  std::vector<long long> d(p.rank());
  for (std::size_t i = 0; i < p.rank(); ++i) {
    d[i] = reduce_mod(idx.degrees[i], n);
    psi[i] = g.mul(g.mul(g.pow(w, d[i]), g.pow(v, -d[i])), phi[i]);
  }
  bool ok = satisfies_relators(g, p, psi) && evaluate(g, f1, psi) == w;
  // agreement on the Schreier generators f1^r g_i f1^{-((r + d_i) mod n)} of ker deg
  for (long long r = 0; ok && r < n; ++r)
    for (std::size_t i = 0; ok && i < p.rank(); ++i) {
      const long long s = (r + d[i]) % n;
      const ElementId lhs = g.mul(g.mul(g.pow(w, r), psi[i]), g.pow(w, -s));
      const ElementId rhs = g.mul(g.mul(g.pow(v, r), phi[i]), g.pow(v, -s));
      ok = lhs == rhs;
    }
  out.by_construction = ok;
  if (ok) out.psi = std::move(psi);
  return out;
}

struct ConditionsVerdict {
  std::size_t phi_size = 0;
  std::size_t h_order = 1;
  bool closed_I = true;
  bool closed_II = true;
  std::string witness;          // first closure failure, empty if closed
  bool twist_exists = true;     // every h ∈ H_φ gave a homomorphism
  bool lemma1_holds = true;     // ψ(g_i) ∈ φ(g_i) H_φ on generators
  bool lemma0_agrees = true;    // both Lemma 0 routes gave the same answer
  std::optional<bool> divides;  // set only when both conditions hold
};

inline std::string images_text(const FiniteGroup& g, const HomImages& images) {
  std::string s = "(";
  for (std::size_t i = 0; i < images.size(); ++i) s += (i ? ", " : "") + g.name(images[i]);
  return s + ")";
}

inline ConditionsVerdict conditions_check(const FiniteGroup& g, const FinitePresentation& p, const Indexing& idx,
                                          const std::vector<HomImages>& homs, const Subgroup& h) {
  validate_indexing(p, idx);
  if (idx.n % static_cast<long long>(h.order()) != 0)
    throw Error(ErrorKind::precondition_violated, "|H| must divide n");
  const std::set<HomImages> members(homs.begin(), homs.end());
  for (const auto& phi : members)
    if (phi.size() != p.rank() || !satisfies_relators(g, p, phi))
      throw Error(ErrorKind::precondition_violated, "a member of Φ is not a homomorphism");

  ConditionsVerdict v;
  v.phi_size = members.size();
  v.h_order = h.order();
  if (members.empty()) {
    v.divides = true;
    return v;
  }
  const Word f1 = canonical_degree_one_word(p, idx);
  for (const auto& phi : members) {
    for (ElementId x : h.members()) {
      HomImages conj(phi.size());
      for (std::size_t i = 0; i < phi.size(); ++i) conj[i] = g.conj(phi[i], x);
      if (v.closed_I && !members.count(conj)) {
        v.closed_I = false;
        v.witness = "I: " + images_text(g, phi) + " conjugated by " + g.name(x);
      }
    }
    const Subgroup core = phi_core(g, idx, phi, h);
    for (ElementId x : core.members()) {
      const auto r = lemma0_check(g, p, idx, phi, f1, x);
      if (r.by_conditions != r.by_construction) v.lemma0_agrees = false;
      if (!r.psi) {
        v.twist_exists = false;
        continue;
      }
      if (v.closed_II && !members.count(*r.psi)) {
        v.closed_II = false;
        v.witness = v.witness.empty() ? "II: " + images_text(g, phi) + " twisted by " + g.name(x) : v.witness;
      }
      for (std::size_t i = 0; i < phi.size(); ++i)
        if (!core.contains(g.mul(g.inv(phi[i]), (*r.psi)[i]))) v.lemma1_holds = false;
    }
  }
  if (v.closed_I && v.closed_II) v.divides = v.phi_size % v.h_order == 0;
  return v;
}

/// A system of generalized equations recast for the checker: F is free on
/// the coefficient letters (degree 0) and the unknowns, Φ is the set of its
/// solutions with coefficients fixed, and H is a largest subgroup of H̃
/// whose order divides the Theorem 2 modulus.
struct HomInstance {
  FinitePresentation presentation;
  Indexing indexing;
  std::vector<HomImages> homs;
  Subgroup h;
};

inline HomInstance hom_instance_from_system(const GeneralizedSystem& sys, const EnumerationOptions& opts = {}) {
  const FiniteGroup& g = sys.group();
  const auto coeffs = coefficient_set(sys);
  const std::size_t c = coeffs.size(), m = sys.arity();

  FinitePresentation pres;
  for (std::size_t i = 0; i < c; ++i) pres.generators.push_back("c" + std::to_string(i + 1));
  for (const auto& u : sys.unknowns()) pres.generators.push_back(u);

  const IntMatrix a = system_matrix(sys, sys.subsystem());
  const BigInt nbig = invariant_factor(a, m);
  const Subgroup ht = h_tilde(sys);
  Subgroup best = Subgroup::trivial(g);
  for (const auto& s : all_subgroups(g)) {
    bool inside = true;
    for (ElementId x : s.members()) inside = inside && ht.contains(x);
    if (inside && divides(BigInt(s.order()), nbig) && s.order() > best.order()) best = s;
  }
  const long long n = nbig == 0 ? static_cast<long long>(best.order()) : static_cast<long long>(nbig);
  HomInstance out{std::move(pres), Indexing{{}, n}, {}, best};

  // unknown degrees d with A d ≡ 0 (mod n), generating Z/n
  std::vector<ElementId> d(m, 0);
  bool found = false;
  const std::uint64_t total = search_space(static_cast<std::size_t>(n), m, 10'000'000);
  for (std::uint64_t i = 0; i < total && !found; ++i) {
    detail::decode_tuple(i, static_cast<std::size_t>(n), d);
    long long gen = n;
    for (auto x : d) gen = std::gcd(gen, static_cast<long long>(x));
    if (gen != 1) continue;
    bool zero = true;
    for (std::size_t r = 0; r < a.rows() && zero; ++r) {
      BigInt s = 0;
      for (std::size_t j = 0; j < m; ++j) s += a(r, j) * d[j];
      zero = s % n == 0;
    }
    found = zero;
  }
  if (!found) throw std::logic_error("no indexing exists for the system modulus");
  out.indexing.degrees.assign(c, 0);
  for (auto x : d) out.indexing.degrees.push_back(x);

  for (const auto& sol : list_solutions(sys, opts)) {
    HomImages img(coeffs.begin(), coeffs.end());
    img.insert(img.end(), sol.begin(), sol.end());
    out.homs.push_back(std::move(img));
  }
  return out;
}

}  // namespace divlab
