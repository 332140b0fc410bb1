#pragma once

// Brute-force solution counting for systems of generalized equations and the
// divisibility verdicts built on it:
//
//   theorem 1:  #solutions ≡ 0 mod GCD(C(coefficients), Δ_m/Δ_{m-1})
//   theorem 2:  #solutions ≡ 0 mod GCD(H̃, Δ_m/Δ_{m-1} of the subsystem P)
//
// together with the classical special cases (Frobenius 1895/1903, P. Hall).

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divisor_lab/bigint.hpp"
#include "divisor_lab/enumerate.hpp"
#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"
#include "divisor_lab/int_matrix.hpp"
#include "divisor_lab/system.hpp"
#include "divisor_lab/word.hpp"

namespace divlab {

struct SolveOptions : EnumerationOptions {
  GcdMode gcd_mode = GcdMode::fast;
};

/// Intermediate values behind a bound; fields a verdict does not use stay empty.
struct DivisibilityBreakdown {
  std::optional<IntMatrix> matrix;
  std::optional<BigInt> delta_m;
  std::optional<BigInt> delta_m_minus_1;
  std::optional<BigInt> invariant_factor;
  std::optional<std::uint64_t> centralizer_order;
  std::optional<std::uint64_t> h_tilde_order;
  std::vector<std::pair<std::string, std::string>> notes;
};

struct DivisibilityReport {
  std::string theorem;
  std::uint64_t solution_count = 0;
  std::uint64_t bound = 1;  // never 0
  bool divides = true;
  DivisibilityBreakdown breakdown;
};

inline DivisibilityReport make_report(std::string theorem, std::uint64_t count, std::uint64_t bound,
                                      DivisibilityBreakdown breakdown = {}) {
  if (bound == 0) throw std::logic_error("divisibility bound must be positive");
  return DivisibilityReport{std::move(theorem), count, bound, count % bound == 0, std::move(breakdown)};
}

namespace detail {

/// Membership test for one tuple: every word lands in its double coset.
class SystemCheck {
 public:
  explicit SystemCheck(const GeneralizedSystem& sys) : g_(&sys.group()) {
    for (const auto& e : sys.equations()) {
      words_.emplace_back(*g_, e.word);
      const auto dc = double_coset(e.constraint, e.representative);
      std::vector<char> mask(g_->order(), 0);
      for (ElementId a : dc.members) mask[a] = 1;
      allowed_.push_back(std::move(mask));
    }
  }

  bool operator()(std::span<const ElementId> t) {
    inverses_.resize(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) inverses_[j] = g_->inv(t[j]);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (!allowed_[i][words_[i](*g_, t, inverses_)]) return false;
    return true;
  }

 private:
  const FiniteGroup* g_;
  std::vector<CompiledWord> words_;
  std::vector<std::vector<char>> allowed_;
  std::vector<ElementId> inverses_;
};

}  // namespace detail

/// Exact number of m-tuples t with u_i(t) ∈ H_i g_i H_i for every equation.
inline std::uint64_t count_solutions(const GeneralizedSystem& sys, const EnumerationOptions& opts = {}) {
  return count_assignments(sys.group().order(), sys.arity(), opts, detail::SystemCheck(sys));
}

/// The solutions themselves, in row-major order.
inline std::vector<std::vector<ElementId>> list_solutions(const GeneralizedSystem& sys,
                                                          const EnumerationOptions& opts = {}) {
  std::vector<std::vector<ElementId>> out;
  detail::SystemCheck check(sys);
  for_each_assignment(sys.group().order(), sys.arity(), opts.cap, [&](std::span<const ElementId> t) {
    if (check(t)) out.emplace_back(t.begin(), t.end());
  });
  return out;
}

namespace detail {

inline void fill_matrix_breakdown(DivisibilityBreakdown& b, const IntMatrix& a, std::size_t m) {
  b.matrix = a;
  b.delta_m = minors_gcd(a, m);
  b.delta_m_minus_1 = minors_gcd(a, m - 1);
  b.invariant_factor = invariant_factor(a, m);
}

}  // namespace detail

/// Theorem 1 for a system of plain equations w_i = 1.
inline DivisibilityReport theorem1_verdict(const GeneralizedSystem& sys, const SolveOptions& opts = {}) {
  if (!sys.all_plain())
    throw Error(ErrorKind::precondition_violated, "theorem 1 needs plain equations (H trivial, g = 1)");
  const std::size_t m = sys.arity();
  DivisibilityBreakdown b;
  detail::fill_matrix_breakdown(b, system_matrix(sys), m);
  const auto coeffs = coefficient_set(sys);
  const Subgroup c = centralizer(sys.group(), coeffs);
  b.centralizer_order = c.order();
  const std::uint64_t bound = group_gcd(c, *b.invariant_factor, opts.gcd_mode);
  return make_report("theorem1", count_solutions(sys, opts), bound, std::move(b));
}

/// H̃ = ∩_{j∈J} N(H_j g_j H_j) ∩ ∩_{i∉J} H_i ∩ C(coefficients).
inline Subgroup h_tilde(const GeneralizedSystem& sys) {
  const FiniteGroup& g = sys.group();
  std::vector<char> mask(g.order(), 1);
  auto meet = [&](const Subgroup& s) {
    for (ElementId a = 0; a < g.order(); ++a) mask[a] = static_cast<char>(mask[a] && s.contains(a));
  };
  std::vector<char> in_j(sys.equations().size(), 0);
  for (std::size_t j : sys.subsystem()) in_j[j] = 1;
  for (std::size_t i = 0; i < sys.equations().size(); ++i) {
    const auto& e = sys.equations()[i];
    if (in_j[i])
      meet(normalizer_of_subset(g, double_coset(e.constraint, e.representative).members));
    else
      meet(e.constraint);
  }
  meet(centralizer(g, coefficient_set(sys)));
  return subgroup_from_mask(g, mask);
}

/// Theorem 2: bound GCD(H̃, Δ_m/Δ_{m-1}) with Δ taken over the subsystem P.
inline DivisibilityReport theorem2_verdict(const GeneralizedSystem& sys, const SolveOptions& opts = {}) {
  const std::size_t m = sys.arity();
  DivisibilityBreakdown b;
  detail::fill_matrix_breakdown(b, system_matrix(sys, sys.subsystem()), m);
  const Subgroup ht = h_tilde(sys);
  b.h_tilde_order = ht.order();
  b.centralizer_order = centralizer(sys.group(), coefficient_set(sys)).order();
  const std::uint64_t bound = group_gcd(ht, *b.invariant_factor, opts.gcd_mode);
  return make_report("theorem2", count_solutions(sys, opts), bound, std::move(b));
}

/// The single-equation system x^n ∈ H g H in one unknown.
inline GeneralizedSystem power_system(const Subgroup& h, long long n, ElementId g) {
  Word x(1, {VariableLetter{0, +1}});
  GeneralizedEquation eq{x.power(n), h, g, "x^" + std::to_string(n)};
  return GeneralizedSystem(h.group(), {"x"}, {std::move(eq)}, {});
}

/// x^n = g: bound gcd(n, |C(g)|). With g = 1 this is Frobenius' 1895 theorem.
inline DivisibilityReport frobenius1903_verdict(const FiniteGroup& g, long long n, ElementId target,
                                                const SolveOptions& opts = {}) {
  const auto sys = power_system(Subgroup::trivial(g), n, target);
  const ElementId t[] = {target};
  const Subgroup c = centralizer(g, t);
  DivisibilityBreakdown b;
  b.centralizer_order = c.order();
  b.invariant_factor = BigInt(n < 0 ? -n : n);
  const std::uint64_t bound = group_gcd(c, *b.invariant_factor, opts.gcd_mode);
  return make_report("frobenius1903", count_solutions(sys, opts), bound, std::move(b));
}

/// P. Hall: one unknown, bound gcd(|C|, n_1, n_2, ...) over the exponent sums.
/// Cross-checked against the theorem 1 bound, which must coincide for m = 1.
inline DivisibilityReport hall_verdict(const GeneralizedSystem& sys, const SolveOptions& opts = {}) {
  if (sys.arity() != 1) throw Error(ErrorKind::precondition_violated, "Hall's theorem needs one unknown");
  if (!sys.all_plain()) throw Error(ErrorKind::precondition_violated, "Hall's theorem needs plain equations");
  const Subgroup c = centralizer(sys.group(), coefficient_set(sys));
  std::uint64_t bound = c.order();
  std::string sums;
  for (const auto& e : sys.equations()) {
    const long long s = exponent_sum(e.word, 0);
    bound = std::gcd(bound, static_cast<std::uint64_t>(s < 0 ? -s : s));
    sums += (sums.empty() ? "" : ",") + std::to_string(s);
  }
  DivisibilityBreakdown b;
  b.centralizer_order = c.order();
  b.notes.emplace_back("exponent_sums", sums);

  const IntMatrix a = system_matrix(sys);
  const std::uint64_t via_theorem1 = group_gcd(c, invariant_factor(a, 1), opts.gcd_mode);
  if (via_theorem1 != bound) throw std::logic_error("Hall bound disagrees with theorem 1 bound");
  return make_report("hall", count_solutions(sys, opts), bound, std::move(b));
}

}  // namespace divlab
