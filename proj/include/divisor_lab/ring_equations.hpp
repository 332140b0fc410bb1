#pragma once

// Equations  sum_i prod_j c_ij x_ij^k_ij = 0  over a finite ring R, with
// solutions restricted to a unit subgroup G of R*:
//
//   homogeneity matrix:  one row per monomial, exponent sums in the first m
//                        columns, a 1 in column m+p for equation p
//   homogeneity modulus: Δ_{m+s}/Δ_{m+s-1} of that matrix
//   theorem 3:           #solutions in G^m ≡ 0 mod GCD(G ∩ C(coefficients), modulus)

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "divisor_lab/bigint.hpp"
#include "divisor_lab/enumerate.hpp"
#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"
#include "divisor_lab/int_matrix.hpp"
#include "divisor_lab/ring.hpp"
#include "divisor_lab/solver.hpp"
#include "divisor_lab/system.hpp"
#include "divisor_lab/word.hpp"

namespace divlab {

struct ScalarFactor {
  RingElement value;
};

struct VariablePower {
  std::size_t variable;  // 0-based
  long long exponent;
};

using RingFactor = std::variant<ScalarFactor, VariablePower>;

/// One monomial: the ordered product of its factors. No factors means 1.
struct RingTerm {
  std::vector<RingFactor> factors;
};

/// sum of terms = 0
struct RingEquation {
  std::vector<RingTerm> terms;
};

class RingEquationSystem {
 public:
  RingEquationSystem(FiniteRing ring, std::vector<std::string> unknowns, std::vector<RingEquation> equations,
                     UnitEmbedding units)
      : ring_(std::move(ring)),
        unknowns_(std::move(unknowns)),
        equations_(std::move(equations)),
        units_(std::move(units)) {
    if (unknowns_.empty()) throw Error(ErrorKind::precondition_violated, "a system needs at least one unknown");
    for (const auto& eq : equations_)
      for (const auto& t : eq.terms)
        for (const auto& f : t.factors) {
          if (auto v = std::get_if<VariablePower>(&f); v && v->variable >= unknowns_.size())
            throw Error(ErrorKind::arity_exceeded, "variable index beyond the unknowns");
          if (auto c = std::get_if<ScalarFactor>(&f); c && c->value.coords.size() != ring_.width())
            throw Error(ErrorKind::input_error, "coefficient has the wrong width for " + ring_.describe());
        }
    validate_embedding(ring_, units_, true);
  }

  const FiniteRing& ring() const noexcept { return ring_; }
  std::size_t arity() const noexcept { return unknowns_.size(); }
  const std::vector<std::string>& unknowns() const noexcept { return unknowns_; }
  const std::vector<RingEquation>& equations() const noexcept { return equations_; }
  const UnitEmbedding& units() const noexcept { return units_; }

 private:
  FiniteRing ring_;
  std::vector<std::string> unknowns_;
  std::vector<RingEquation> equations_;
  UnitEmbedding units_;
};

inline IntMatrix homogeneity_matrix(const RingEquationSystem& sys) {
  const std::size_t m = sys.arity(), s = sys.equations().size();
  std::size_t rows = 0;
  for (const auto& eq : sys.equations()) rows += eq.terms.size();
  IntMatrix a(rows, m + s);
  std::size_t r = 0;
  for (std::size_t p = 0; p < s; ++p) {
    for (const auto& t : sys.equations()[p].terms) {
      for (const auto& f : t.factors)
        if (auto v = std::get_if<VariablePower>(&f)) a(r, v->variable) += v->exponent;
      a(r, m + p) = 1;
      ++r;
    }
  }
  return a;
}

inline BigInt homogeneity_modulus(const RingEquationSystem& sys) {
  return invariant_factor(homogeneity_matrix(sys), sys.arity() + sys.equations().size());
}

namespace detail {

/// Evaluates every equation at a tuple of unit-group element ids.
class RingEvaluator {
 public:
  explicit RingEvaluator(const RingEquationSystem& sys) : sys_(&sys) {}

  bool operator()(std::span<const ElementId> t) const {
    const FiniteRing& r = sys_->ring();
    const FiniteGroup& g = sys_->units().group;
    for (const auto& eq : sys_->equations()) {
      RingElement sum = r.zero();
      for (const auto& term : eq.terms) {
        RingElement prod = r.one();
        for (const auto& f : term.factors) {
          if (auto c = std::get_if<ScalarFactor>(&f))
            prod = r.mul(prod, c->value);
          else {
            const auto& v = std::get<VariablePower>(f);
            prod = r.mul(prod, sys_->units().images[g.pow(t[v.variable], v.exponent)]);
          }
        }
        sum = r.add(sum, prod);
      }
      if (!r.is_zero(sum)) return false;
    }
    return true;
  }

 private:
  const RingEquationSystem* sys_;
};

}  // namespace detail

/// Exact number of tuples in G^m satisfying every equation.
inline std::uint64_t count_ring_solutions(const RingEquationSystem& sys, const EnumerationOptions& opts = {}) {
  return count_assignments(sys.units().group.order(), sys.arity(), opts, detail::RingEvaluator(sys));
}

/// Distinct scalar coefficients appearing anywhere in the system.
inline std::vector<RingElement> ring_coefficients(const RingEquationSystem& sys) {
  std::vector<RingElement> out;
  for (const auto& eq : sys.equations())
    for (const auto& t : eq.terms)
      for (const auto& f : t.factors)
        if (auto c = std::get_if<ScalarFactor>(&f)) out.push_back(c->value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// G ∩ C_R(coefficients): commuting is tested in R, then restricted to G.
inline Subgroup unit_centralizer(const RingEquationSystem& sys) {
  const FiniteRing& r = sys.ring();
  const auto coeffs = ring_coefficients(sys);
  const FiniteGroup& g = sys.units().group;
  std::vector<char> mask(g.order(), 1);
  for (ElementId x = 0; x < g.order(); ++x) {
    const RingElement& gx = sys.units().images[x];
    for (const auto& c : coeffs)
      if (!(r.mul(gx, c) == r.mul(c, gx))) {
        mask[x] = 0;
        break;
      }
  }
  return subgroup_from_mask(g, mask);
}

inline DivisibilityReport theorem3_verdict(const RingEquationSystem& sys, const SolveOptions& opts = {}) {
  DivisibilityBreakdown b;
  const IntMatrix a = homogeneity_matrix(sys);
  const std::size_t top = sys.arity() + sys.equations().size();
  b.matrix = a;
  b.delta_m = minors_gcd(a, top);
  b.delta_m_minus_1 = minors_gcd(a, top - 1);
  b.invariant_factor = invariant_factor(a, top);
  const Subgroup g0 = unit_centralizer(sys);
  b.centralizer_order = g0.order();
  b.notes.emplace_back("centralizer", "computed in the ring, then intersected with G");
  const std::uint64_t bound = group_gcd(g0, *b.invariant_factor, opts.gcd_mode);
  return make_report("theorem3", count_ring_solutions(sys, opts), bound, std::move(b));
}

/// A word as a ring monomial: one factor per letter, coefficients mapped
/// through `coefficient_image`.
template <class CoefficientImage>
RingTerm word_term(const Word& w, CoefficientImage coefficient_image) {
  RingTerm t;
  for (const auto& l : w.letters()) {
    if (auto v = std::get_if<VariableLetter>(&l))
      t.factors.push_back(VariablePower{v->index, v->sign});
    else
      t.factors.push_back(ScalarFactor{coefficient_image(std::get<CoefficientLetter>(l))});
  }
  return t;
}

/// The plain group system {w_i = 1} rewritten as {w_i - 1 = 0} over (Z/k)[G].
inline RingEquationSystem ring_form(const GeneralizedSystem& sys, std::int64_t k) {
  if (!sys.all_plain()) throw Error(ErrorKind::precondition_violated, "ring form needs plain equations");
  const FiniteRing r = FiniteRing::group_ring(k, sys.group());
  const FiniteGroup& g = sys.group();
  std::vector<RingEquation> eqs;
  for (const auto& e : sys.equations()) {
    RingEquation eq;
    eq.terms.push_back(word_term(e.word, [&](const CoefficientLetter& c) {
      return r.basis(c.inverted ? g.inv(c.element) : c.element);
    }));
    eq.terms.push_back(RingTerm{{ScalarFactor{r.scalar(-1)}}});
    eqs.push_back(std::move(eq));
  }
  return RingEquationSystem(r, sys.unknowns(), std::move(eqs), group_ring_embedding(r));
}

/// Solutions in G^m of  sum_i rho(u_i(x))^{l_i} = 1  for a homomorphism
/// rho: G -> R* (not necessarily injective), with the three case bounds.
struct RepresentationVerdict {
  std::uint64_t solution_count = 0;
  std::uint64_t gcd_bound = 1;                // GCD(G, GCD(l_i)), always
  std::optional<std::uint64_t> lcm_bound;     // GCD(G, LCM(l_i)), k <= m
  std::optional<std::uint64_t> order_bound;   // |G|, k < m
  std::uint64_t bound = 1;                    // lcm of the applicable bounds
  bool divides = true;
  std::vector<std::pair<std::string, bool>> cases;
};

inline RepresentationVerdict representation_example_verdict(const FiniteRing& r, const UnitEmbedding& rho,
                                                            std::size_t m, const std::vector<Word>& words,
                                                            const std::vector<long long>& exponents,
                                                            const SolveOptions& opts = {}) {
  if (words.size() != exponents.size()) throw Error(ErrorKind::input_error, "need one exponent per word");
  if (words.empty()) throw Error(ErrorKind::precondition_violated, "need at least one summand");
  validate_embedding(r, rho, false);
  const FiniteGroup& g = rho.group;
  for (const auto& w : words) {
    if (w.arity() > m) throw Error(ErrorKind::arity_exceeded, "word uses more unknowns than m");
    for (const auto& l : w.letters())
      if (std::holds_alternative<CoefficientLetter>(l))
        throw Error(ErrorKind::precondition_violated, "representation words are coefficient-free");
  }

  std::vector<CompiledWord> compiled;
  for (const auto& w : words) compiled.emplace_back(g, w);
  struct Check {
    const FiniteRing* r;
    const UnitEmbedding* rho;
    const std::vector<CompiledWord>* words;
    const std::vector<long long>* exponents;
    std::vector<ElementId> inverses;
    bool operator()(std::span<const ElementId> t) {
      const FiniteGroup& g = rho->group;
      inverses.resize(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) inverses[j] = g.inv(t[j]);
      RingElement sum = r->zero();
      for (std::size_t i = 0; i < words->size(); ++i) {
        const ElementId u = (*words)[i](g, t, inverses);
        sum = r->add(sum, rho->images[g.pow(u, (*exponents)[i])]);
      }
      return sum == r->one();
    }
  };

  RepresentationVerdict v;
  v.solution_count = count_assignments(g.order(), m, opts, Check{&r, &rho, &compiled, &exponents, {}});

  const std::size_t k = words.size();
  BigInt gcd_l = 0, lcm_l = 1;
  for (long long l : exponents) {
    gcd_l = big_gcd(gcd_l, BigInt(l));
    lcm_l = big_lcm(lcm_l, BigInt(l));
  }
  v.gcd_bound = group_gcd(g, gcd_l, opts.gcd_mode);
  v.bound = v.gcd_bound;
  v.cases.emplace_back("gcd", v.solution_count % v.gcd_bound == 0);
  if (k <= m) {
    v.lcm_bound = group_gcd(g, lcm_l, opts.gcd_mode);
    v.bound = std::lcm(v.bound, *v.lcm_bound);
    v.cases.emplace_back("lcm", v.solution_count % *v.lcm_bound == 0);
  }
  if (k < m) {
    v.order_bound = g.order();
    v.bound = std::lcm(v.bound, *v.order_bound);
    v.cases.emplace_back("order", v.solution_count % *v.order_bound == 0);
  }
  v.divides = std::all_of(v.cases.begin(), v.cases.end(), [](const auto& c) { return c.second; });
  return v;
}

/// Monoid adapters for `km17_fact_check`.
struct GroupMonoid {
  using Element = ElementId;
  FiniteGroup g;
  Element one() const { return identity_id; }
  Element mul(Element a, Element b) const { return g.mul(a, b); }
  Element inv(Element a) const { return g.inv(a); }
  bool equal(Element a, Element b) const { return a == b; }
};

struct RingMonoid {
  using Element = RingElement;
  FiniteRing r;
  Element one() const { return r.one(); }
  Element mul(const Element& a, const Element& b) const { return r.mul(a, b); }
  Element inv(const Element& a) const {
    auto x = r.inverse(a);
    if (!x) throw Error(ErrorKind::precondition_violated, r.format(a) + " is not invertible");
    return *x;
  }
  bool equal(const Element& a, const Element& b) const { return a == b; }
};

struct FactVerdict {
  bool holds = true;
  long long exponent_sum = 0;
};

namespace detail {

template <class M>
typename M::Element monoid_power(const M& mon, const typename M::Element& a, long long e) {
  typename M::Element base = e < 0 ? mon.inv(a) : a;
  typename M::Element acc = mon.one();
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) acc = mon.mul(acc, base);
  return acc;
}

/// u(t) = b_0 t^{m_1} b_1 ... t^{m_l} b_l
template <class M>
typename M::Element expression_value(const M& mon, std::span<const typename M::Element> b,
                                     std::span<const long long> m, const typename M::Element& t) {
  typename M::Element acc = b[0];
  for (std::size_t i = 0; i < m.size(); ++i) acc = mon.mul(mon.mul(acc, monoid_power(mon, t, m[i])), b[i + 1]);
  return acc;
}

}  // namespace detail

/// Checks u(ah) against the prefix-of-conjugates formula applied to u(a):
///   k > 0:  h^{a^-1} h^{a^-2} ... h^{a^-k} u(a)
///   k < 0:  h^-1 h^{-a} ... h^{-a^{-1-k}} u(a)
///   k = 0:  u(a)
/// where k = sum m_i and x^y = y^-1 x y.
template <class M>
FactVerdict km17_fact_check(const M& mon, std::span<const typename M::Element> b, std::span<const long long> m,
                            const typename M::Element& a, const typename M::Element& h) {
  using E = typename M::Element;
  if (b.size() != m.size() + 1) throw Error(ErrorKind::input_error, "need l+1 elements b_0..b_l for l exponents");
  const E a_inv = mon.inv(a);
  const E h_inv = mon.inv(h);

  // the conjugates a^-s h a^s form a cycle as s runs over Z
  std::vector<E> conjugates;
  E power = mon.one(), power_inv = mon.one();
  for (;;) {
    conjugates.push_back(mon.mul(mon.mul(power_inv, h), power));
    power = mon.mul(power, a);
    power_inv = mon.mul(power_inv, a_inv);
    if (mon.equal(power, mon.one())) break;
    if (conjugates.size() > (std::size_t{1} << 20))
      throw Error(ErrorKind::size_cap_exceeded, "element a has too large an order");
  }
  for (const auto& c : conjugates)
    for (const auto& bi : b)
      if (!mon.equal(mon.mul(c, bi), mon.mul(bi, c)))
        throw Error(ErrorKind::precondition_violated, "a conjugate of h fails to commute with some b_i");

  FactVerdict v;
  for (long long x : m) v.exponent_sum += x;
  const long long k = v.exponent_sum;

  E prefix = mon.one();
  if (k > 0) {
    E ap = mon.one(), ap_inv = mon.one();  // a^j and a^-j
    for (long long j = 1; j <= k; ++j) {
      ap = mon.mul(ap, a);
      ap_inv = mon.mul(ap_inv, a_inv);
      prefix = mon.mul(prefix, mon.mul(mon.mul(ap, h), ap_inv));  // h^{a^-j} = a^j h a^-j
    }
  } else if (k < 0) {
    E ap = mon.one(), ap_inv = mon.one();
    for (long long j = 0; j <= -1 - k; ++j) {
      prefix = mon.mul(prefix, mon.mul(mon.mul(ap_inv, h_inv), ap));  // h^{-a^j} = a^-j h^-1 a^j
      ap = mon.mul(ap, a);
      ap_inv = mon.mul(ap_inv, a_inv);
    }
  }
  const E lhs = detail::expression_value(mon, b, m, mon.mul(a, h));
  const E rhs = mon.mul(prefix, detail::expression_value(mon, b, m, a));
  v.holds = mon.equal(lhs, rhs);
  return v;
}

}  // namespace divlab
