#pragma once

// Systems of generalized equations  u_i(x_1..x_m) ∈ H_i g_i H_i  with a marked
// subsystem J. A plain equation w = 1 has H trivial and g the identity.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"
#include "divisor_lab/int_matrix.hpp"
#include "divisor_lab/word.hpp"

namespace divlab {

struct GeneralizedEquation {
  Word word;
  Subgroup constraint;       // H
  ElementId representative;  // g
  std::string text;          // source text, for reports

  bool is_plain() const noexcept { return constraint.is_trivial() && representative == identity_id; }
};

class GeneralizedSystem {
 public:
  /// `subsystem` lists the indices of J; it is sorted and deduplicated.
  GeneralizedSystem(FiniteGroup group, std::vector<std::string> unknowns,
                    std::vector<GeneralizedEquation> equations, std::vector<std::size_t> subsystem,
                    std::map<std::string, ElementId> coefficients = {})
      : group_(std::move(group)),
        unknowns_(std::move(unknowns)),
        equations_(std::move(equations)),
        subsystem_(std::move(subsystem)),
        coefficients_(std::move(coefficients)) {
    if (unknowns_.empty()) throw Error(ErrorKind::precondition_violated, "a system needs at least one unknown");
    for (const auto& e : equations_) {
      if (e.word.arity() > arity())
        throw Error(ErrorKind::arity_exceeded, "equation word uses more unknowns than the system");
      if (!(e.constraint.group() == group_))
        throw Error(ErrorKind::precondition_violated, "constraint subgroup from another group");
      if (e.representative >= group_.order())
        throw Error(ErrorKind::precondition_violated, "representative out of range");
    }
    std::sort(subsystem_.begin(), subsystem_.end());
    subsystem_.erase(std::unique(subsystem_.begin(), subsystem_.end()), subsystem_.end());
    if (!subsystem_.empty() && subsystem_.back() >= equations_.size())
      throw Error(ErrorKind::precondition_violated, "subsystem index out of range");
  }

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t arity() const noexcept { return unknowns_.size(); }
  const std::vector<std::string>& unknowns() const noexcept { return unknowns_; }
  const std::vector<GeneralizedEquation>& equations() const noexcept { return equations_; }
  std::span<const std::size_t> subsystem() const noexcept { return subsystem_; }
  const std::map<std::string, ElementId>& coefficient_bindings() const noexcept { return coefficients_; }

  bool all_plain() const {
    return std::all_of(equations_.begin(), equations_.end(), [](const auto& e) { return e.is_plain(); });
  }

  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> idx(equations_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
  }

 private:
  FiniteGroup group_;
  std::vector<std::string> unknowns_;
  std::vector<GeneralizedEquation> equations_;
  std::vector<std::size_t> subsystem_;
  std::map<std::string, ElementId> coefficients_;
};

/// Source form of one equation for `make_system`.
struct EquationSpec {
  std::string word;
  std::vector<ElementId> subgroup_generators;  // generators of H; empty = trivial
  ElementId representative = identity_id;
};

/// Parses every equation against the given unknowns and coefficient bindings.
/// With no explicit subsystem, J is the whole index set.
inline GeneralizedSystem make_system(const FiniteGroup& g, std::vector<std::string> unknowns,
                                     const std::map<std::string, ElementId>& coefficients,
                                     const std::vector<EquationSpec>& specs,
                                     std::optional<std::vector<std::size_t>> subsystem = std::nullopt) {
  for (const auto& [name, id] : coefficients) {
    if (std::find(unknowns.begin(), unknowns.end(), name) != unknowns.end())
      throw Error(ErrorKind::bad_names, "'" + name + "' is both an unknown and a coefficient");
    if (id >= g.order()) throw Error(ErrorKind::precondition_violated, "coefficient out of range");
  }
  const WordContext ctx{unknowns.size(), unknowns, coefficients};
  std::vector<GeneralizedEquation> eqs;
  for (const auto& s : specs) {
    eqs.push_back({parse_word(s.word, ctx), subgroup_generated(g, s.subgroup_generators), s.representative, s.word});
  }
  std::vector<std::size_t> j;
  if (subsystem) {
    j = *subsystem;
  } else {
    j.resize(eqs.size());
    std::iota(j.begin(), j.end(), std::size_t{0});
  }
  return GeneralizedSystem(g, std::move(unknowns), std::move(eqs), std::move(j), coefficients);
}

/// |rows| x m matrix of exponent sums, rows in the given order.
inline IntMatrix system_matrix(const GeneralizedSystem& sys, std::span<const std::size_t> rows) {
  IntMatrix a(rows.size(), sys.arity());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& w = sys.equations().at(rows[r]).word;
    for (std::size_t j = 0; j < sys.arity(); ++j) a(r, j) = exponent_sum(w, j);
  }
  return a;
}

inline IntMatrix system_matrix(const GeneralizedSystem& sys) {
  const auto all = sys.all_indices();
  return system_matrix(sys, all);
}

/// All coefficient letters across the equation words (not H_i or g_i), sorted.
inline std::vector<ElementId> coefficient_set(const GeneralizedSystem& sys) {
  std::vector<ElementId> out;
  for (const auto& e : sys.equations())
    for (const auto& l : e.word.letters())
      if (auto c = std::get_if<CoefficientLetter>(&l)) out.push_back(c->element);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace divlab
