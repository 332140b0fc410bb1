#pragma once

// Words in the free product G * F(x_1, ..., x_m) and the equation DSL.
//
// Grammar:
//   word   := factor+
//   factor := atom ["^" int]
//   atom   := ident | "(" word ")" | "[" word "," word "]"
//   ident  := letter (letter | digit | "_")*
//   int    := ["+" | "-"] digit+
//
// Multiplication is juxtaposition. [u,v] expands to u^-1 v^-1 u v. Words are
// kept unreduced. Variable indices are 0-based in the API.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"

namespace divlab {

struct VariableLetter {
  std::size_t index;  // 0-based unknown
  int sign;           // +1 or -1
  friend bool operator==(const VariableLetter&, const VariableLetter&) = default;
};

struct CoefficientLetter {
  ElementId element;  // the bound element; `inverted` selects its inverse
  bool inverted;
  friend bool operator==(const CoefficientLetter&, const CoefficientLetter&) = default;
};

using Letter = std::variant<VariableLetter, CoefficientLetter>;

/// Upper bound on unrolled word length.
inline constexpr std::size_t max_word_letters = 10'000'000;

class Word {
 public:
  Word() = default;
  Word(std::size_t arity, std::vector<Letter> letters) : arity_(arity), letters_(std::move(letters)) {
    for (const auto& l : letters_)
      if (auto v = std::get_if<VariableLetter>(&l); v && v->index >= arity_)
        throw Error(ErrorKind::arity_exceeded, "variable index " + std::to_string(v->index + 1) +
                                                   " exceeds arity " + std::to_string(arity_));
  }

  std::size_t arity() const noexcept { return arity_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Word inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      if (auto v = std::get_if<VariableLetter>(&*it))
        out.emplace_back(VariableLetter{v->index, -v->sign});
      else {
        auto c = std::get<CoefficientLetter>(*it);
        out.emplace_back(CoefficientLetter{c.element, !c.inverted});
      }
    }
    return Word(arity_, std::move(out));
  }

  Word power(long long k) const {
    const Word base = k < 0 ? inverse() : *this;
    const auto reps = static_cast<unsigned long long>(k < 0 ? -k : k);
    if (reps * letters_.size() > max_word_letters)
      throw Error(ErrorKind::input_error, "word too long after unrolling");
    std::vector<Letter> out;
    out.reserve(reps * letters_.size());
    for (unsigned long long r = 0; r < reps; ++r)
      out.insert(out.end(), base.letters_.begin(), base.letters_.end());
    return Word(arity_, std::move(out));
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> out(a.letters_.begin(), a.letters_.end());
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::max(a.arity_, b.arity_), std::move(out));
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::size_t arity_ = 0;
  std::vector<Letter> letters_;
};

/// Name bindings for the parser.
struct WordContext {
  std::size_t arity = 0;
  std::vector<std::string> variables;              // names of x_1..x_k, k <= arity
  std::map<std::string, ElementId> coefficients;   // bound coefficient names
};

namespace detail {

class WordParser {
 public:
  WordParser(std::string_view text, const WordContext& ctx) : text_(text), ctx_(ctx) {}

  Word parse() {
    Word w = word();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_factor_start() {
    skip();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == '[' || std::isalpha(static_cast<unsigned char>(c));
  }

  Word word() {
    if (!at_factor_start())
      throw SyntaxError(pos_, pos_ < text_.size() ? "expected a factor" : "unexpected end of input");
    Word w(ctx_.arity, {});
    while (at_factor_start()) w = w * factor();
    return w;
  }

  Word factor() {
    Word a = atom();
    skip();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip();
      a = a.power(integer());
    }
    return a;
  }

  long long integer() {
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) negative = text_[pos_++] == '-';
    std::size_t digits = 0;
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (++digits > 9) throw SyntaxError(start, "exponent too large");
      value = value * 10 + (text_[pos_++] - '0');
    }
    if (digits == 0) throw SyntaxError(start, "expected an integer exponent");
    return negative ? -value : value;
  }

  Word atom() {
    skip();
    const std::size_t start = pos_;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word inner = word();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return u.inverse() * v.inverse() * u * v;
    }
    std::string ident;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ident += text_[pos_++];
    return resolve(ident, start);
  }

  Word resolve(const std::string& ident, std::size_t at) {
    for (std::size_t j = 0; j < ctx_.variables.size(); ++j)
      if (ctx_.variables[j] == ident) return Word(ctx_.arity, {VariableLetter{j, +1}});
    if (auto it = ctx_.coefficients.find(ident); it != ctx_.coefficients.end())
      return Word(ctx_.arity, {CoefficientLetter{it->second, false}});
    // positional unknowns x1, x2, ...
    if (ident.size() > 1 && ident[0] == 'x' &&
        ident.find_first_not_of("0123456789", 1) == std::string::npos && ident.size() < 8) {
      const std::size_t k = std::stoul(ident.substr(1));
      if (k >= 1 && k > ctx_.arity)
        throw Error(ErrorKind::arity_exceeded,
                    ident + " exceeds arity " + std::to_string(ctx_.arity) + " at offset " + std::to_string(at));
      if (k >= 1) return Word(ctx_.arity, {VariableLetter{k - 1, +1}});
    }
    throw Error(ErrorKind::unbound_name, "'" + ident + "' at offset " + std::to_string(at));
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw SyntaxError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view text_;
  const WordContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Word parse_word(std::string_view text, const WordContext& ctx) {
  if (ctx.variables.size() > ctx.arity)
    throw Error(ErrorKind::arity_exceeded, std::to_string(ctx.variables.size()) +
                                               " variable names for arity " + std::to_string(ctx.arity));
  return detail::WordParser(text, ctx).parse();
}

/// Convenience overload: named unknowns, named coefficients.
inline Word parse_word(std::string_view text, const std::vector<std::string>& variables,
                       const std::map<std::string, ElementId>& coefficients = {}) {
  return parse_word(text, WordContext{variables.size(), variables, coefficients});
}

/// Net signed count of unknown j (0-based).
inline long long exponent_sum(const Word& w, std::size_t j) {
  long long s = 0;
  for (const auto& l : w.letters())
    if (auto v = std::get_if<VariableLetter>(&l); v && v->index == j) s += v->sign;
  return s;
}

inline ElementId letter_value(const FiniteGroup& g, const Letter& l, std::span<const ElementId> assignment) {
  if (auto v = std::get_if<VariableLetter>(&l)) {
    ElementId x = assignment[v->index];
    return v->sign > 0 ? x : g.inv(x);
  }
  const auto& c = std::get<CoefficientLetter>(l);
  return c.inverted ? g.inv(c.element) : c.element;
}

/// Product of the letters under the substitution, left to right.
inline ElementId evaluate(const FiniteGroup& g, const Word& w, std::span<const ElementId> assignment) {
  if (assignment.size() < w.arity())
    throw Error(ErrorKind::precondition_violated, "assignment shorter than word arity");
  ElementId acc = identity_id;
  for (const auto& l : w.letters()) acc = g.mul(acc, letter_value(g, l, assignment));
  return acc;
}

/// Evaluation-ready form: runs of coefficients are folded into single constants.
class CompiledWord {
 public:
  CompiledWord(const FiniteGroup& g, const Word& w) {
    bool pending = false;
    ElementId constant = identity_id;
    for (const auto& l : w.letters()) {
      if (auto v = std::get_if<VariableLetter>(&l)) {
        if (pending) steps_.push_back({Step::constant, constant, 0});
        pending = false;
        constant = identity_id;
        steps_.push_back({v->sign > 0 ? Step::variable : Step::inverse_variable, 0, v->index});
      } else {
        constant = g.mul(constant, letter_value(g, l, {}));
        pending = true;
      }
    }
    if (pending) steps_.push_back({Step::constant, constant, 0});
  }

  /// `inverses[j]` must hold the inverse of `assignment[j]`.
  ElementId operator()(const FiniteGroup& g, std::span<const ElementId> assignment,
                       std::span<const ElementId> inverses) const noexcept {
    ElementId acc = identity_id;
    for (const auto& s : steps_) {
      switch (s.kind) {
        case Step::constant: acc = g.mul(acc, s.value); break;
        case Step::variable: acc = g.mul(acc, assignment[s.index]); break;
        case Step::inverse_variable: acc = g.mul(acc, inverses[s.index]); break;
      }
    }
    return acc;
  }

 private:
  struct Step {
    enum Kind : std::uint8_t { constant, variable, inverse_variable } kind;
    ElementId value;
    std::size_t index;
  };
  std::vector<Step> steps_;
};

/// Renders a word back into DSL text using the given names.
inline std::string to_text(const Word& w, const std::vector<std::string>& variables,
                           const std::map<ElementId, std::string>& coefficient_names) {
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    if (auto v = std::get_if<VariableLetter>(&l)) {
      out += v->index < variables.size() ? variables[v->index] : "x" + std::to_string(v->index + 1);
      if (v->sign < 0) out += "^-1";
    } else {
      const auto& c = std::get<CoefficientLetter>(l);
      auto it = coefficient_names.find(c.element);
      if (it == coefficient_names.end()) throw Error(ErrorKind::unbound_name, "unnamed coefficient");
      out += it->second;
      if (c.inverted) out += "^-1";
    }
  }
  return out;
}

}  // namespace divlab
