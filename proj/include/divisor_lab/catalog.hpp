#pragma once

// Standard finite groups used as the test and exploration corpus.
//
// Permutations multiply left factor first: (p*q)(i) = q(p(i)). Permutation
// elements are named in cycle notation, e.g. "(1,2,3)(4,5)", identity "()".
// Dihedral elements are "r^i s^j" words: "1", "r", "r^2", "s", "r s", ...

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"

namespace divlab {

namespace detail {

inline void check_catalog_order(std::size_t order, const std::string& what) {
  if (order > catalog_order_cap)
    throw Error(ErrorKind::size_cap_exceeded,
                what + " has order " + std::to_string(order) + " > " + std::to_string(catalog_order_cap));
}

inline std::string power_name(const std::string& symbol, std::size_t k) {
  if (k == 1) return symbol;
  return symbol + "^" + std::to_string(k);
}

inline std::string cycle_notation(const std::vector<int>& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ",";
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

inline bool is_even(const std::vector<int>& p) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

inline FiniteGroup permutation_group(std::size_t points, bool even_only) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(points);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!even_only || is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<int>, long long> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(perms[i], static_cast<long long>(i));

  const std::size_t n = perms.size();
  std::vector<std::vector<long long>> table(n, std::vector<long long>(n));
  std::vector<int> prod(points);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < points; ++i)
        prod[i] = perms[b][static_cast<std::size_t>(perms[a][i])];
      table[a][b] = index.at(prod);
    }
  }
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back(cycle_notation(q));
  return build_group(table, std::move(names));
}

}  // namespace detail

/// Z/n with elements "1", "g", "g^2", ...
inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::input_error, "cyclic group needs n >= 1");
  detail::check_catalog_order(n, "cyclic " + std::to_string(n));
  std::vector<std::vector<long long>> table(n, std::vector<long long>(n));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(a == 0 ? "1" : detail::power_name("g", a));
    for (std::size_t b = 0; b < n; ++b) table[a][b] = static_cast<long long>((a + b) % n);
  }
  return build_group(table, std::move(names));
}

/// Symmetries of the regular n-gon, order 2n; id of r^i s^j is i + n j.
inline FiniteGroup dihedral_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::input_error, "dihedral group needs n >= 1");
  detail::check_catalog_order(2 * n, "dihedral " + std::to_string(n));
  const std::size_t order = 2 * n;
  std::vector<std::vector<long long>> table(order, std::vector<long long>(order));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t i = x % n, j = x / n;
    std::string nm;
    if (i != 0) nm = detail::power_name("r", i);
    if (j != 0) nm += nm.empty() ? "s" : " s";
    names.push_back(nm.empty() ? "1" : nm);
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t k = y % n, l = y / n;
      const std::size_t rot = j == 0 ? (i + k) % n : (i + n - k) % n;
      table[x][y] = static_cast<long long>(rot + n * (j ^ l));
    }
  }
  return build_group(table, std::move(names));
}

inline FiniteGroup symmetric_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::input_error, "symmetric group needs n >= 1");
  if (n > 6) throw Error(ErrorKind::size_cap_exceeded, "symmetric group needs n <= 6");
  return detail::permutation_group(n, false);
}

inline FiniteGroup alternating_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::input_error, "alternating group needs n >= 1");
  if (n > 6) throw Error(ErrorKind::size_cap_exceeded, "alternating group needs n <= 6");
  return detail::permutation_group(n, true);
}

/// {±1, ±i, ±j, ±k}.
inline FiniteGroup quaternion_group() {
  // unit index 0..3 = 1,i,j,k; element id = 2*unit + (negative ? 1 : 0)
  static constexpr int unit_product[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  const char* unit_names[4] = {"1", "i", "j", "k"};
  std::vector<std::vector<long long>> table(8, std::vector<long long>(8));
  std::vector<std::string> names;
  for (int x = 0; x < 8; ++x) {
    names.push_back(std::string(x % 2 ? "-" : "") + unit_names[x / 2]);
    for (int y = 0; y < 8; ++y) {
      const auto& p = unit_product[x / 2][y / 2];
      const int sign = (x % 2) ^ (y % 2) ^ p[1];
      table[x][y] = 2 * p[0] + sign;
    }
  }
  return build_group(table, std::move(names));
}

/// A x B with id(a, b) = a |B| + b and names "(a,b)".
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  detail::check_catalog_order(na * nb, "direct product");
  const std::size_t n = na * nb;
  std::vector<std::vector<long long>> table(n, std::vector<long long>(n));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x) {
    names.push_back("(" + a.name(static_cast<ElementId>(x / nb)) + "," +
                    b.name(static_cast<ElementId>(x % nb)) + ")");
    for (std::size_t y = 0; y < n; ++y) {
      auto pa = a.mul(static_cast<ElementId>(x / nb), static_cast<ElementId>(y / nb));
      auto pb = b.mul(static_cast<ElementId>(x % nb), static_cast<ElementId>(y % nb));
      table[x][y] = static_cast<long long>(pa * nb + pb);
    }
  }
  return build_group(table, std::move(names));
}

/// Parses a catalog spec such as "S3", "D4", "Q8", "A4", "Z6", "Z2xZ2xZ3",
/// "cyclic:5", "dihedral:3", "symmetric:4", "alternating:5", "quaternion8".
inline FiniteGroup catalog_group(std::string_view spec) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::input_error, "bad catalog spec '" + std::string(spec) + "': " + why);
  };
  auto skip_space = [&] {
    while (pos < spec.size() && std::isspace(static_cast<unsigned char>(spec[pos]))) ++pos;
  };
  auto factor = [&]() -> FiniteGroup {
    skip_space();
    std::string word;
    while (pos < spec.size() && std::isalpha(static_cast<unsigned char>(spec[pos])) &&
           !(word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0])))) {
      word += spec[pos++];
    }
    if (pos < spec.size() && spec[pos] == ':') ++pos;
    std::string digits;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) digits += spec[pos++];
    if (word == "quaternion" && digits == "8") return quaternion_group();
    if (word == "Q" && digits == "8") return quaternion_group();
    if (word == "trivial" && digits.empty()) return cyclic_group(1);
    if (digits.empty() || digits.size() > 6) throw fail("missing or oversized size parameter");
    const std::size_t n = std::stoul(digits);
    if (word == "Z" || word == "C" || word == "cyclic") return cyclic_group(n);
    if (word == "D" || word == "dihedral") return dihedral_group(n);
    if (word == "S" || word == "symmetric") return symmetric_group(n);
    if (word == "A" || word == "alternating") return alternating_group(n);
    throw fail("unknown group family '" + word + "'");
  };

  FiniteGroup g = factor();
  skip_space();
  while (pos < spec.size()) {
    if (spec[pos] != 'x' && spec[pos] != '*') throw fail("expected 'x' between factors");
    ++pos;
    g = direct_product(g, factor());
    skip_space();
  }
  return g;
}

struct CatalogEntry {
  std::string label;
  FiniteGroup group;
};

/// Deterministic corpus of pairwise distinct catalog groups with |G| <= max_order.
inline std::vector<CatalogEntry> catalog_corpus(std::size_t max_order) {
  static const std::vector<std::pair<std::string, std::size_t>> specs = [] {
    std::vector<std::pair<std::string, std::size_t>> s;
    for (std::size_t n = 1; n <= 24; ++n) s.emplace_back("Z" + std::to_string(n), n);
    for (std::size_t n = 2; n <= 12; ++n)
      if (n != 3) s.emplace_back("D" + std::to_string(n), 2 * n);  // D3 is S3
    s.insert(s.end(), {{"S3", 6},        {"Q8", 8},         {"A4", 12},       {"S4", 24},
                       {"Z2xZ4", 8},     {"Z2xZ2xZ2", 8},   {"Z3xZ3", 9},     {"Z2xZ6", 12},
                       {"Z2xZ8", 16},    {"Z4xZ4", 16},     {"Z2xZ2xZ4", 16}, {"Z2xZ2xZ2xZ2", 16},
                       {"Z2xD4", 16},    {"Z2xQ8", 16},     {"Z3xS3", 18},    {"Z3xZ6", 18},
                       {"Z2xZ10", 20},   {"Z2xA4", 24},     {"Z4xS3", 24},    {"Z3xQ8", 24},
                       {"Z3xD4", 24},    {"Z2xZ2xS3", 24},  {"Z2xZ12", 24},   {"Z2xZ2xZ6", 24},
                       {"A5", 60},       {"S5", 120}});
    return s;
  }();
  std::vector<CatalogEntry> out;
  for (const auto& [label, order] : specs)
    if (order <= max_order) out.push_back({label, catalog_group(label)});
  return out;
}

}  // namespace divlab
