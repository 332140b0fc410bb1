#pragma once

// Exact integer matrices: determinantal divisors (minor GCDs), invariant
// factors, and the Smith normal form with unimodular transforms.
//
// Conventions: Δ_0 = 1; Δ_i = 0 when the matrix has no i x i submatrix;
// Δ values are nonnegative; the ratio 0/0 is 0.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divisor_lab/bigint.hpp"
#include "divisor_lab/error.hpp"

namespace divlab {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::input_error, "ragged matrix literal");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::input_error, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::precondition_violated, "matrix shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
inline BigInt determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::precondition_violated, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace detail {

// C(n, k) saturated at `cap + 1`.
inline std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::size_t>(c);
}

// Advances a sorted k-combination of {0..n-1}; false when exhausted.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Largest C(r,i)*C(c,i) for which minors are enumerated directly.
inline constexpr std::size_t minor_enumeration_cap = 1'000'000;

/// Δ_i by enumerating every i x i minor, with early exit once the gcd is 1.
inline BigInt minors_gcd_enumerated(const IntMatrix& a, std::size_t i) {
  if (i == 0) return 1;
  if (i > a.rows() || i > a.cols()) return 0;
  std::vector<std::size_t> rs(i), cs(i);
  std::iota(rs.begin(), rs.end(), std::size_t{0});
  BigInt acc = 0;
  IntMatrix sub(i, i);
  do {
    std::iota(cs.begin(), cs.end(), std::size_t{0});
    do {
      for (std::size_t p = 0; p < i; ++p)
        for (std::size_t q = 0; q < i; ++q) sub(p, q) = a(rs[p], cs[q]);
      acc = big_gcd(acc, determinant(sub));
      if (acc == 1) return acc;
    } while (detail::next_combination(cs, a.cols()));
  } while (detail::next_combination(rs, a.rows()));
  return acc;
}

struct SmithForm {
  std::vector<BigInt> diagonal;  // length min(rows, cols), each divides the next
  IntMatrix left;                // rows x rows, det ±1
  IntMatrix right;               // cols x cols, det ±1
};

/// left * a * right = diag(diagonal), with nonnegative diagonal entries.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  IntMatrix d = a;
  IntMatrix left = IntMatrix::identity(a.rows());
  IntMatrix right = IntMatrix::identity(a.cols());
  const std::size_t r = a.rows(), c = a.cols();
  const std::size_t k = std::min(r, c);

  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // smallest nonzero pivot in the trailing block
      std::size_t pi = r, pj = c;
      BigInt best = 0;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (d(i, j) != 0 && (best == 0 || boost::multiprecision::abs(d(i, j)) < best)) {
            best = boost::multiprecision::abs(d(i, j));
            pi = i;
            pj = j;
          }
      if (pi == r) break;
      if (pi != t) {
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
      }
      if (pj != t) {
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        BigInt q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        left.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        BigInt q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        right.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad_row = r;
      for (std::size_t i = t + 1; i < r && bad_row == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == r) break;
      d.add_row(t, bad_row, 1);
      left.add_row(t, bad_row, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      left.negate_row(t);
    }
  }

  SmithForm out{{}, std::move(left), std::move(right)};
  out.diagonal.reserve(k);
  for (std::size_t t = 0; t < k; ++t) out.diagonal.push_back(d(t, t));

  for (const IntMatrix* u : {&out.left, &out.right}) {
    BigInt det = determinant(*u);
    if (det != 1 && det != -1) throw std::logic_error("smith_normal_form: transform is not unimodular");
  }
  return out;
}

/// Δ_i as the product of the first i Smith invariant factors.
inline BigInt minors_gcd_via_smith(const IntMatrix& a, std::size_t i) {
  if (i == 0) return 1;
  if (i > a.rows() || i > a.cols()) return 0;
  const auto snf = smith_normal_form(a);
  BigInt acc = 1;
  for (std::size_t t = 0; t < i; ++t) acc *= snf.diagonal[t];
  return acc;
}

/// Δ_i: gcd of all order-i minors. Direct enumeration when small enough,
/// otherwise the Smith-form product.
inline BigInt minors_gcd(const IntMatrix& a, std::size_t i) {
  if (i == 0) return 1;
  if (i > a.rows() || i > a.cols()) return 0;
  const std::size_t cr = detail::binomial_capped(a.rows(), i, minor_enumeration_cap);
  const std::size_t cc = detail::binomial_capped(a.cols(), i, minor_enumeration_cap);
  if (cr <= minor_enumeration_cap && cc <= minor_enumeration_cap && cr * cc <= minor_enumeration_cap)
    return minors_gcd_enumerated(a, i);
  return minors_gcd_via_smith(a, i);
}

/// Δ_m / Δ_{m-1}, with 0 whenever Δ_{m-1} = 0.
inline BigInt invariant_factor(const IntMatrix& a, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::precondition_violated, "invariant factor index must be >= 1");
  const BigInt lower = minors_gcd(a, m - 1);
  if (lower == 0) return 0;
  const BigInt upper = minors_gcd(a, m);
  if (upper % lower != 0) throw std::logic_error("invariant_factor: Δ_{m-1} does not divide Δ_m");
  return upper / lower;
}

/// Exponent of Z^cols / (row lattice); 0 means infinite.
inline BigInt lattice_quotient_period(const IntMatrix& a) {
  if (a.cols() == 0) return 1;
  return invariant_factor(a, a.cols());
}

struct RowDivisibilityVerdict {
  bool pass = true;
  BigInt factor;  // m-th invariant factor
  BigInt gcd_of_divisors;
  BigInt lcm_of_divisors;
  std::string counter_witness;  // empty when pass
};

/// Checks the three-case rule for a k x m matrix whose i-th row is divisible
/// by l_i: the m-th invariant factor is divisible by GCD(l) always, by LCM(l)
/// when k = m, and vanishes when k < m.
inline RowDivisibilityVerdict row_divisible_fact_check(const IntMatrix& a, std::span<const BigInt> l) {
  if (l.size() != a.rows())
    throw Error(ErrorKind::precondition_violated, "need one divisor per row");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!divides(l[i], a(i, j)))
        throw Error(ErrorKind::precondition_violated,
                    "row " + std::to_string(i) + " is not divisible by " + l[i].str());

  RowDivisibilityVerdict v;
  v.factor = a.cols() == 0 ? BigInt(1) : invariant_factor(a, a.cols());
  v.gcd_of_divisors = 0;
  v.lcm_of_divisors = 1;
  for (const auto& x : l) {
    v.gcd_of_divisors = big_gcd(v.gcd_of_divisors, x);
    v.lcm_of_divisors = big_lcm(v.lcm_of_divisors, x);
  }
  const std::size_t k = a.rows(), m = a.cols();
  if (!divides(v.gcd_of_divisors, v.factor)) {
    v.pass = false;
    v.counter_witness = "factor " + v.factor.str() + " not divisible by GCD " + v.gcd_of_divisors.str();
  } else if (k == m && !divides(v.lcm_of_divisors, v.factor)) {
    v.pass = false;
    v.counter_witness = "factor " + v.factor.str() + " not divisible by LCM " + v.lcm_of_divisors.str();
  } else if (k < m && v.factor != 0) {
    v.pass = false;
    v.counter_witness = "factor " + v.factor.str() + " should vanish for k < m";
  }
  return v;
}

}  // namespace divlab
