#pragma once

#include "residuum/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace residuum {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static RationalMatrix from_columns(const std::vector<std::vector<Rational>>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Rational> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<Rational> column(std::size_t j) const;

  RationalMatrix submatrix(std::span<const std::size_t> row_idx,
                           std::span<const std::size_t> col_idx) const;
  RationalMatrix transpose() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Determinant of a square matrix by fraction-free Bareiss elimination on the
/// row-scaled integer matrix.
Rational determinant(const RationalMatrix& m);

/// Rank by exact Gaussian elimination.
std::size_t rank(const RationalMatrix& m);

std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Solves m x = b exactly; nullopt when m is singular.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, std::span<const Rational> b);

/// Doolittle factorization m = L U (unit lower L) without any row exchange.
/// Returns nullopt when a zero pivot is met.
std::optional<std::pair<RationalMatrix, RationalMatrix>> lu_without_pivoting(const RationalMatrix& m);

// Minor families. All indices are 1-based to match the usual notation for
// leading principal minors.

/// p_k: determinant of the top-left k x k block. p_0 = 1.
Rational leading_principal_minor(const RationalMatrix& m, std::size_t k);

/// q_{kl}: first k rows, columns 1..k-1 and column l.
Rational q_minor(const RationalMatrix& m, std::size_t k, std::size_t l);

/// r_{jk}: rows 1..k with row j removed, columns 1..k-1. For k = 1 the
/// empty minor is not defined; callers need 1 <= j < k.
Rational r_minor(const RationalMatrix& m, std::size_t j, std::size_t k);

struct MinorProfile {
  std::vector<Rational> p;                                // p_1..p_k
  std::map<std::pair<std::size_t, std::size_t>, Rational> q;  // (j, l), j <= k, j < l <= r
  std::map<std::pair<std::size_t, std::size_t>, Rational> r;  // (j, l), j < l <= k
  bool stable = false;
  bool compatible = true;
  bool in_bruhat_cell = false;
};

/// Requires rows <= cols. Stable iff every p is positive and
/// (-1)^(l-j) r_{jl} >= 0; compatible iff unstable or every q <= 0.
MinorProfile minor_profile(const RationalMatrix& m);

}  // namespace residuum
