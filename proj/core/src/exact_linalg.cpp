#include "residuum/exact_linalg.hpp"

#include "residuum/errors.hpp"

#include <numeric>
#include <sstream>

namespace residuum {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<std::vector<Rational>>& cols) {
  return from_rows(cols).transpose();
}

std::vector<Rational> RationalMatrix::column(std::size_t j) const {
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

RationalMatrix RationalMatrix::submatrix(std::span<const std::size_t> row_idx,
                                         std::span<const std::size_t> col_idx) const {
  RationalMatrix out(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      if (row_idx[i] >= rows_ || col_idx[j] >= cols_)
        throw Error(ErrorKind::IndexOutOfRange, "submatrix index out of range");
      out(i, j) = (*this)(row_idx[i], col_idx[j]);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  // Clear denominators row by row; det(m) = det(a) / prod(scale).
  std::vector<Integer> a(n * n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, Integer(denominator(m(i, j))));
    scale *= l;
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = numerator(m(i, j)) * (l / denominator(m(i, j)));
  }

  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap * n + k] == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[swap * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
    }
    prev = a[k * n + k];
  }
  Rational det(a[n * n - 1] * sign, scale);
  return det;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(RationalMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const Rational f = a(i, col) / a(row, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  return echelon(a).size();
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(piv, j), a(col, j));
    const Rational d = a(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) a(col, j) /= d;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, n + j);
  return out;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "solve: right-hand side length");
  auto inv = inverse(m);
  if (!inv) return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) x[i] += (*inv)(i, j) * b[j];
  return x;
}

std::optional<std::pair<RationalMatrix, RationalMatrix>> lu_without_pivoting(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "LU of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix l = RationalMatrix::identity(n);
  RationalMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Rational s = m(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * u(k, j);
      u(i, j) = s;
    }
    if (u(i, i) == 0) return std::nullopt;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s = m(j, i);
      for (std::size_t k = 0; k < i; ++k) s -= l(j, k) * u(k, i);
      l(j, i) = s / u(i, i);
    }
  }
  return std::make_pair(std::move(l), std::move(u));
}

namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace

Rational leading_principal_minor(const RationalMatrix& m, std::size_t k) {
  if (k == 0) return 1;
  if (k > std::min(m.rows(), m.cols()))
    throw Error(ErrorKind::IndexOutOfRange, "leading principal minor index out of range");
  const auto idx = iota(k);
  return determinant(m.submatrix(idx, idx));
}

Rational q_minor(const RationalMatrix& m, std::size_t k, std::size_t l) {
  if (k < 1 || k >= l || l > m.cols() || k > m.rows())
    throw Error(ErrorKind::IndexOutOfRange, "q minor index out of range");
  const auto rows = iota(k);
  auto cols = iota(k - 1);
  cols.push_back(l - 1);
  return determinant(m.submatrix(rows, cols));
}

Rational r_minor(const RationalMatrix& m, std::size_t j, std::size_t k) {
  if (j < 1 || j >= k || k > m.rows() || k - 1 > m.cols())
    throw Error(ErrorKind::IndexOutOfRange, "r minor index out of range");
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < k; ++i)
    if (i != j - 1) rows.push_back(i);
  return determinant(m.submatrix(rows, iota(k - 1)));
}

MinorProfile minor_profile(const RationalMatrix& m) {
  if (m.rows() > m.cols()) throw Error(ErrorKind::DimensionMismatch, "minor profile needs rows <= cols");
  const std::size_t k = m.rows();
  const std::size_t r = m.cols();
  MinorProfile out;
  out.p.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) out.p.push_back(leading_principal_minor(m, i));
  for (std::size_t j = 1; j <= k; ++j)
    for (std::size_t l = j + 1; l <= r; ++l) out.q.emplace(std::make_pair(j, l), q_minor(m, j, l));
  for (std::size_t l = 2; l <= k; ++l)
    for (std::size_t j = 1; j < l; ++j) out.r.emplace(std::make_pair(j, l), r_minor(m, j, l));

  out.in_bruhat_cell = true;
  bool positive = true;
  for (const auto& p : out.p) {
    if (p == 0) out.in_bruhat_cell = false;
    if (p <= 0) positive = false;
  }
  bool signs = true;
  for (const auto& [jl, value] : out.r) {
    const bool odd = (jl.second - jl.first) % 2 == 1;
    if ((odd ? -value : value) < 0) signs = false;
  }
  out.stable = positive && signs;
  out.compatible = true;
  if (out.stable)
    for (const auto& [jl, value] : out.q)
      if (value > 0) out.compatible = false;
  return out;
}

}  // namespace residuum
