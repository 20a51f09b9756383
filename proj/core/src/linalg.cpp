#include "toricdvr/linalg.hpp"

#include <numeric>
#include <utility>

namespace toricdvr {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVec>& columns, std::size_t rows) {
  RatMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

RatVec RatMatrix::row(std::size_t i) const {
  return RatVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVec RatMatrix::column(std::size_t j) const {
  RatVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void RatMatrix::set_column(std::size_t j, const RatVec& v) {
  if (v.size() != rows_) throw Error(ErrorCode::ShapeMismatch, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product shapes");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatVec operator*(const RatMatrix& a, const RatVec& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector shapes");
  RatVec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!x[j].is_zero()) y[i] += a(i, j) * x[j];
  return y;
}

RatVec to_rational(std::span<const long long> v) {
  return RatVec(v.begin(), v.end());
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "dot product lengths");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const long long> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "dot product lengths");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(a[i]) * b[i];
  return s;
}

long long dot(std::span<const long long> a, std::span<const long long> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "dot product lengths");
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
    Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  return rref(m).size();
}

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "determinant of non-square matrix");
  RatMatrix m = a;
  Rational det(1);
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(ErrorCode::SingularBasis, "matrix is not invertible");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

RatVec solve(const RatMatrix& a, const RatVec& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error(ErrorCode::ShapeMismatch, "solve shapes");
  RatMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(ErrorCode::SingularBasis, "matrix is not invertible");
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

std::vector<RatVec> nullspace(const RatMatrix& a) {
  RatMatrix m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVec v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

IntVec primitive(const RatVec& v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, x.den());
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer k = x.num() * (l / x.den());
    g = boost::multiprecision::gcd(g, abs(k));
    ints.push_back(k);
  }
  if (g == 0) throw Error(ErrorCode::InvalidArgument, "primitive vector of zero");
  IntVec out;
  out.reserve(v.size());
  for (const auto& k : ints) out.push_back(static_cast<long long>(Integer(k / g)));
  return out;
}

IntVec primitive(const IntVec& v) {
  long long g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) throw Error(ErrorCode::InvalidArgument, "primitive vector of zero");
  IntVec out(v);
  for (auto& x : out) x /= g;
  return out;
}

bool is_zero(std::span<const long long> v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

std::size_t rank_mod_p(ModpMatrix a, long long p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && mod_p(a[piv][c], p) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    long long inv = inverse_mod_p(a[r][c], p);
    for (auto& x : a[r]) x = mod_p(x * inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      long long f = mod_p(a[i][c], p);
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod_p(a[i][j] - f * a[r][j], p);
    }
    ++r;
  }
  return r;
}

std::vector<long long> solve_mod_p(ModpMatrix a, std::vector<long long> b, long long p) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::ShapeMismatch, "solve_mod_p shapes");
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && mod_p(a[piv][c], p) == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::SingularBasis, "matrix is singular mod p");
    std::swap(a[c], a[piv]);
    long long inv = inverse_mod_p(a[c][c], p);
    for (auto& x : a[c]) x = mod_p(x * inv, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      long long f = mod_p(a[i][c], p);
      if (f == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) a[i][j] = mod_p(a[i][j] - f * a[c][j], p);
    }
  }
  std::vector<long long> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace toricdvr
