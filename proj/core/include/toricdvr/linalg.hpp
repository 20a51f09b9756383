#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "toricdvr/arith.hpp"

namespace toricdvr {

using IntVec = std::vector<long long>;
using RatVec = std::vector<Rational>;

// Dense row-major matrix over Q.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVec>& rows, std::size_t cols);
  static RatMatrix from_columns(const std::vector<RatVec>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVec row(std::size_t i) const;
  RatVec column(std::size_t j) const;
  void set_column(std::size_t j, const RatVec& v);
  RatMatrix transpose() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatVec operator*(const RatMatrix& a, const RatVec& x);

RatVec to_rational(std::span<const long long> v);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const long long> a, std::span<const Rational> b);
long long dot(std::span<const long long> a, std::span<const long long> b);

std::size_t rank(const RatMatrix& a);
Rational determinant(const RatMatrix& a);
// Throws SingularBasis.
RatMatrix inverse(const RatMatrix& a);
// Solves a x = b for square invertible a. Throws SingularBasis.
RatVec solve(const RatMatrix& a, const RatVec& b);
// Basis of {x : a x = 0}.
std::vector<RatVec> nullspace(const RatMatrix& a);

// Scales a nonzero rational vector to the primitive integer vector on its ray.
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);
bool is_zero(std::span<const long long> v);

// Matrices over F_p, entries in [0, p).
using ModpMatrix = std::vector<std::vector<long long>>;

std::size_t rank_mod_p(ModpMatrix a, long long p);
// Solves a x = b over F_p for square invertible a. Throws SingularBasis.
std::vector<long long> solve_mod_p(ModpMatrix a, std::vector<long long> b, long long p);

}  // namespace toricdvr
