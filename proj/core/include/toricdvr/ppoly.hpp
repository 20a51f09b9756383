#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "toricdvr/polyhedral.hpp"

namespace toricdvr {

// Sparse polynomial over Q in a fixed number of variables. Zero
// coefficients are never stored; monomials iterate in lexicographic order of
// their exponent vectors.
class Poly {
 public:
  using Terms = std::map<IntVec, Rational>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  // sum_i coeffs[i] x_i
  static Poly linear(const RatVec& coeffs);
  static Poly linear(const IntVec& coeffs);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const IntVec& exps) const;
  // Adds c x^exps. Throws ArityMismatch.
  void add_term(const IntVec& exps, const Rational& c);
  bool is_homogeneous(std::size_t degree) const;
  // Largest total degree; 0 for the zero polynomial.
  std::size_t degree() const;

  Rational eval(const RatVec& x) const;
  // Substitutes subs[i] for x_i; every substitute must share one arity.
  Poly compose(const std::vector<Poly>& subs) const;
  // As compose, with each substitute required to be linear.
  Poly compose_linear(const std::vector<Poly>& subs) const;
  Poly pow(std::size_t e) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  Poly operator-() const { return *this * Rational(-1); }
  friend bool operator==(const Poly&, const Poly&) = default;

  // Human-readable form such as "x1^2 - 1/2*x1*x2".
  std::string to_string() const;

 private:
  void check_arity(const Poly& o) const;

  std::size_t nvars_;
  Terms terms_;
};

// e_i(forms[0], ..., forms[k-1]) expanded.
Poly elementary_symmetric(const std::vector<Poly>& forms, std::size_t i, std::size_t nvars);

// A homogeneous piecewise polynomial on a fan: one piece per maximal cone.
struct PiecewisePoly {
  Fan fan;
  std::vector<Poly> pieces;  // parallel to fan.maximal()
  std::size_t degree = 0;

  // Throws OutsideSupport.
  Rational eval(const RatVec& x) const;
  friend bool operator==(const PiecewisePoly&, const PiecewisePoly&) = default;
};

struct ContinuityReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Restricts adjacent pieces to the span of their common face and compares them.
ContinuityReport continuity_check(const PiecewisePoly& f);

// f(sum_k t_k basis[k]) as a polynomial in t.
Poly restrict_to_basis(const Poly& f, const std::vector<IntVec>& basis);
// An independent subset of the rays, spanning the same space.
std::vector<IntVec> span_basis(const Cone& c);
Poly restrict_to_span(const Poly& f, const Cone& c);

// An element of PP^degree(Sigma_1): one piecewise polynomial per vertex on its star fan.
class PPClass {
 public:
  const PolyComplex& complex() const { return complex_; }
  std::size_t degree() const { return degree_; }
  const std::vector<StarFan>& stars() const { return stars_; }
  // Indexed like complex().vertices().
  const std::vector<PiecewisePoly>& parts() const { return parts_; }
  // The piece at vertex index v on the maximal star cone at position star_pos.
  const Poly& piece(std::size_t v, std::size_t star_pos) const { return parts_[v].pieces[star_pos]; }

  static PPClass zero(const PolyComplex& complex, std::size_t degree);
  static PPClass unit(const PolyComplex& complex);

  friend bool operator==(const PPClass& a, const PPClass& b) {
    return a.degree_ == b.degree_ && a.complex_ == b.complex_ && a.parts_ == b.parts_;
  }

 private:
  friend PPClass pp_membership(const PolyComplex& complex, std::vector<PiecewisePoly> candidate);

  PolyComplex complex_;
  std::size_t degree_ = 0;
  std::vector<StarFan> stars_;
  std::vector<PiecewisePoly> parts_;
};

// Certifies a vertex-indexed tuple of piecewise polynomials (indexed like
// complex.vertices(), each on star_fan(complex, v)). Throws ConditionIFailed
// when a part is discontinuous or not homogeneous of the common degree, and
// ConditionIIFailed when two vertices of a cell attach different polynomials.
PPClass pp_membership(const PolyComplex& complex, std::vector<PiecewisePoly> candidate);

// Vertexwise, conewise ring operations. Throws ComplexMismatch; add also
// throws InvalidArgument for different degrees.
PPClass pp_add(const PPClass& a, const PPClass& b);
PPClass pp_mul(const PPClass& a, const PPClass& b);

// Sum of homogeneous classes of degrees 0, 1, ..., in the PP ring.
class GradedClass {
 public:
  explicit GradedClass(std::vector<PPClass> components);
  static GradedClass one(const PolyComplex& complex);

  const std::vector<PPClass>& components() const { return components_; }
  // Drops zero components above degree 0.
  GradedClass normalized() const;

  friend GradedClass operator+(const GradedClass& a, const GradedClass& b);
  friend GradedClass operator*(const GradedClass& a, const GradedClass& b);
  friend bool operator==(const GradedClass& a, const GradedClass& b);

 private:
  std::vector<PPClass> components_;
};

}  // namespace toricdvr
