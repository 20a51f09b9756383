#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "toricdvr/linalg.hpp"

namespace toricdvr {

// Value of a norm: a rational number, or nullopt for +infinity.
using NormValue = std::optional<Rational>;

// A level-m additive norm on E = K^r adapted to a basis:
//   w(sum l_i b_i) = min_i (m * val(l_i) + values[i]).
class AdaptedNorm {
 public:
  AdaptedNorm() = default;
  // Throws SingularBasis, ShapeMismatch, or InvalidArgument for a negative level.
  AdaptedNorm(Rational level, RatMatrix basis, RatVec values, ValuationConfig cfg = ValuationConfig());

  const Rational& level() const { return level_; }
  const RatMatrix& basis() const { return basis_; }
  const RatVec& values() const { return values_; }
  const ValuationConfig& cfg() const { return cfg_; }
  std::size_t rank() const { return values_.size(); }

  // Coordinates of e in the adapted basis.
  RatVec coordinates(const RatVec& e) const;

  // k * w, a level k*m norm.
  AdaptedNorm scaled(const Rational& k) const;
  // w + c.
  AdaptedNorm shifted(const Rational& c) const;

 private:
  Rational level_;
  RatMatrix basis_;
  RatMatrix inverse_;
  RatVec values_;
  ValuationConfig cfg_;
};

NormValue norm_eval(const AdaptedNorm& w, const RatVec& e);

// A full-rank O-submodule sum_i O p^{a_i} b_i.
class OLattice {
 public:
  OLattice() = default;
  OLattice(RatMatrix basis, IntVec exponents, ValuationConfig cfg = ValuationConfig());

  const RatMatrix& basis() const { return basis_; }
  const IntVec& exponents() const { return exponents_; }
  const ValuationConfig& cfg() const { return cfg_; }
  std::size_t rank() const { return exponents_.size(); }
  // Columns p^{a_i} b_i, an O-basis of the lattice.
  RatMatrix generators() const;
  bool contains(const RatVec& e) const;

  static OLattice standard(std::size_t r, ValuationConfig cfg = ValuationConfig());

 private:
  RatMatrix basis_;
  IntVec exponents_;
  ValuationConfig cfg_;
};

// w_L(e) = max{ j : e in p^j L }.
AdaptedNorm to_norm(const OLattice& lattice);
// L_w = E_{w >= 0}. Throws NonIntegerValues, or LevelMismatch if the level is not 1.
OLattice to_lattice(const AdaptedNorm& w);

// E_{w >= a}: an O-lattice (level > 0) or a K-subspace (level 0), spanned by
// the columns of `generators`.
struct FiltrationStep {
  Rational threshold;
  bool is_lattice = true;
  RatMatrix generators;
  ValuationConfig cfg;

  bool contains(const RatVec& e) const;
  friend bool operator==(const FiltrationStep& a, const FiltrationStep& b);
};

FiltrationStep filtration_step(const AdaptedNorm& w, const Rational& a);

// Equality of the norms as functions on E. Throws LevelMismatch.
bool norms_equal(const AdaptedNorm& a, const AdaptedNorm& b);

// A level-0 norm on E_L = F_p^r adapted to a basis over F_p.
class ResidueValuation {
 public:
  ResidueValuation() = default;
  // basis: columns over F_p, must be invertible mod p. Throws SingularBasis.
  ResidueValuation(long long p, ModpMatrix basis, RatVec values);

  long long p() const { return p_; }
  const ModpMatrix& basis() const { return basis_; }
  const RatVec& values() const { return values_; }
  std::size_t rank() const { return values_.size(); }
  ResidueVector basis_vector(std::size_t i) const;

  NormValue eval(const ResidueVector& e) const;
  // Dimension over F_p of E_{w >= a}.
  std::size_t filtration_dim(const Rational& a) const;
  ResidueValuation scaled(const Rational& k) const;
  ResidueValuation shifted(const Rational& c) const;

 private:
  long long p_ = 2;
  ModpMatrix basis_;
  RatVec values_;
};

bool norms_equal(const ResidueValuation& a, const ResidueValuation& b);

// The link of the vertex L: a level-1 norm near w_L becomes a valuation on
// L / pL. The norm's basis columns are first rescaled by powers of p to bring
// the values into [0, 1). Throws NotInLink.
ResidueValuation link_norm(const OLattice& lattice, const AdaptedNorm& w);
// Inverse of link_norm. Throws ValuesOutOfRange.
AdaptedNorm unlink_norm(const OLattice& lattice, const ResidueValuation& w);

// Sorted distinct finite values paired with dim(E_{w>=a}/E_{w>a}).
std::vector<std::pair<Rational, std::size_t>> value_multiplicities(const AdaptedNorm& w);
std::vector<std::pair<Rational, std::size_t>> value_multiplicities(const ResidueValuation& w);

// i-th elementary symmetric function of a list of numbers.
Rational elementary_symmetric(const RatVec& xs, std::size_t i);

// e_i of the value multiset weighted by filtration dimension jumps; cross-checked
// against e_i of the adapted values (InternalError on disagreement).
// Throws IndexOutOfRange unless 1 <= i <= r, LevelMismatch for a norm of nonzero level.
Rational epsilon(const AdaptedNorm& w, std::size_t i);
Rational epsilon(const ResidueValuation& w, std::size_t i);

}  // namespace toricdvr
