#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "toricdvr/buildings.hpp"
#include "toricdvr/polyhedral.hpp"

namespace toricdvr {

// (u, k) in M x Z; at x = (xi, m) it takes the value <u, xi> + k m.
struct Character {
  IntVec u;
  long long k = 0;

  Rational eval(const RatVec& x) const;
  friend bool operator==(const Character&, const Character&) = default;
};

// Klyachko data on one maximal cone: basis columns and one character per column.
struct BundleChart {
  std::size_t cone = 0;  // position in Fan::maximal()
  RatMatrix basis;
  std::vector<Character> characters;
};

// A toric vector bundle on the toric scheme of a fan in N_R x R_{>=0}.
class ToricBundleData {
 public:
  // Throws ShapeMismatch, SingularBasis, InvalidArgument (missing or
  // duplicate charts) and the slicing errors of the fan.
  ToricBundleData(Fan fan, std::size_t rank, std::vector<BundleChart> charts,
                  ValuationConfig cfg = ValuationConfig());

  std::size_t n() const { return fan_.ambient_dim() - 1; }
  std::size_t rank() const { return rank_; }
  const ValuationConfig& cfg() const { return cfg_; }
  const Fan& fan() const { return fan_; }
  const PolyComplex& complex() const { return complex_; }
  const Fan& generic_fan() const { return generic_; }
  const BundleChart& chart(std::size_t pos) const { return charts_[pos]; }
  const std::vector<BundleChart>& charts() const { return charts_; }

  // Position of a maximal cone of the fan containing cone(cell). Throws NoCoveringCone.
  std::size_t chart_for_cell(const Cell& cell) const;
  // The chart on a given maximal cone evaluated at x.
  AdaptedNorm eval_chart(std::size_t pos, const RatVec& x) const;

 private:
  Fan fan_;
  std::size_t rank_;
  std::vector<BundleChart> charts_;
  ValuationConfig cfg_;
  PolyComplex complex_;
  Fan generic_;
};

// Phi(x) as a level-(height of x) norm. Throws OutsideSupport.
AdaptedNorm eval_phi(const ToricBundleData& e, const RatVec& x);

struct BundleReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<RatVec> samples;
};

// Compares the charts of every pair of maximal cones on their common face at
// a deterministic set of test points plus `density` seeded lattice points.
BundleReport validate_bundle(const ToricBundleData& e, std::uint64_t seed = 0, std::size_t density = 8);

struct StarChart {
  std::size_t cell = 0;  // index into the complex
  ModpMatrix basis;      // columns over F_p, coordinates in the lattice basis
  std::vector<IntVec> u;
};

struct VertexRestriction {
  IntVec vertex;
  OLattice lattice;
  StarFan star;
  std::vector<StarChart> charts;  // one per maximal cone of star.fan

  // Phi_nu(y). Throws OutsideStar.
  ResidueValuation eval(const RatVec& y) const;
};

// Throws NotAVertex.
VertexRestriction restrict_to_vertex(const ToricBundleData& e, const IntVec& vertex);

struct GenericChart {
  std::size_t source = 0;  // position of the chosen maximal cone of the fan
  RatMatrix basis;
  std::vector<IntVec> u;
};

struct GenericRestriction {
  Fan fan;
  std::vector<GenericChart> charts;  // one per maximal cone of fan

  // Phi_0(x). Throws OutsideSupport.
  AdaptedNorm eval(const RatVec& x, const ValuationConfig& cfg) const;
};

// Throws NoCoveringCone.
GenericRestriction restrict_to_generic(const ToricBundleData& e);

struct MorphismReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Whether the linear map F: K^r -> K^r' (an r' x r matrix) is a morphism
// E -> E'. Throws ShapeMismatch.
MorphismReport check_morphism(const ToricBundleData& source, const ToricBundleData& target, const RatMatrix& f);

// The rank-1 summands of a bundle whose charts all use diagonal bases.
// Throws InvalidArgument otherwise.
std::vector<ToricBundleData> line_summands(const ToricBundleData& e);

}  // namespace toricdvr
