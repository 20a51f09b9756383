#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "toricdvr/bundle.hpp"
#include "toricdvr/ppoly.hpp"

namespace toricdvr {

// c_i^T(E) in PP^i(Sigma_1), certified by pp_membership. Throws IndexOutOfRange for i > r.
PPClass chern_class(const ToricBundleData& e, std::size_t i);
// sum_i c_i^T(E).
GradedClass total_chern_class(const ToricBundleData& e);
// Chern class of the generic fiber on Sigma_0. Throws ConditionIFailed if the
// pieces do not glue.
PiecewisePoly chern_generic(const ToricBundleData& e, std::size_t i);

struct ChernResult {
  std::vector<PPClass> classes;        // degrees 0..r
  std::vector<PiecewisePoly> generic;  // degrees 0..r
};

ChernResult compute_chern(const ToricBundleData& e);

// eps_i(Phi_nu(y)) computed from the filtration of Phi_nu(y): dimensions are
// found by counting vectors of F_p^r when p^r is small and by ranks otherwise.
// Throws OutsideStar, IndexOutOfRange.
Rational epsilon_oracle(const VertexRestriction& restriction, std::size_t i, const RatVec& y);
Rational epsilon_oracle(const ToricBundleData& e, const IntVec& vertex, std::size_t i, const RatVec& y);

// Seeded lattice points of a full-dimensional cone drawn from the box
// [-count, count]^n, deduplicated, always including the apex.
std::vector<RatVec> sample_cone(const Cone& c, std::size_t count, std::uint64_t seed);

}  // namespace toricdvr
