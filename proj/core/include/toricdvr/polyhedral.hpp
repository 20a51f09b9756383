#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toricdvr/linalg.hpp"

namespace toricdvr {

// A strongly convex rational polyhedral cone, stored by its primitive
// extremal rays. The facet description is derived at construction with exact
// arithmetic by enumerating candidate supporting hyperplanes.
class Cone {
 public:
  Cone() = default;

  // Zero generators are dropped. Throws NotStronglyConvex if the cone
  // contains a line.
  static Cone from_generators(std::size_t ambient_dim, const std::vector<IntVec>& generators);
  static Cone zero(std::size_t ambient_dim) { return from_generators(ambient_dim, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return dim_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  // Inward primitive normals lying in the linear span.
  const std::vector<IntVec>& facet_normals() const { return facet_normals_; }
  // Ray indices on each facet, parallel to facet_normals().
  const std::vector<std::vector<std::size_t>>& facet_rays() const { return facet_rays_; }
  // Integer basis of the orthogonal complement of the span.
  const std::vector<IntVec>& equations() const { return equations_; }

  bool contains(const RatVec& x) const;
  bool contains(const IntVec& x) const { return contains(to_rational(x)); }
  bool in_relative_interior(const RatVec& x) const;
  bool contains_cone(const Cone& other) const;

  // All faces, from {0} up to the cone itself.
  std::vector<Cone> faces() const;
  std::vector<Cone> facets() const;
  bool has_face(const Cone& f) const;
  Cone intersect(const Cone& other) const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.rays_ == b.rays_;
  }
  friend std::strong_ordering operator<=>(const Cone& a, const Cone& b);

  std::string to_string() const;

 private:
  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  std::vector<IntVec> rays_;
  std::vector<IntVec> facet_normals_;
  std::vector<std::vector<std::size_t>> facet_rays_;
  std::vector<IntVec> equations_;
};

// A fan: a face-closed collection of cones meeting along common faces.
class Fan {
 public:
  Fan() = default;

  // Verifies that every pairwise intersection of the given cones is a face
  // of both. Throws NotStronglyConvex or NotAFan. The maximal cones keep the
  // order in which they first appear in the input.
  static Fan from_cones(std::size_t ambient_dim, const std::vector<Cone>& cones);
  static Fan from_generators(std::size_t ambient_dim, const std::vector<std::vector<IntVec>>& cones);

  std::size_t ambient_dim() const { return ambient_dim_; }
  // Every cone of the fan, sorted by (dimension, rays).
  const std::vector<Cone>& cones() const { return cones_; }
  // Indices into cones().
  const std::vector<std::size_t>& maximal() const { return maximal_; }
  const Cone& maximal_cone(std::size_t pos) const { return cones_[maximal_[pos]]; }
  std::optional<std::size_t> index_of(const Cone& c) const;
  std::optional<std::size_t> maximal_position(const Cone& c) const;
  // Index into cones() of the intersection of two maximal cones.
  std::size_t common_face(std::size_t pos_a, std::size_t pos_b) const;
  // Positions (into maximal()) of the maximal cones containing x.
  std::vector<std::size_t> maximal_containing(const RatVec& x) const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.cones_ == b.cones_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Cone> cones_;
  std::vector<std::size_t> maximal_;
  std::vector<std::vector<std::size_t>> common_;
};

// Fan in N_R x R_{>=0}; generators have length n + 1 with last coordinate the
// height, which must be nonnegative.
Fan build_fan(std::size_t n, const std::vector<std::vector<IntVec>>& cones);

enum class FanSupport { HalfSpace, FullSpace };

struct FanReport {
  bool complete = false;
  bool regular = false;
  std::vector<std::string> failures;
};

// HalfSpace: completeness means the support is N_R x R_{>=0} (the last
// coordinate is the height). FullSpace: the support is the whole ambient space.
FanReport check_regular_complete(const Fan& fan, FanSupport support = FanSupport::HalfSpace);

// A polyhedron in N_R x {1}: conv(vertices) + cone(rays).
struct Cell {
  std::vector<IntVec> vertices;  // sorted lattice points of N
  std::vector<IntVec> rays;      // sorted primitive vectors of N
  std::size_t dim = 0;

  // Normalises to the extremal description; throws NonIntegralVertex or
  // NotStronglyConvex.
  static Cell make(std::size_t n, const std::vector<IntVec>& vertices, const std::vector<IntVec>& rays);

  bool bounded() const { return rays.empty(); }
  bool has_vertex(const IntVec& v) const;
  // cone(cell) in N_R x R_{>=0}.
  Cone cone(std::size_t n) const;
  RatVec barycenter() const;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell& a, const Cell& b) {
    if (auto c = a.dim <=> b.dim; c != 0) return c;
    if (auto c = a.vertices <=> b.vertices; c != 0) return c;
    return a.rays <=> b.rays;
  }
  std::string to_string() const;
};

// Height-one polyhedral complex Sigma_1 with integral vertices.
class PolyComplex {
 public:
  PolyComplex() = default;

  // Closes the given cells under taking faces.
  static PolyComplex from_cells(std::size_t n, const std::vector<Cell>& cells);

  std::size_t n() const { return n_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<IntVec>& vertices() const { return vertices_; }
  std::optional<std::size_t> vertex_index(const IntVec& v) const;
  // Cells having v as a vertex.
  std::vector<std::size_t> cells_containing(const IntVec& v) const;
  const std::vector<std::size_t>& maximal_cells() const { return maximal_; }
  std::optional<std::size_t> cell_index(const Cell& c) const;
  bool is_face(std::size_t face, std::size_t cell) const;

  friend bool operator==(const PolyComplex& a, const PolyComplex& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }

 private:
  static PolyComplex from_closed(std::size_t n, std::vector<Cell> cells);

  std::size_t n_ = 0;
  std::vector<Cell> cells_;
  std::vector<Cone> cell_cones_;
  std::vector<IntVec> vertices_;
  std::vector<std::size_t> maximal_;
};

// Sigma_1: intersection with N_R x {1}. Throws NonIntegralVertex.
PolyComplex slice_height_one(const Fan& fan);
// Sigma_0: cones inside N_R x {0}, as a fan in N_R.
Fan slice_height_zero(const Fan& fan);

// c(Sigma_1): cones over cells plus the recession fan. Throws NotComplete.
Fan cone_over(const PolyComplex& complex);
// rec(Sigma_1) in N_R. Throws RecessionNotFan.
Fan recession_fan(const PolyComplex& complex);

// The star of Sigma_1 at a vertex, as a fan in N_R.
struct StarFan {
  IntVec vertex;
  Fan fan;
  // For every cone of fan.cones(), the cell of the complex it comes from.
  std::vector<std::size_t> cell_of_cone;

  std::size_t cell_of_maximal(std::size_t pos) const { return cell_of_cone[fan.maximal()[pos]]; }
};

// Throws NotAVertex.
StarFan star_fan(const PolyComplex& complex, const IntVec& vertex);

std::string to_string(const IntVec& v);
std::string to_string(const RatVec& v);

}  // namespace toricdvr
