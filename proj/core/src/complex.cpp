#include <algorithm>
#include <set>
#include <sstream>

#include "toricdvr/polyhedral.hpp"

namespace toricdvr {

namespace {

IntVec lift(const IntVec& v, long long height) {
  IntVec out(v);
  out.push_back(height);
  return out;
}

IntVec drop_height(const IntVec& v) { return IntVec(v.begin(), v.end() - 1); }

bool touches_height_one(const Cone& c) {
  return std::any_of(c.rays().begin(), c.rays().end(), [](const IntVec& r) { return r.back() > 0; });
}

// Reads the cell cone(c) ∩ (N_R x {1}) off the rays of a cone in N_R x R_{>=0}.
Cell cell_of_cone(const Cone& c) {
  Cell cell;
  for (const auto& r : c.rays()) {
    if (r.back() == 0) {
      cell.rays.push_back(drop_height(r));
      continue;
    }
    const long long h = r.back();
    IntVec v;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      if (r[i] % h != 0)
        throw Error(ErrorCode::NonIntegralVertex,
                    "ray " + to_string(r) + " of " + c.to_string() + " meets height one off the lattice");
      v.push_back(r[i] / h);
    }
    cell.vertices.push_back(std::move(v));
  }
  std::sort(cell.vertices.begin(), cell.vertices.end());
  std::sort(cell.rays.begin(), cell.rays.end());
  cell.dim = c.dim() - 1;
  return cell;
}

}  // namespace

Cell Cell::make(std::size_t n, const std::vector<IntVec>& vertices, const std::vector<IntVec>& rays) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "a cell needs at least one vertex");
  std::vector<IntVec> gens;
  for (const auto& v : vertices) {
    if (v.size() != n) throw Error(ErrorCode::ShapeMismatch, "vertex " + toricdvr::to_string(v) + " has wrong length");
    gens.push_back(lift(v, 1));
  }
  for (const auto& r : rays) {
    if (r.size() != n) throw Error(ErrorCode::ShapeMismatch, "ray " + toricdvr::to_string(r) + " has wrong length");
    gens.push_back(lift(r, 0));
  }
  return cell_of_cone(Cone::from_generators(n + 1, gens));
}

bool Cell::has_vertex(const IntVec& v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

Cone Cell::cone(std::size_t n) const {
  std::vector<IntVec> gens;
  for (const auto& v : vertices) gens.push_back(lift(v, 1));
  for (const auto& r : rays) gens.push_back(lift(r, 0));
  return Cone::from_generators(n + 1, gens);
}

RatVec Cell::barycenter() const {
  RatVec b(vertices.empty() ? 0 : vertices[0].size());
  for (const auto& v : vertices)
    for (std::size_t i = 0; i < v.size(); ++i) b[i] += Rational(v[i]);
  for (auto& x : b) x /= Rational(static_cast<long long>(vertices.size()));
  return b;
}

std::string Cell::to_string() const {
  std::ostringstream os;
  os << "conv(";
  for (std::size_t i = 0; i < vertices.size(); ++i) os << (i ? "," : "") << toricdvr::to_string(vertices[i]);
  os << ")";
  if (!rays.empty()) {
    os << "+cone(";
    for (std::size_t i = 0; i < rays.size(); ++i) os << (i ? "," : "") << toricdvr::to_string(rays[i]);
    os << ")";
  }
  return os.str();
}

PolyComplex PolyComplex::from_closed(std::size_t n, std::vector<Cell> cells) {
  PolyComplex pc;
  pc.n_ = n;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  pc.cells_ = std::move(cells);
  for (const auto& c : pc.cells_) {
    pc.cell_cones_.push_back(c.cone(n));
    if (c.dim == 0) pc.vertices_.push_back(c.vertices.front());
  }
  std::sort(pc.vertices_.begin(), pc.vertices_.end());
  for (std::size_t a = 0; a < pc.cells_.size(); ++a) {
    bool is_max = true;
    for (std::size_t b = 0; b < pc.cells_.size() && is_max; ++b)
      if (pc.cells_[b].dim > pc.cells_[a].dim && pc.cell_cones_[b].has_face(pc.cell_cones_[a])) is_max = false;
    if (is_max) pc.maximal_.push_back(a);
  }
  return pc;
}

PolyComplex PolyComplex::from_cells(std::size_t n, const std::vector<Cell>& cells) {
  std::vector<Cell> closed;
  for (const auto& c : cells)
    for (const auto& f : c.cone(n).faces())
      if (touches_height_one(f)) closed.push_back(cell_of_cone(f));
  return from_closed(n, std::move(closed));
}

std::optional<std::size_t> PolyComplex::vertex_index(const IntVec& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<std::size_t> PolyComplex::cells_containing(const IntVec& v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].has_vertex(v)) out.push_back(i);
  return out;
}

std::optional<std::size_t> PolyComplex::cell_index(const Cell& c) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
  if (it == cells_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - cells_.begin());
}

bool PolyComplex::is_face(std::size_t face, std::size_t cell) const {
  return cell_cones_.at(cell).has_face(cell_cones_.at(face));
}

PolyComplex slice_height_one(const Fan& fan) {
  const std::size_t n = fan.ambient_dim() - 1;
  std::vector<Cell> cells;
  for (const auto& c : fan.cones())
    if (touches_height_one(c)) cells.push_back(cell_of_cone(c));
  for (const auto& c : cells)
    for (const auto& v : c.vertices)
      if (v.size() != n) throw Error(ErrorCode::InternalError, "cell vertex of wrong length");
  return PolyComplex::from_cells(n, cells);
}

Fan slice_height_zero(const Fan& fan) {
  const std::size_t n = fan.ambient_dim() - 1;
  std::vector<Cone> cones;
  for (const auto& c : fan.cones()) {
    if (touches_height_one(c)) continue;
    std::vector<IntVec> g;
    for (const auto& r : c.rays()) g.push_back(drop_height(r));
    cones.push_back(Cone::from_generators(n, g));
  }
  return Fan::from_cones(n, cones);
}

Fan recession_fan(const PolyComplex& complex) {
  std::vector<Cone> cones;
  for (const auto& c : complex.cells()) cones.push_back(Cone::from_generators(complex.n(), c.rays));
  try {
    return Fan::from_cones(complex.n(), cones);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAFan) throw Error(ErrorCode::RecessionNotFan, e.what());
    throw;
  }
}

Fan cone_over(const PolyComplex& complex) {
  const std::size_t n = complex.n();
  std::vector<std::vector<IntVec>> gens;
  for (const auto& c : complex.cells()) {
    std::vector<IntVec> g;
    for (const auto& v : c.vertices) g.push_back(lift(v, 1));
    for (const auto& r : c.rays) g.push_back(lift(r, 0));
    gens.push_back(std::move(g));
  }
  const Fan rec = recession_fan(complex);
  for (const auto& c : rec.cones()) {
    std::vector<IntVec> g;
    for (const auto& r : c.rays()) g.push_back(lift(r, 0));
    gens.push_back(std::move(g));
  }
  Fan fan = build_fan(n, gens);
  auto report = check_regular_complete(fan, FanSupport::HalfSpace);
  if (!report.complete)
    throw Error(ErrorCode::NotComplete,
                "polyhedral complex does not cover N_R" +
                    (report.failures.empty() ? std::string() : " (" + report.failures.front() + ")"));
  return fan;
}

StarFan star_fan(const PolyComplex& complex, const IntVec& vertex) {
  if (!complex.vertex_index(vertex))
    throw Error(ErrorCode::NotAVertex, to_string(vertex) + " is not a vertex of the complex");
  const std::size_t n = complex.n();
  auto containing = complex.cells_containing(vertex);
  std::vector<Cone> cones;
  for (auto ci : containing) {
    const Cell& cell = complex.cells()[ci];
    std::vector<IntVec> g;
    for (const auto& w : cell.vertices) {
      if (w == vertex) continue;
      IntVec d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = w[i] - vertex[i];
      g.push_back(d);
    }
    for (const auto& r : cell.rays) g.push_back(r);
    cones.push_back(Cone::from_generators(n, g));
  }
  StarFan star;
  star.vertex = vertex;
  star.fan = Fan::from_cones(n, cones);
  star.cell_of_cone.assign(star.fan.cones().size(), 0);
  for (std::size_t k = 0; k < cones.size(); ++k) star.cell_of_cone[*star.fan.index_of(cones[k])] = containing[k];
  return star;
}

}  // namespace toricdvr
