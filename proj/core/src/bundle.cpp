#include "toricdvr/bundle.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace toricdvr {

Rational Character::eval(const RatVec& x) const {
  if (x.size() != u.size() + 1) throw Error(ErrorCode::ShapeMismatch, "point has wrong length for a character");
  Rational s = dot(std::span<const long long>(u), std::span<const Rational>(x.data(), u.size()));
  if (k != 0) s += Rational(k) * x.back();
  return s;
}

ToricBundleData::ToricBundleData(Fan fan, std::size_t rank, std::vector<BundleChart> charts, ValuationConfig cfg)
    : fan_(std::move(fan)), rank_(rank), cfg_(cfg) {
  if (fan_.ambient_dim() == 0) throw Error(ErrorCode::ShapeMismatch, "fan must live in N_R x R");
  if (rank_ == 0) throw Error(ErrorCode::InvalidArgument, "bundle rank must be positive");
  const std::size_t count = fan_.maximal().size();
  charts_.resize(count);
  std::vector<bool> seen(count, false);
  for (auto& c : charts) {
    if (c.cone >= count)
      throw Error(ErrorCode::InvalidArgument, "chart refers to maximal cone " + std::to_string(c.cone) + " of " +
                                                  std::to_string(count));
    if (seen[c.cone]) throw Error(ErrorCode::InvalidArgument, "two charts on maximal cone " + std::to_string(c.cone));
    if (c.basis.rows() != rank_ || c.basis.cols() != rank_)
      throw Error(ErrorCode::ShapeMismatch, "chart basis is not " + std::to_string(rank_) + "x" + std::to_string(rank_));
    if (c.characters.size() != rank_)
      throw Error(ErrorCode::ShapeMismatch, "chart has " + std::to_string(c.characters.size()) + " characters");
    for (const auto& ch : c.characters)
      if (ch.u.size() != n()) throw Error(ErrorCode::ShapeMismatch, "character of wrong length");
    if (determinant(c.basis).is_zero())
      throw Error(ErrorCode::SingularBasis, "chart basis on maximal cone " + std::to_string(c.cone) + " is singular");
    seen[c.cone] = true;
    charts_[c.cone] = std::move(c);
  }
  for (std::size_t pos = 0; pos < count; ++pos)
    if (!seen[pos]) throw Error(ErrorCode::InvalidArgument, "no chart on maximal cone " + std::to_string(pos));
  complex_ = slice_height_one(fan_);
  generic_ = slice_height_zero(fan_);
}

std::size_t ToricBundleData::chart_for_cell(const Cell& cell) const {
  Cone c = cell.cone(n());
  if (auto pos = fan_.maximal_position(c)) return *pos;
  for (std::size_t pos = 0; pos < fan_.maximal().size(); ++pos)
    if (fan_.maximal_cone(pos).contains_cone(c)) return pos;
  throw Error(ErrorCode::NoCoveringCone, "no maximal cone contains the cone over " + cell.to_string());
}

AdaptedNorm ToricBundleData::eval_chart(std::size_t pos, const RatVec& x) const {
  const BundleChart& c = charts_.at(pos);
  RatVec values;
  values.reserve(rank_);
  for (const auto& ch : c.characters) values.push_back(ch.eval(x));
  return AdaptedNorm(x.back(), c.basis, values, cfg_);
}

AdaptedNorm eval_phi(const ToricBundleData& e, const RatVec& x) {
  if (x.size() != e.n() + 1) throw Error(ErrorCode::ShapeMismatch, "point must have length n+1");
  auto pos = e.fan().maximal_containing(x);
  if (pos.empty()) throw Error(ErrorCode::OutsideSupport, to_string(x) + " is outside the support of the fan");
  return e.eval_chart(pos.front(), x);
}

namespace {

void face_test_points(const Cone& face, std::mt19937_64& rng, std::size_t density, std::set<RatVec>& out) {
  std::vector<RatVec> vertices;
  std::vector<RatVec> rays;
  for (const auto& r : face.rays()) {
    if (r.back() > 0) {
      RatVec v = to_rational(r);
      Rational h(r.back());
      for (auto& c : v) c /= h;
      vertices.push_back(v);
    } else {
      rays.push_back(to_rational(r));
    }
  }
  for (const auto& v : vertices) out.insert(v);
  for (const auto& v : vertices)
    for (const auto& rho : rays) {
      RatVec a = v, b = v;
      for (std::size_t i = 0; i < v.size(); ++i) {
        a[i] += rho[i];
        b[i] += Rational(2) * rho[i];
      }
      out.insert(a);
      out.insert(b);
    }
  if (rays.empty() && !vertices.empty()) {
    RatVec bar(vertices[0].size());
    for (const auto& v : vertices)
      for (std::size_t i = 0; i < v.size(); ++i) bar[i] += v[i];
    for (auto& c : bar) c /= Rational(static_cast<long long>(vertices.size()));
    out.insert(bar);
  }
  for (const auto& rho : rays) out.insert(rho);
  const auto& gens = face.rays();
  for (std::size_t s = 0; s < density; ++s) {
    RatVec x(face.ambient_dim());
    bool nonzero = false;
    for (const auto& g : gens) {
      long long c = static_cast<long long>(rng() % 4);
      if (c == 0) continue;
      nonzero = true;
      for (std::size_t i = 0; i < g.size(); ++i) x[i] += Rational(c * g[i]);
    }
    if (nonzero) out.insert(x);
  }
}

}  // namespace

BundleReport validate_bundle(const ToricBundleData& e, std::uint64_t seed, std::size_t density) {
  BundleReport report;
  const Fan& fan = e.fan();
  const std::size_t count = fan.maximal().size();
  std::set<RatVec> all;
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      const Cone& face = fan.cones()[fan.common_face(a, b)];
      if (face.rays().empty()) continue;
      std::mt19937_64 rng(seed * 1000003ULL + a * 1009ULL + b);
      std::set<RatVec> points;
      face_test_points(face, rng, density, points);
      for (const auto& x : points) {
        all.insert(x);
        if (!norms_equal(e.eval_chart(a, x), e.eval_chart(b, x))) {
          report.ok = false;
          report.failures.push_back("face " + face.to_string() + " at " + to_string(x) + ": charts on maximal cones " +
                                    std::to_string(a) + " and " + std::to_string(b) + " disagree");
        }
      }
    }
  report.samples.assign(all.begin(), all.end());
  return report;
}

ResidueValuation VertexRestriction::eval(const RatVec& y) const {
  if (y.size() != vertex.size()) throw Error(ErrorCode::ShapeMismatch, "point has wrong length");
  auto pos = star.fan.maximal_containing(y);
  if (pos.empty()) throw Error(ErrorCode::OutsideStar, to_string(y) + " is outside the star of " + to_string(vertex));
  const StarChart& c = charts[pos.front()];
  RatVec values;
  for (const auto& u : c.u) values.push_back(dot(std::span<const long long>(u), std::span<const Rational>(y)));
  return ResidueValuation(lattice.cfg().p(), c.basis, values);
}

VertexRestriction restrict_to_vertex(const ToricBundleData& e, const IntVec& vertex) {
  const PolyComplex& complex = e.complex();
  if (vertex.size() != e.n() || !complex.vertex_index(vertex))
    throw Error(ErrorCode::NotAVertex, to_string(vertex) + " is not a vertex of the height-one complex");
  const std::size_t r = e.rank();
  const auto& cfg = e.cfg();

  RatVec x = to_rational(vertex);
  x.push_back(Rational(1));
  VertexRestriction out;
  out.vertex = vertex;
  out.lattice = to_lattice(eval_phi(e, x));
  out.star = star_fan(complex, vertex);
  RatMatrix g_inv = inverse(out.lattice.generators());

  for (std::size_t pos = 0; pos < out.star.fan.maximal().size(); ++pos) {
    const std::size_t cell = out.star.cell_of_maximal(pos);
    const BundleChart& chart = e.chart(e.chart_for_cell(complex.cells()[cell]));
    RatMatrix rescaled = chart.basis;
    StarChart sc;
    sc.cell = cell;
    for (std::size_t j = 0; j < r; ++j) {
      Rational w = chart.characters[j].eval(x);
      Rational s = pow(Rational(cfg.p()), -static_cast<long long>(w.num()));
      for (std::size_t i = 0; i < r; ++i) rescaled(i, j) *= s;
      sc.u.push_back(chart.characters[j].u);
    }
    RatMatrix c = g_inv * rescaled;
    sc.basis.assign(r, std::vector<long long>(r));
    try {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sc.basis[i][j] = reduce_mod_p(c(i, j), cfg);
    } catch (const Error&) {
      throw Error(ErrorCode::InternalError, "rescaled chart basis is not inside the vertex lattice");
    }
    if (rank_mod_p(sc.basis, cfg.p()) != r)
      throw Error(ErrorCode::InternalError, "rescaled chart basis does not reduce to a basis mod p");
    out.charts.push_back(std::move(sc));
  }
  return out;
}

AdaptedNorm GenericRestriction::eval(const RatVec& x, const ValuationConfig& cfg) const {
  auto pos = fan.maximal_containing(x);
  if (pos.empty()) throw Error(ErrorCode::OutsideSupport, to_string(x) + " is outside the generic fan");
  const GenericChart& c = charts[pos.front()];
  RatVec values;
  for (const auto& u : c.u) values.push_back(dot(std::span<const long long>(u), std::span<const Rational>(x)));
  return AdaptedNorm(Rational(0), c.basis, values, cfg);
}

GenericRestriction restrict_to_generic(const ToricBundleData& e) {
  GenericRestriction out;
  out.fan = e.generic_fan();
  const Fan& fan = e.fan();
  for (std::size_t q = 0; q < out.fan.maximal().size(); ++q) {
    std::vector<IntVec> lifted;
    for (const auto& r : out.fan.maximal_cone(q).rays()) {
      IntVec l = r;
      l.push_back(0);
      lifted.push_back(std::move(l));
    }
    Cone target = Cone::from_generators(fan.ambient_dim(), lifted);
    std::optional<std::size_t> found;
    for (std::size_t pos = 0; pos < fan.maximal().size() && !found; ++pos)
      if (fan.maximal_cone(pos).contains_cone(target)) found = pos;
    if (!found)
      throw Error(ErrorCode::NoCoveringCone, "no maximal cone covers " + out.fan.maximal_cone(q).to_string());
    GenericChart gc;
    gc.source = *found;
    gc.basis = e.chart(*found).basis;
    for (const auto& ch : e.chart(*found).characters) gc.u.push_back(ch.u);
    out.charts.push_back(std::move(gc));
  }
  return out;
}

MorphismReport check_morphism(const ToricBundleData& source, const ToricBundleData& target, const RatMatrix& f) {
  if (f.rows() != target.rank() || f.cols() != source.rank())
    throw Error(ErrorCode::ShapeMismatch, "morphism matrix must be " + std::to_string(target.rank()) + "x" +
                                              std::to_string(source.rank()));
  if (!(source.fan() == target.fan())) throw Error(ErrorCode::ShapeMismatch, "bundles live on different fans");
  MorphismReport report;
  const auto& cfg = source.cfg();
  for (std::size_t pos = 0; pos < source.fan().maximal().size(); ++pos) {
    const Cone& sigma = source.fan().maximal_cone(pos);
    const BundleChart& a = source.chart(pos);
    const BundleChart& b = target.chart(*target.fan().maximal_position(sigma));
    RatMatrix b_inv = inverse(b.basis);
    for (std::size_t i = 0; i < source.rank(); ++i) {
      RatVec c = b_inv * (f * a.basis.column(i));
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j].is_zero()) continue;
        Character branch = b.characters[j];
        branch.k += padic_val(c[j], cfg).value();
        for (const auto& ray : sigma.rays()) {
          RatVec x = to_rational(ray);
          if (branch.eval(x) < a.characters[i].eval(x)) {
            report.ok = false;
            report.failures.push_back("cone " + sigma.to_string() + ", source basis vector " + std::to_string(i) +
                                      ", target branch " + std::to_string(j) + " drops below at ray " + to_string(ray));
          }
        }
      }
    }
  }
  return report;
}

std::vector<ToricBundleData> line_summands(const ToricBundleData& e) {
  const std::size_t r = e.rank();
  std::vector<std::vector<BundleChart>> charts(r);
  for (std::size_t pos = 0; pos < e.charts().size(); ++pos) {
    const BundleChart& c = e.chart(pos);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (i != j && !c.basis(i, j).is_zero())
          throw Error(ErrorCode::InvalidArgument, "chart on maximal cone " + std::to_string(pos) + " is not diagonal");
    for (std::size_t j = 0; j < r; ++j) {
      BundleChart l;
      l.cone = pos;
      l.basis = RatMatrix(1, 1);
      l.basis(0, 0) = c.basis(j, j);
      l.characters = {c.characters[j]};
      charts[j].push_back(std::move(l));
    }
  }
  std::vector<ToricBundleData> out;
  for (std::size_t j = 0; j < r; ++j) out.emplace_back(e.fan(), 1, charts[j], e.cfg());
  return out;
}

}  // namespace toricdvr
