#include "toricdvr/ppoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace toricdvr {

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly f(nvars);
  f.add_term(IntVec(nvars, 0), c);
  return f;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw Error(ErrorCode::ArityMismatch, "variable index out of range");
  IntVec e(nvars, 0);
  e[i] = 1;
  Poly f(nvars);
  f.add_term(e, Rational(1));
  return f;
}

Poly Poly::linear(const RatVec& coeffs) {
  Poly f(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    IntVec e(coeffs.size(), 0);
    e[i] = 1;
    f.add_term(e, coeffs[i]);
  }
  return f;
}

Poly Poly::linear(const IntVec& coeffs) { return linear(to_rational(coeffs)); }

Rational Poly::coefficient(const IntVec& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const IntVec& exps, const Rational& c) {
  if (exps.size() != nvars_) throw Error(ErrorCode::ArityMismatch, "exponent vector has wrong length");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Poly::is_homogeneous(std::size_t degree) const {
  for (const auto& [e, c] : terms_)
    if (static_cast<std::size_t>(std::accumulate(e.begin(), e.end(), 0LL)) != degree) return false;
  return true;
}

std::size_t Poly::degree() const {
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<std::size_t>(std::accumulate(e.begin(), e.end(), 0LL)));
  return d;
}

Rational Poly::eval(const RatVec& x) const {
  if (x.size() != nvars_) throw Error(ErrorCode::ArityMismatch, "point has wrong number of coordinates");
  Rational s;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) m *= toricdvr::pow(x[i], e[i]);
    s += m;
  }
  return s;
}

Poly Poly::compose(const std::vector<Poly>& subs) const {
  if (subs.size() != nvars_) throw Error(ErrorCode::ArityMismatch, "need one substitute per variable");
  const std::size_t m = subs.empty() ? 0 : subs[0].nvars();
  for (const auto& s : subs)
    if (s.nvars() != m) throw Error(ErrorCode::ArityMismatch, "substitutes have different arities");
  Poly out(m);
  for (const auto& [e, c] : terms_) {
    Poly term = constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) term *= subs[i].pow(static_cast<std::size_t>(e[i]));
    out += term;
  }
  return out;
}

Poly Poly::compose_linear(const std::vector<Poly>& subs) const {
  for (const auto& s : subs)
    if (!s.is_homogeneous(1) && !s.is_zero()) throw Error(ErrorCode::ArityMismatch, "substitute is not a linear form");
  return compose(subs);
}

Poly Poly::pow(std::size_t e) const {
  Poly result = constant(nvars_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

void Poly::check_arity(const Poly& o) const {
  if (o.nvars_ != nvars_)
    throw Error(ErrorCode::ArityMismatch,
                "polynomials in " + std::to_string(nvars_) + " and " + std::to_string(o.nvars_) + " variables");
}

Poly& Poly::operator+=(const Poly& o) {
  check_arity(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_arity(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  check_arity(o);
  Poly out(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      IntVec e(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  terms_ = std::move(out.terms_);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coeff = mag.is_integer() ? mag.num().str() : mag.num().str() + "/" + mag.den().str();
    if (mono.empty())
      os << coeff;
    else if (mag == Rational(1))
      os << mono;
    else
      os << coeff << "*" << mono;
  }
  return os.str();
}

Poly elementary_symmetric(const std::vector<Poly>& forms, std::size_t i, std::size_t nvars) {
  std::vector<Poly> e(i + 1, Poly(nvars));
  e[0] = Poly::constant(nvars, Rational(1));
  for (const auto& f : forms)
    for (std::size_t j = i; j >= 1; --j) e[j] += e[j - 1] * f;
  return e[i];
}

Rational PiecewisePoly::eval(const RatVec& x) const {
  auto pos = fan.maximal_containing(x);
  if (pos.empty()) throw Error(ErrorCode::OutsideSupport, to_string(x) + " is outside the fan");
  return pieces[pos.front()].eval(x);
}

std::vector<IntVec> span_basis(const Cone& c) {
  std::vector<IntVec> basis;
  std::vector<RatVec> rows;
  for (const auto& r : c.rays()) {
    rows.push_back(to_rational(r));
    if (rank(RatMatrix::from_rows(rows, c.ambient_dim())) == rows.size())
      basis.push_back(r);
    else
      rows.pop_back();
  }
  return basis;
}

Poly restrict_to_basis(const Poly& f, const std::vector<IntVec>& basis) {
  const std::size_t k = basis.size();
  std::vector<Poly> subs;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    RatVec coeffs(k);
    for (std::size_t j = 0; j < k; ++j) coeffs[j] = Rational(basis[j].at(i));
    subs.push_back(k == 0 ? Poly(0) : Poly::linear(coeffs));
  }
  return f.compose_linear(subs);
}

Poly restrict_to_span(const Poly& f, const Cone& c) { return restrict_to_basis(f, span_basis(c)); }

ContinuityReport continuity_check(const PiecewisePoly& f) {
  ContinuityReport report;
  const Fan& fan = f.fan;
  if (f.pieces.size() != fan.maximal().size())
    throw Error(ErrorCode::ShapeMismatch, "piecewise polynomial needs one piece per maximal cone");
  for (std::size_t a = 0; a < f.pieces.size(); ++a)
    for (std::size_t b = a + 1; b < f.pieces.size(); ++b) {
      const Cone& face = fan.cones()[fan.common_face(a, b)];
      auto basis = span_basis(face);
      Poly diff = restrict_to_basis(f.pieces[a], basis) - restrict_to_basis(f.pieces[b], basis);
      if (!diff.is_zero()) {
        report.ok = false;
        report.failures.push_back("face " + face.to_string() + " between maximal cones " + std::to_string(a) + " and " +
                                  std::to_string(b) + ": difference " + diff.to_string());
      }
    }
  return report;
}

namespace {

Cone star_cone_of_cell(const Cell& cell, const IntVec& vertex) {
  std::vector<IntVec> g;
  for (const auto& w : cell.vertices) {
    if (w == vertex) continue;
    IntVec d(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) d[i] = w[i] - vertex[i];
    g.push_back(d);
  }
  for (const auto& r : cell.rays) g.push_back(r);
  return Cone::from_generators(vertex.size(), g);
}

// The piece of `part` on the star cone c together with whether c is maximal.
const Poly& piece_covering(const PiecewisePoly& part, const Cone& c, bool& maximal) {
  if (auto pos = part.fan.maximal_position(c)) {
    maximal = true;
    return part.pieces[*pos];
  }
  maximal = false;
  for (std::size_t pos = 0; pos < part.fan.maximal().size(); ++pos)
    if (part.fan.maximal_cone(pos).has_face(c)) return part.pieces[pos];
  throw Error(ErrorCode::InternalError, "star cone " + c.to_string() + " is not in the star fan");
}

}  // namespace

PPClass pp_membership(const PolyComplex& complex, std::vector<PiecewisePoly> candidate) {
  const auto& vertices = complex.vertices();
  if (candidate.size() != vertices.size())
    throw Error(ErrorCode::InvalidArgument, "need one piecewise polynomial per vertex; got " +
                                                std::to_string(candidate.size()) + " for " +
                                                std::to_string(vertices.size()) + " vertices");
  PPClass out;
  out.complex_ = complex;
  out.degree_ = candidate.empty() ? 0 : candidate[0].degree;
  const std::size_t n = complex.n();

  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const std::string where = "vertex " + to_string(vertices[v]);
    StarFan star = star_fan(complex, vertices[v]);
    PiecewisePoly& part = candidate[v];
    if (!(part.fan == star.fan)) throw Error(ErrorCode::InvalidArgument, where + ": part is not on the star fan");
    if (part.degree != out.degree_)
      throw Error(ErrorCode::ConditionIFailed, where + ": degree " + std::to_string(part.degree) + " differs from " +
                                                   std::to_string(out.degree_));
    if (part.pieces.size() != star.fan.maximal().size())
      throw Error(ErrorCode::ConditionIFailed, where + ": wrong number of pieces");
    for (std::size_t pos = 0; pos < part.pieces.size(); ++pos) {
      const Poly& f = part.pieces[pos];
      if (f.nvars() != n) throw Error(ErrorCode::ArityMismatch, where + ": piece in wrong number of variables");
      if (!f.is_homogeneous(out.degree_))
        throw Error(ErrorCode::ConditionIFailed, where + ", cone " + star.fan.maximal_cone(pos).to_string() + ": " +
                                                     f.to_string() + " is not homogeneous of degree " +
                                                     std::to_string(out.degree_));
    }
    auto report = continuity_check(part);
    if (!report.ok) throw Error(ErrorCode::ConditionIFailed, where + ", " + report.failures.front());
    out.stars_.push_back(std::move(star));
  }

  for (const auto& cell : complex.cells()) {
    if (cell.vertices.size() < 2) continue;
    for (std::size_t a = 0; a < cell.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < cell.vertices.size(); ++b) {
        const IntVec& va = cell.vertices[a];
        const IntVec& vb = cell.vertices[b];
        Cone ca = star_cone_of_cell(cell, va);
        Cone cb = star_cone_of_cell(cell, vb);
        bool max_a = false, max_b = false;
        const Poly& fa = piece_covering(candidate[*complex.vertex_index(va)], ca, max_a);
        const Poly& fb = piece_covering(candidate[*complex.vertex_index(vb)], cb, max_b);
        bool same = false;
        if (max_a && max_b) {
          same = fa == fb;
        } else {
          auto basis = span_basis(ca);
          same = restrict_to_basis(fa, basis) == restrict_to_basis(fb, basis);
        }
        if (!same)
          throw Error(ErrorCode::ConditionIIFailed, "cell " + cell.to_string() + ", vertices " + to_string(va) +
                                                        " and " + to_string(vb) + ": " + fa.to_string() + " vs " +
                                                        fb.to_string());
      }
  }
  out.parts_ = std::move(candidate);
  return out;
}

PPClass PPClass::zero(const PolyComplex& complex, std::size_t degree) {
  std::vector<PiecewisePoly> parts;
  for (const auto& v : complex.vertices()) {
    StarFan star = star_fan(complex, v);
    std::vector<Poly> pieces(star.fan.maximal().size(), Poly(complex.n()));
    parts.push_back(PiecewisePoly{star.fan, std::move(pieces), degree});
  }
  return pp_membership(complex, std::move(parts));
}

PPClass PPClass::unit(const PolyComplex& complex) {
  std::vector<PiecewisePoly> parts;
  for (const auto& v : complex.vertices()) {
    StarFan star = star_fan(complex, v);
    std::vector<Poly> pieces(star.fan.maximal().size(), Poly::constant(complex.n(), Rational(1)));
    parts.push_back(PiecewisePoly{star.fan, std::move(pieces), 0});
  }
  return pp_membership(complex, std::move(parts));
}

namespace {

template <class Op>
PPClass combine(const PPClass& a, const PPClass& b, std::size_t degree, Op op) {
  if (!(a.complex() == b.complex())) throw Error(ErrorCode::ComplexMismatch, "classes live on different complexes");
  std::vector<PiecewisePoly> parts;
  for (std::size_t v = 0; v < a.parts().size(); ++v) {
    PiecewisePoly part{a.parts()[v].fan, {}, degree};
    for (std::size_t pos = 0; pos < a.parts()[v].pieces.size(); ++pos)
      part.pieces.push_back(op(a.piece(v, pos), b.piece(v, pos)));
    parts.push_back(std::move(part));
  }
  return pp_membership(a.complex(), std::move(parts));
}

}  // namespace

PPClass pp_add(const PPClass& a, const PPClass& b) {
  if (a.degree() != b.degree())
    throw Error(ErrorCode::InvalidArgument, "cannot add classes of degrees " + std::to_string(a.degree()) + " and " +
                                                std::to_string(b.degree()));
  return combine(a, b, a.degree(), [](const Poly& x, const Poly& y) { return x + y; });
}

PPClass pp_mul(const PPClass& a, const PPClass& b) {
  return combine(a, b, a.degree() + b.degree(), [](const Poly& x, const Poly& y) { return x * y; });
}

GradedClass::GradedClass(std::vector<PPClass> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "graded class needs a degree-0 component");
  for (std::size_t d = 0; d < components_.size(); ++d) {
    if (components_[d].degree() != d) throw Error(ErrorCode::InvalidArgument, "graded component has wrong degree");
    if (!(components_[d].complex() == components_[0].complex()))
      throw Error(ErrorCode::ComplexMismatch, "graded components live on different complexes");
  }
}

GradedClass GradedClass::one(const PolyComplex& complex) { return GradedClass({PPClass::unit(complex)}); }

GradedClass GradedClass::normalized() const {
  std::vector<PPClass> c = components_;
  while (c.size() > 1 && c.back() == PPClass::zero(c.back().complex(), c.back().degree())) c.pop_back();
  return GradedClass(std::move(c));
}

GradedClass operator+(const GradedClass& a, const GradedClass& b) {
  const auto& complex = a.components_[0].complex();
  std::vector<PPClass> c;
  for (std::size_t d = 0; d < std::max(a.components_.size(), b.components_.size()); ++d) {
    PPClass x = d < a.components_.size() ? a.components_[d] : PPClass::zero(complex, d);
    PPClass y = d < b.components_.size() ? b.components_[d] : PPClass::zero(complex, d);
    c.push_back(pp_add(x, y));
  }
  return GradedClass(std::move(c));
}

GradedClass operator*(const GradedClass& a, const GradedClass& b) {
  const auto& complex = a.components_[0].complex();
  const std::size_t top = a.components_.size() + b.components_.size() - 1;
  std::vector<PPClass> c;
  for (std::size_t d = 0; d < top; ++d) c.push_back(PPClass::zero(complex, d));
  for (std::size_t i = 0; i < a.components_.size(); ++i)
    for (std::size_t j = 0; j < b.components_.size(); ++j)
      c[i + j] = pp_add(c[i + j], pp_mul(a.components_[i], b.components_[j]));
  return GradedClass(std::move(c));
}

bool operator==(const GradedClass& a, const GradedClass& b) {
  return a.normalized().components_ == b.normalized().components_;
}

}  // namespace toricdvr
