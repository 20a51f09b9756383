#include "toricdvr/buildings.hpp"

#include <algorithm>
#include <set>

namespace toricdvr {

namespace {

Rational p_power(const ValuationConfig& cfg, long long k) { return pow(Rational(cfg.p()), k); }

bool p_integral(const Rational& q, const ValuationConfig& cfg) {
  return q.is_zero() || padic_val(q, cfg).value() >= 0;
}

// L1 within L2, both given by O-bases as columns.
bool lattice_within(const RatMatrix& g1, const RatMatrix& g2, const ValuationConfig& cfg) {
  RatMatrix c = inverse(g2) * g1;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (!p_integral(c(i, j), cfg)) return false;
  return true;
}

RatMatrix hconcat(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

ModpMatrix select_columns(const ModpMatrix& basis, const RatVec& values, const Rational& a) {
  ModpMatrix m(basis.size());
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] >= a)
      for (std::size_t i = 0; i < basis.size(); ++i) m[i].push_back(basis[i][j]);
  return m;
}

ModpMatrix concat_mod_p(const ModpMatrix& a, const ModpMatrix& b) {
  ModpMatrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i) m[i].insert(m[i].end(), b[i].begin(), b[i].end());
  return m;
}

std::size_t rank_or_zero(const ModpMatrix& m, long long p) {
  if (m.empty() || m[0].empty()) return 0;
  return rank_mod_p(m, p);
}

// Representatives of the values modulo the period m (all values when m = 0).
std::set<Rational> thresholds(const Rational& m, const RatVec& a, const RatVec& b) {
  std::set<Rational> out;
  for (const RatVec* vs : {&a, &b})
    for (const auto& v : *vs) {
      if (m.is_zero()) {
        out.insert(v);
      } else {
        Rational q = v / m;
        out.insert(v - m * Rational(q.floor()));
      }
    }
  return out;
}

Rational epsilon_from_multiplicities(const std::vector<std::pair<Rational, std::size_t>>& mult, std::size_t i) {
  RatVec expanded;
  for (const auto& [value, count] : mult)
    for (std::size_t c = 0; c < count; ++c) expanded.push_back(value);
  return elementary_symmetric(expanded, i);
}

}  // namespace

AdaptedNorm::AdaptedNorm(Rational level, RatMatrix basis, RatVec values, ValuationConfig cfg)
    : level_(std::move(level)), basis_(std::move(basis)), values_(std::move(values)), cfg_(cfg) {
  if (level_.sign() < 0) throw Error(ErrorCode::InvalidArgument, "norm level must be nonnegative");
  if (basis_.rows() != basis_.cols() || basis_.cols() != values_.size())
    throw Error(ErrorCode::ShapeMismatch, "basis and values have inconsistent sizes");
  inverse_ = inverse(basis_);
}

RatVec AdaptedNorm::coordinates(const RatVec& e) const {
  if (e.size() != rank()) throw Error(ErrorCode::ShapeMismatch, "vector length differs from the rank");
  return inverse_ * e;
}

AdaptedNorm AdaptedNorm::scaled(const Rational& k) const {
  RatVec v = values_;
  for (auto& x : v) x *= k;
  return AdaptedNorm(level_ * k, basis_, v, cfg_);
}

AdaptedNorm AdaptedNorm::shifted(const Rational& c) const {
  RatVec v = values_;
  for (auto& x : v) x += c;
  return AdaptedNorm(level_, basis_, v, cfg_);
}

NormValue norm_eval(const AdaptedNorm& w, const RatVec& e) {
  RatVec lambda = w.coordinates(e);
  NormValue best;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i].is_zero()) continue;
    Rational v = w.values()[i];
    if (!w.level().is_zero()) v += w.level() * Rational(padic_val(lambda[i], w.cfg()).value());
    if (!best || v < *best) best = v;
  }
  return best;
}

OLattice::OLattice(RatMatrix basis, IntVec exponents, ValuationConfig cfg)
    : basis_(std::move(basis)), exponents_(std::move(exponents)), cfg_(cfg) {
  if (basis_.rows() != basis_.cols() || basis_.cols() != exponents_.size())
    throw Error(ErrorCode::ShapeMismatch, "lattice basis and exponents have inconsistent sizes");
  if (determinant(basis_).is_zero()) throw Error(ErrorCode::SingularBasis, "lattice basis is singular");
}

RatMatrix OLattice::generators() const {
  RatMatrix g = basis_;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    Rational s = p_power(cfg_, exponents_[j]);
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, j) *= s;
  }
  return g;
}

bool OLattice::contains(const RatVec& e) const {
  RatVec c = solve(generators(), e);
  return std::all_of(c.begin(), c.end(), [&](const Rational& q) { return p_integral(q, cfg_); });
}

OLattice OLattice::standard(std::size_t r, ValuationConfig cfg) {
  return OLattice(RatMatrix::identity(r), IntVec(r, 0), cfg);
}

AdaptedNorm to_norm(const OLattice& lattice) {
  RatVec values;
  for (auto a : lattice.exponents()) values.push_back(Rational(-a));
  return AdaptedNorm(Rational(1), lattice.basis(), values, lattice.cfg());
}

OLattice to_lattice(const AdaptedNorm& w) {
  if (w.level() != Rational(1)) throw Error(ErrorCode::LevelMismatch, "only level-1 norms correspond to lattices");
  IntVec exponents;
  for (const auto& v : w.values()) {
    if (!v.is_integer()) throw Error(ErrorCode::NonIntegerValues, "norm value " + v.to_string() + " is not an integer");
    exponents.push_back(-static_cast<long long>(v.num()));
  }
  return OLattice(w.basis(), exponents, w.cfg());
}

bool FiltrationStep::contains(const RatVec& e) const {
  if (is_lattice) {
    RatVec c = solve(generators, e);
    return std::all_of(c.begin(), c.end(), [&](const Rational& q) { return p_integral(q, cfg); });
  }
  RatMatrix col(e.size(), 1);
  col.set_column(0, e);
  return rank(hconcat(generators, col)) == rank(generators);
}

bool operator==(const FiltrationStep& a, const FiltrationStep& b) {
  if (a.is_lattice != b.is_lattice) return false;
  if (a.is_lattice) return lattice_within(a.generators, b.generators, a.cfg) && lattice_within(b.generators, a.generators, a.cfg);
  const std::size_t ra = rank(a.generators);
  return ra == rank(b.generators) && ra == rank(hconcat(a.generators, b.generators));
}

FiltrationStep filtration_step(const AdaptedNorm& w, const Rational& a) {
  FiltrationStep step;
  step.threshold = a;
  step.cfg = w.cfg();
  const std::size_t r = w.rank();
  if (w.level().is_zero()) {
    step.is_lattice = false;
    std::vector<RatVec> cols;
    for (std::size_t i = 0; i < r; ++i)
      if (w.values()[i] >= a) cols.push_back(w.basis().column(i));
    step.generators = RatMatrix::from_columns(cols, r);
    return step;
  }
  step.is_lattice = true;
  step.generators = w.basis();
  for (std::size_t i = 0; i < r; ++i) {
    // smallest integer c with m*c + v_i >= a
    long long c = static_cast<long long>(((a - w.values()[i]) / w.level()).ceil());
    Rational s = p_power(w.cfg(), c);
    for (std::size_t row = 0; row < r; ++row) step.generators(row, i) *= s;
  }
  return step;
}

bool norms_equal(const AdaptedNorm& a, const AdaptedNorm& b) {
  if (a.level() != b.level())
    throw Error(ErrorCode::LevelMismatch,
                "levels " + a.level().to_string() + " and " + b.level().to_string() + " differ");
  if (a.rank() != b.rank()) return false;
  for (const auto& t : thresholds(a.level(), a.values(), b.values()))
    if (!(filtration_step(a, t) == filtration_step(b, t))) return false;
  return true;
}

ResidueValuation::ResidueValuation(long long p, ModpMatrix basis, RatVec values)
    : p_(p), basis_(std::move(basis)), values_(std::move(values)) {
  const std::size_t r = values_.size();
  if (basis_.size() != r) throw Error(ErrorCode::ShapeMismatch, "residue basis has wrong size");
  for (auto& row : basis_) {
    if (row.size() != r) throw Error(ErrorCode::ShapeMismatch, "residue basis has wrong size");
    for (auto& x : row) x = mod_p(x, p_);
  }
  if (r > 0 && rank_mod_p(basis_, p_) != r) throw Error(ErrorCode::SingularBasis, "residue basis is singular mod p");
}

ResidueVector ResidueValuation::basis_vector(std::size_t i) const {
  ResidueVector v;
  for (const auto& row : basis_) v.entries.push_back(row[i]);
  return v;
}

NormValue ResidueValuation::eval(const ResidueVector& e) const {
  if (e.entries.size() != rank()) throw Error(ErrorCode::ShapeMismatch, "residue vector length differs from the rank");
  auto coords = solve_mod_p(basis_, e.entries, p_);
  NormValue best;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0 && (!best || values_[i] < *best)) best = values_[i];
  return best;
}

std::size_t ResidueValuation::filtration_dim(const Rational& a) const {
  return rank_or_zero(select_columns(basis_, values_, a), p_);
}

ResidueValuation ResidueValuation::scaled(const Rational& k) const {
  RatVec v = values_;
  for (auto& x : v) x *= k;
  return ResidueValuation(p_, basis_, v);
}

ResidueValuation ResidueValuation::shifted(const Rational& c) const {
  RatVec v = values_;
  for (auto& x : v) x += c;
  return ResidueValuation(p_, basis_, v);
}

bool norms_equal(const ResidueValuation& a, const ResidueValuation& b) {
  if (a.p() != b.p() || a.rank() != b.rank()) return false;
  for (const auto& t : thresholds(Rational(0), a.values(), b.values())) {
    auto sa = select_columns(a.basis(), a.values(), t);
    auto sb = select_columns(b.basis(), b.values(), t);
    const std::size_t ra = rank_or_zero(sa, a.p());
    if (ra != rank_or_zero(sb, a.p()) || ra != rank_or_zero(concat_mod_p(sa, sb), a.p())) return false;
  }
  return true;
}

ResidueValuation link_norm(const OLattice& lattice, const AdaptedNorm& w) {
  if (w.level() != Rational(1)) throw Error(ErrorCode::LevelMismatch, "link_norm needs a level-1 norm");
  if (w.rank() != lattice.rank()) throw Error(ErrorCode::ShapeMismatch, "norm and lattice ranks differ");
  const std::size_t r = w.rank();
  const auto& cfg = lattice.cfg();
  RatMatrix rescaled = w.basis();
  RatVec fractional(r);
  for (std::size_t j = 0; j < r; ++j) {
    long long k = static_cast<long long>(w.values()[j].floor());
    fractional[j] = w.values()[j] - Rational(k);
    Rational s = p_power(cfg, -k);
    for (std::size_t i = 0; i < r; ++i) rescaled(i, j) *= s;
  }
  RatMatrix c = inverse(lattice.generators()) * rescaled;
  ModpMatrix reduced(r, std::vector<long long>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (!p_integral(c(i, j), cfg))
        throw Error(ErrorCode::NotInLink, "rescaled basis is not contained in the lattice");
      reduced[i][j] = reduce_mod_p(c(i, j), cfg);
    }
  if (rank_mod_p(reduced, cfg.p()) != r)
    throw Error(ErrorCode::NotInLink, "rescaled basis does not generate the lattice");
  return ResidueValuation(cfg.p(), reduced, fractional);
}

AdaptedNorm unlink_norm(const OLattice& lattice, const ResidueValuation& w) {
  if (w.rank() != lattice.rank()) throw Error(ErrorCode::ShapeMismatch, "valuation and lattice ranks differ");
  for (const auto& v : w.values())
    if (v.sign() < 0 || v >= Rational(1))
      throw Error(ErrorCode::ValuesOutOfRange, "value " + v.to_string() + " is outside [0, 1)");
  const std::size_t r = w.rank();
  RatMatrix lift(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) lift(i, j) = Rational(w.basis()[i][j]);
  return AdaptedNorm(Rational(1), lattice.generators() * lift, w.values(), lattice.cfg());
}

std::vector<std::pair<Rational, std::size_t>> value_multiplicities(const AdaptedNorm& w) {
  if (!w.level().is_zero()) throw Error(ErrorCode::LevelMismatch, "dimension jumps need a level-0 norm");
  std::set<Rational> distinct(w.values().begin(), w.values().end());
  std::vector<std::pair<Rational, std::size_t>> out;
  std::vector<Rational> sorted(distinct.begin(), distinct.end());
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    std::size_t here = rank(filtration_step(w, sorted[j]).generators);
    std::size_t above = j + 1 < sorted.size() ? rank(filtration_step(w, sorted[j + 1]).generators) : 0;
    if (here > above) out.emplace_back(sorted[j], here - above);
  }
  return out;
}

std::vector<std::pair<Rational, std::size_t>> value_multiplicities(const ResidueValuation& w) {
  std::set<Rational> distinct(w.values().begin(), w.values().end());
  std::vector<Rational> sorted(distinct.begin(), distinct.end());
  std::vector<std::pair<Rational, std::size_t>> out;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    std::size_t here = w.filtration_dim(sorted[j]);
    std::size_t above = j + 1 < sorted.size() ? w.filtration_dim(sorted[j + 1]) : 0;
    if (here > above) out.emplace_back(sorted[j], here - above);
  }
  return out;
}

Rational elementary_symmetric(const RatVec& xs, std::size_t i) {
  std::vector<Rational> e(i + 1);
  e[0] = 1;
  for (const auto& x : xs)
    for (std::size_t j = i; j >= 1; --j) e[j] += e[j - 1] * x;
  return e[i];
}

namespace {

template <class Norm>
Rational checked_epsilon(const Norm& w, std::size_t i) {
  if (i < 1 || i > w.rank())
    throw Error(ErrorCode::IndexOutOfRange, "epsilon index " + std::to_string(i) + " outside 1.." + std::to_string(w.rank()));
  Rational by_jumps = epsilon_from_multiplicities(value_multiplicities(w), i);
  Rational by_values = elementary_symmetric(w.values(), i);
  if (by_jumps != by_values)
    throw Error(ErrorCode::InternalError, "dimension-jump epsilon " + by_jumps.to_string() +
                                              " disagrees with adapted value " + by_values.to_string());
  return by_jumps;
}

}  // namespace

Rational epsilon(const AdaptedNorm& w, std::size_t i) { return checked_epsilon(w, i); }
Rational epsilon(const ResidueValuation& w, std::size_t i) { return checked_epsilon(w, i); }

}  // namespace toricdvr
