#include <doctest.h>

#include <random>

#include "toricdvr/toricdvr.hpp"

using namespace toricdvr;

namespace {

Rational q(long long a, long long b = 1) { return Rational(Integer(a), Integer(b)); }

RatMatrix cols(const std::vector<RatVec>& c) { return RatMatrix::from_columns(c, c.front().size()); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

// Brute-force test set {p^j v : v in {-2..2}^r, j in {-1,0,1}}.
std::vector<RatVec> probe_set(std::size_t r, long long p) {
  std::vector<RatVec> out;
  std::vector<long long> v(r, -2);
  while (true) {
    for (long long j = -1; j <= 1; ++j) {
      RatVec e(r);
      for (std::size_t i = 0; i < r; ++i) e[i] = pow(Rational(p), j) * Rational(v[i]);
      out.push_back(e);
    }
    std::size_t k = 0;
    while (k < r && v[k] == 2) v[k++] = -2;
    if (k == r) break;
    ++v[k];
  }
  return out;
}

bool pointwise_equal(const AdaptedNorm& a, const AdaptedNorm& b) {
  for (const auto& e : probe_set(a.rank(), a.cfg().p()))
    if (norm_eval(a, e) != norm_eval(b, e)) return false;
  return true;
}

}  // namespace

TEST_SUITE("buildings") {

TEST_CASE("norm_eval examples") {
  AdaptedNorm w(1, RatMatrix::identity(2), {0, 0});
  CHECK(norm_eval(w, {4, 6}) == NormValue(Rational(1)));
  CHECK_FALSE(norm_eval(w, {0, 0}).has_value());
  AdaptedNorm v(0, RatMatrix::identity(2), {0, 0});
  CHECK(norm_eval(v, {4, 6}) == NormValue(Rational(0)));
  AdaptedNorm skew(1, cols({{1, 0}, {1, 1}}), {q(1, 2), 0});
  CHECK(norm_eval(skew, {1, 0}) == NormValue(q(1, 2)));
  CHECK(norm_eval(skew, {2, 2}) == NormValue(Rational(1)));
}

TEST_CASE("norm_eval scales and shifts") {
  AdaptedNorm w(1, RatMatrix::identity(2), {q(1, 3), -2});
  AdaptedNorm k = w.scaled(3);
  CHECK(k.level() == Rational(3));
  CHECK(norm_eval(k, {4, 0}) == NormValue(Rational(7)));
  CHECK(norm_eval(w.shifted(q(1, 2)), {0, 1}) == NormValue(q(-3, 2)));
}

TEST_CASE("lattice and norm correspondence") {
  AdaptedNorm std_norm = to_norm(OLattice::standard(2));
  CHECK(std_norm.values() == RatVec{0, 0});
  AdaptedNorm w(1, RatMatrix::identity(2), {2, -1});
  OLattice l = to_lattice(w);
  CHECK(l.exponents() == IntVec{-2, 1});
  CHECK(l.contains({q(1, 4), 2}));
  CHECK_FALSE(l.contains({q(1, 8), 2}));
  CHECK_FALSE(l.contains({1, 1}));
  CHECK(norms_equal(to_norm(l), w));
  CHECK(code_of([] { to_lattice(AdaptedNorm(1, RatMatrix::identity(2), {q(1, 2), 0})); }) ==
        ErrorCode::NonIntegerValues);
  CHECK(code_of([] { to_lattice(AdaptedNorm(0, RatMatrix::identity(1), {0})); }) == ErrorCode::LevelMismatch);
  for (long long a = -2; a <= 2; ++a)
    for (long long b = -2; b <= 2; ++b) {
      OLattice lat(cols({{1, 1}, {0, 3}}), {a, b});
      OLattice back = to_lattice(to_norm(lat));
      for (const auto& e : probe_set(2, 2)) REQUIRE(lat.contains(e) == back.contains(e));
    }
}

TEST_CASE("filtration_step examples") {
  AdaptedNorm w(1, RatMatrix::identity(2), {0, 0});
  FiltrationStep zero = filtration_step(w, 0);
  CHECK(zero.is_lattice);
  CHECK(zero.contains({1, 1}));
  CHECK_FALSE(zero.contains({q(1, 2), 0}));
  FiltrationStep half = filtration_step(w, q(1, 2));
  CHECK(half == filtration_step(AdaptedNorm(1, RatMatrix::identity(2), {-1, -1}), 0));
  CHECK(half.contains({2, 2}));
  CHECK_FALSE(half.contains({1, 2}));
  for (long long j = -2; j <= 2; ++j)
    for (std::size_t i = 0; i < 2; ++i) {
      RatVec e(2);
      e[i] = pow(Rational(2), j);
      REQUIRE(half.contains(e) == (j >= 1));
    }
  AdaptedNorm v(0, RatMatrix::identity(2), {1, 0});
  FiltrationStep sub = filtration_step(v, q(1, 2));
  CHECK_FALSE(sub.is_lattice);
  CHECK(sub.contains({7, 0}));
  CHECK_FALSE(sub.contains({0, 1}));
}

TEST_CASE("filtration steps of level one are periodic") {
  AdaptedNorm w(1, cols({{1, 1}, {0, 1}}), {q(1, 3), q(-5, 2)});
  for (long long n = -6; n <= 6; ++n) {
    Rational a = q(n, 6);
    FiltrationStep here = filtration_step(w, a);
    FiltrationStep up = filtration_step(w, a + 1);
    for (const auto& e : probe_set(2, 2)) {
      RatVec pe{e[0] * 2, e[1] * 2};
      REQUIRE(up.contains(pe) == here.contains(e));
    }
  }
}

TEST_CASE("norms_equal examples") {
  AdaptedNorm a(1, RatMatrix::identity(2), {0, 0});
  AdaptedNorm b(1, cols({{1, 0}, {1, 1}}), {0, 0});
  CHECK(norms_equal(a, b));
  CHECK(pointwise_equal(a, b));
  AdaptedNorm c(1, RatMatrix::identity(2), {0, 1});
  AdaptedNorm d(1, RatMatrix::identity(2), {1, 0});
  CHECK_FALSE(norms_equal(c, d));
  AdaptedNorm level0(0, RatMatrix::identity(2), {0, 0});
  CHECK(code_of([&] { norms_equal(level0, a); }) == ErrorCode::LevelMismatch);
}

TEST_CASE("norms_equal agrees with brute force and is an equivalence") {
  std::mt19937_64 rng(17);
  std::vector<RatMatrix> bases = {RatMatrix::identity(2), cols({{1, 0}, {1, 1}}), cols({{1, 0}, {2, 1}}),
                                  cols({{2, 0}, {0, 1}}), cols({{1, 1}, {1, 3}})};
  std::vector<AdaptedNorm> norms;
  for (int s = 0; s < 60; ++s) {
    const RatMatrix& b = bases[rng() % bases.size()];
    RatVec vals{q(static_cast<long long>(rng() % 5) - 2, 1 + rng() % 2),
                q(static_cast<long long>(rng() % 5) - 2, 1 + rng() % 2)};
    norms.emplace_back(1, b, vals);
  }
  for (std::size_t i = 0; i < norms.size(); ++i) {
    REQUIRE(norms_equal(norms[i], norms[i]));
    for (std::size_t j = i + 1; j < norms.size(); ++j) {
      bool eq = norms_equal(norms[i], norms[j]);
      REQUIRE(eq == norms_equal(norms[j], norms[i]));
      REQUIRE(eq == pointwise_equal(norms[i], norms[j]));
      if (!eq) continue;
      for (std::size_t k = j + 1; k < norms.size(); ++k)
        if (norms_equal(norms[j], norms[k])) REQUIRE(norms_equal(norms[i], norms[k]));
    }
  }
}

TEST_CASE("apartment coordinates") {
  RatMatrix b = cols({{1, 2}, {0, 1}});
  for (long long x = -2; x <= 2; ++x)
    for (long long y = -2; y <= 2; ++y) {
      AdaptedNorm w(1, b, {q(x, 2), q(y, 3)});
      AdaptedNorm v(1, b, {q(1, 2), q(-1, 3)});
      REQUIRE(norms_equal(w, v) == (w.values() == v.values()));
    }
}

TEST_CASE("link_norm examples") {
  OLattice std2 = OLattice::standard(2);
  ResidueValuation half = link_norm(std2, AdaptedNorm(1, RatMatrix::identity(2), {0, q(1, 2)}));
  CHECK(half.values() == RatVec{0, q(1, 2)});
  CHECK(half.basis() == ModpMatrix{{1, 0}, {0, 1}});
  ResidueValuation origin = link_norm(std2, to_norm(std2));
  CHECK(origin.values() == RatVec{0, 0});
  CHECK(code_of([&] { link_norm(std2, AdaptedNorm(1, RatMatrix::identity(2), {0, q(3, 2)})); }) ==
        ErrorCode::NotInLink);
  OLattice shifted(RatMatrix::identity(2), {1, -1});
  ResidueValuation r = link_norm(shifted, AdaptedNorm(1, RatMatrix::identity(2), {q(-3, 4), 1}));
  CHECK(r.values() == RatVec{q(1, 4), 0});
}

TEST_CASE("unlink_norm examples") {
  OLattice std2 = OLattice::standard(2);
  ResidueValuation trivial(2, {{1, 0}, {0, 1}}, {0, 0});
  CHECK(norms_equal(unlink_norm(std2, trivial), to_norm(std2)));
  ResidueValuation half(2, {{1, 0}, {0, 1}}, {0, q(1, 2)});
  AdaptedNorm w = unlink_norm(std2, half);
  CHECK(w.values() == RatVec{0, q(1, 2)});
  CHECK(norms_equal(w, AdaptedNorm(1, RatMatrix::identity(2), {0, q(1, 2)})));
  ResidueValuation bad(2, {{1, 0}, {0, 1}}, {0, 1});
  CHECK(code_of([&] { unlink_norm(std2, bad); }) == ErrorCode::ValuesOutOfRange);
}

TEST_CASE("residue valuations") {
  ResidueValuation w(3, {{1, 1}, {0, 1}}, {q(1, 2), 0});
  CHECK(w.eval({{1, 0}}) == NormValue(q(1, 2)));
  CHECK(w.eval({{1, 1}}) == NormValue(Rational(0)));
  CHECK_FALSE(w.eval({{0, 0}}).has_value());
  CHECK(w.filtration_dim(0) == 2);
  CHECK(w.filtration_dim(q(1, 3)) == 1);
  CHECK(w.filtration_dim(1) == 0);
  CHECK(norms_equal(w, ResidueValuation(3, {{2, 1}, {0, 1}}, {q(1, 2), 0})));
  CHECK_FALSE(norms_equal(w, ResidueValuation(3, {{1, 0}, {0, 1}}, {0, q(1, 2)})));
  CHECK(code_of([] { ResidueValuation(2, {{1, 1}, {1, 1}}, {0, 0}); }) == ErrorCode::SingularBasis);
}

TEST_CASE("epsilon examples") {
  AdaptedNorm w(0, RatMatrix::identity(3), {0, 1, 2});
  CHECK(epsilon(w, 1) == Rational(3));
  CHECK(epsilon(w, 2) == Rational(2));
  CHECK(epsilon(w, 3) == Rational(0));
  ResidueValuation trivial(2, {{1, 0}, {0, 1}}, {0, 0});
  CHECK(epsilon(trivial, 1) == Rational(0));
  auto mult = value_multiplicities(trivial);
  REQUIRE(mult.size() == 1);
  CHECK(mult[0].second == 2);
  AdaptedNorm h(0, cols({{1, 1}, {0, 1}}), {q(1, 2), q(1, 2)});
  CHECK(epsilon(h, 2) == q(1, 4));
  CHECK(code_of([&] { epsilon(w, 0); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { epsilon(w, 4); }) == ErrorCode::IndexOutOfRange);
  CHECK(elementary_symmetric(RatVec{1, 2, 3}, 2) == Rational(11));
  CHECK(elementary_symmetric(RatVec{1, 2, 3}, 0) == Rational(1));
}

}
