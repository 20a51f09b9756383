#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace toricdvr;

namespace {

Rational q(long long a, long long b = 1) { return Rational(Integer(a), Integer(b)); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

std::vector<IntVec> sorted_u(const std::vector<IntVec>& u) {
  auto out = u;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("bundle") {

TEST_CASE("character evaluation") {
  Character c{{2, -1}, 3};
  CHECK(c.eval({1, 1, 1}) == Rational(4));
  CHECK(c.eval({q(1, 2), 0, 0}) == Rational(1));
}

TEST_CASE("eval_phi examples") {
  ToricBundleData e = testing::load_bundle("p1_rank1");
  AdaptedNorm a = eval_phi(e, {2, 1});
  CHECK(a.level() == Rational(1));
  CHECK(a.values() == RatVec{2});
  AdaptedNorm b = eval_phi(e, {0, 1});
  CHECK(b.values() == RatVec{0});
  CHECK(norms_equal(b, to_norm(OLattice::standard(1))));
  AdaptedNorm c = eval_phi(e, {2, 0});
  CHECK(c.level() == Rational(0));
  CHECK(c.values() == RatVec{2});
  CHECK(code_of([&] { eval_phi(e, {0, -1}); }) == ErrorCode::OutsideSupport);
}

TEST_CASE("eval_phi is graded and homogeneous") {
  for (const auto& name : testing::valid_fixtures()) {
    ToricBundleData e = testing::load_bundle(name);
    const std::size_t n = e.n();
    for (long long h = 0; h <= 2; ++h)
      for (long long s = -3; s <= 3; ++s) {
        RatVec x(n + 1);
        for (std::size_t i = 0; i < n; ++i) x[i] = q(s * static_cast<long long>(i + 1) - 1, 2);
        x[n] = h;
        if (h == 0 && std::all_of(x.begin(), x.end(), [](const Rational& t) { return t.is_zero(); })) continue;
        AdaptedNorm w = eval_phi(e, x);
        REQUIRE(w.level() == Rational(h));
        RatVec y = x;
        for (auto& t : y) t *= q(5, 3);
        REQUIRE(norms_equal(eval_phi(e, y), w.scaled(q(5, 3))));
      }
  }
}

TEST_CASE("validate_bundle examples") {
  BundleReport good = validate_bundle(testing::load_bundle("p1_rank1"));
  CHECK(good.ok);
  CHECK_FALSE(good.samples.empty());
  BundleReport bad = validate_bundle(testing::load_bundle("p1_rank1_mismatch"));
  CHECK_FALSE(bad.ok);
  REQUIRE_FALSE(bad.failures.empty());
  CHECK(bad.failures.front().find("(0,1)") != std::string::npos);
  CHECK(validate_bundle(testing::load_bundle("p1_rank2_split")).ok);
  for (const auto& name : testing::valid_fixtures()) CHECK(validate_bundle(testing::load_bundle(name), 3, 16).ok);
}

TEST_CASE("validate_bundle samples are seeded") {
  ToricBundleData e = testing::load_bundle("p2_tangent");
  CHECK(validate_bundle(e, 9).samples == validate_bundle(e, 9).samples);
}

TEST_CASE("restrict_to_vertex examples") {
  ToricBundleData e = testing::load_bundle("p1_rank1");
  VertexRestriction r = restrict_to_vertex(e, {0});
  CHECK(r.lattice.exponents() == IntVec{0});
  REQUIRE(r.charts.size() == 2);
  for (std::size_t pos = 0; pos < 2; ++pos) {
    const Cone& c = r.star.fan.maximal_cone(pos);
    IntVec expected = c.rays().front() == IntVec{1} ? IntVec{1} : IntVec{0};
    CHECK(r.charts[pos].u == std::vector<IntVec>{expected});
  }
  CHECK(r.eval({3}).values() == RatVec{3});
  CHECK(r.eval({-3}).values() == RatVec{0});

  ToricBundleData split = testing::load_bundle("p1_rank2_split");
  VertexRestriction rs = restrict_to_vertex(split, {0});
  for (const auto& chart : rs.charts) {
    CHECK(chart.basis == ModpMatrix{{1, 0}, {0, 1}});
    CHECK(sorted_u(chart.u) == std::vector<IntVec>{{-1}, {1}});
  }
  CHECK(code_of([&] { restrict_to_vertex(e, {5}); }) == ErrorCode::NotAVertex);
}

TEST_CASE("restrict_to_vertex on a twisted lattice") {
  ToricBundleData e = testing::load_bundle("p1_two_vertex_rank2");
  VertexRestriction r = restrict_to_vertex(e, {1});
  CHECK(r.lattice.exponents() == IntVec{-1, 1});
  for (const auto& chart : r.charts) CHECK(rank_mod_p(chart.basis, 2) == 2);
}

TEST_CASE("restrict_to_generic examples") {
  ToricBundleData e = testing::load_bundle("p1_rank1");
  GenericRestriction g = restrict_to_generic(e);
  REQUIRE(g.charts.size() == 2);
  for (std::size_t pos = 0; pos < 2; ++pos) {
    IntVec expected = g.fan.maximal_cone(pos).rays().front() == IntVec{1} ? IntVec{1} : IntVec{0};
    CHECK(g.charts[pos].u == std::vector<IntVec>{expected});
  }
  CHECK(g.eval({4}, e.cfg()).values() == RatVec{4});

  ToricBundleData two = testing::load_bundle("p1_two_vertex_rank1");
  GenericRestriction g2 = restrict_to_generic(two);
  for (const auto& chart : g2.charts) {
    const Cone& source = two.fan().maximal_cone(chart.source);
    bool unbounded = std::any_of(source.rays().begin(), source.rays().end(), [](const IntVec& r) { return r.back() == 0; });
    CHECK(unbounded);
  }

  ToricBundleData trivial = testing::load_bundle("p1_rank1_trivial");
  GenericRestriction g3 = restrict_to_generic(trivial);
  for (long long x = -3; x <= 3; ++x) CHECK(g3.eval({x}, trivial.cfg()).values() == RatVec{0});
}

TEST_CASE("check_morphism examples") {
  ToricBundleData e = testing::load_bundle("p1_rank1");
  ToricBundleData trivial = testing::load_bundle("p1_rank1_trivial");
  CHECK(check_morphism(e, e, RatMatrix::identity(1)).ok);
  RatMatrix times_p = RatMatrix::from_rows({{2}}, 1);
  CHECK(check_morphism(trivial, trivial, times_p).ok);
  MorphismReport rejected = check_morphism(e, trivial, RatMatrix::identity(1));
  CHECK_FALSE(rejected.ok);
  CHECK_FALSE(rejected.failures.empty());
  CHECK(check_morphism(trivial, e, RatMatrix::identity(1)).ok);
  RatMatrix over_p = RatMatrix::from_rows({{q(1, 2)}}, 1);
  CHECK_FALSE(check_morphism(trivial, trivial, over_p).ok);
  CHECK(code_of([&] { check_morphism(e, e, RatMatrix::identity(2)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("check_morphism composes") {
  ToricBundleData a = testing::load_bundle("p1_rank1_trivial");
  ToricBundleData b = testing::load_bundle("p1_rank1");
  RatMatrix f = RatMatrix::identity(1);
  RatMatrix g = RatMatrix::from_rows({{4}}, 1);
  REQUIRE(check_morphism(a, b, f).ok);
  REQUIRE(check_morphism(b, b, g).ok);
  CHECK(check_morphism(a, b, g * f).ok);
}

TEST_CASE("line_summands") {
  auto parts = line_summands(testing::load_bundle("p1_rank2_split"));
  REQUIRE(parts.size() == 2);
  for (const auto& l : parts) {
    CHECK(l.rank() == 1);
    CHECK(validate_bundle(l).ok);
  }
  CHECK(code_of([] { line_summands(testing::load_bundle("p2_tangent")); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("bundle construction errors") {
  Fan f = build_fan(1, {{{0, 1}, {1, 0}}, {{0, 1}, {-1, 0}}});
  BundleChart c0{0, RatMatrix::identity(1), {{{0}, 0}}};
  BundleChart c1{1, RatMatrix::identity(1), {{{0}, 0}}};
  CHECK_NOTHROW(ToricBundleData(f, 1, {c0, c1}));
  CHECK(code_of([&] { ToricBundleData(f, 1, {c0}); }) == ErrorCode::InvalidArgument);
  BundleChart singular{1, RatMatrix(1, 1), {{{0}, 0}}};
  CHECK(code_of([&] { ToricBundleData(f, 1, {c0, singular}); }) == ErrorCode::SingularBasis);
  BundleChart wrong{1, RatMatrix::identity(2), {{{0}, 0}, {{0}, 0}}};
  CHECK(code_of([&] { ToricBundleData(f, 1, {c0, wrong}); }) == ErrorCode::ShapeMismatch);
}

}
