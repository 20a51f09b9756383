#include <benchmark/benchmark.h>

#include "fixtures.hpp"

using namespace toricdvr;

static void BM_Parse(benchmark::State& state) {
  const std::string text = testing::read_text(testing::fixture_path("p2_blowup_tangent"));
  for (auto _ : state) benchmark::DoNotOptimize(cli::parse_input(text));
}
BENCHMARK(BM_Parse);

static void BM_ValidateBundle(benchmark::State& state) {
  ToricBundleData e = testing::load_bundle("p2_blowup_tangent");
  for (auto _ : state) benchmark::DoNotOptimize(validate_bundle(e, 7, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ValidateBundle)->Arg(0)->Arg(8)->Arg(32);

static void BM_ComputeChern(benchmark::State& state) {
  ToricBundleData e = testing::load_bundle("p2_blowup_tangent");
  for (auto _ : state) benchmark::DoNotOptimize(compute_chern(e));
}
BENCHMARK(BM_ComputeChern);

static void BM_EpsilonOracle(benchmark::State& state) {
  ToricBundleData e = testing::load_bundle("p2_tangent");
  VertexRestriction r = restrict_to_vertex(e, {0, 0});
  RatVec y{3, 5};
  for (auto _ : state) benchmark::DoNotOptimize(epsilon_oracle(r, 2, y));
}
BENCHMARK(BM_EpsilonOracle);

static void BM_NormsEqual(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  RatMatrix b = RatMatrix::identity(r);
  for (std::size_t i = 0; i + 1 < r; ++i) b(i, i + 1) = 1;
  RatVec v(r);
  for (std::size_t i = 0; i < r; ++i) v[i] = Rational(Integer(static_cast<long long>(i)), Integer(3));
  AdaptedNorm a(1, RatMatrix::identity(r), v), c(1, b, v);
  for (auto _ : state) benchmark::DoNotOptimize(norms_equal(a, c));
}
BENCHMARK(BM_NormsEqual)->Arg(2)->Arg(4)->Arg(6);

static void BM_PolyPower(benchmark::State& state) {
  Poly f = Poly::linear(IntVec{1, -2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(f.pow(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PolyPower)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
