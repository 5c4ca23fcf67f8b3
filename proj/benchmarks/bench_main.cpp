#include <benchmark/benchmark.h>

#include <vector>

#include "bethe/operators.hpp"
#include "bethe/populations.hpp"
#include "bethe/theta.hpp"
#include "bethe/wronskian.hpp"

using namespace bethe;

namespace {

const Poly X = Poly::x();

void BM_WronskianPowers(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Poly> fs;
  for (int k = 0; k < n; ++k) fs.push_back(pow(X + Rat(k), 2 * k + 1) + Rat(k));
  for (auto _ : state) benchmark::DoNotOptimize(wronskian_n(fs));
}
BENCHMARK(BM_WronskianPowers)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_AdlerMoser(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<StepConstants> cs;
  for (int k = 0; k < n; ++k) cs.push_back({make_rat(k + 1, 3), Rat(0)});
  for (auto _ : state) benchmark::DoNotOptimize(adler_moser(n, cs));
}
BENCHMARK(BM_AdlerMoser)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_ThetaSequence(benchmark::State& state) {
  const TPair t(X * X, X);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theta_sequence(t, 0, n));
}
BENCHMARK(BM_ThetaSequence)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

// Operator of the deepest node of a small population.
SchrodingerOp deep_operator(const TPair& t, int depth) {
  auto nodes = enumerate_population(t, depth);
  const PopulationNode* best = &nodes.front();
  for (const auto& n : nodes)
    if (n.pair.y0.degree() + n.pair.y1.degree() > best->pair.y0.degree() + best->pair.y1.degree()) best = &n;
  return from_pair(best->pair, t, 1);
}

void BM_IsLambdaMF(benchmark::State& state) {
  SchrodingerOp L = deep_operator(TPair(X * X, 1), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_lambda_mf(L));
}
BENCHMARK(BM_IsLambdaMF)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
