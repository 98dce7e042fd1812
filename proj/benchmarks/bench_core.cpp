#include <benchmark/benchmark.h>

#include "ordcone/karcher.hpp"
#include "ordcone/order_approx.hpp"
#include "ordcone/random.hpp"
#include "ordcone/stochastic_order.hpp"
#include "ordcone/transport.hpp"

namespace {

using namespace ordcone;

void BM_ThompsonDist(benchmark::State& state) {
  Rng rng(1);
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto a = gen_pd(rng, dim), b = gen_pd(rng, dim);
  for (auto _ : state) benchmark::DoNotOptimize(thompson_dist(a, b));
}
BENCHMARK(BM_ThompsonDist)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Wasserstein1(benchmark::State& state) {
  Rng rng(2);
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto mu = gen_measure(rng, 3, size), nu = gen_measure(rng, 3, size);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein1(mu, nu).cost);
}
BENCHMARK(BM_Wasserstein1)->Arg(4)->Arg(16)->Arg(64);

void BM_StochasticLeqFlow(benchmark::State& state) {
  Rng rng(3);
  const auto [mu, nu] = gen_ordered_pair(rng, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stochastic_leq_flow(mu, nu).verdict);
}
BENCHMARK(BM_StochasticLeqFlow)->Arg(4)->Arg(16)->Arg(64);

void BM_KarcherMean(benchmark::State& state) {
  Rng rng(4);
  const auto m = gen_measure(rng, static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(karcher_mean(m.points(), m.weights()).residual);
}
BENCHMARK(BM_KarcherMean)->Arg(2)->Arg(4)->Arg(8);

void BM_ApproximatePair(benchmark::State& state) {
  Rng rng(5);
  const auto [q, p] = gen_ordered_pair(rng, 2, 8);
  const auto sched = ApproxSchedule::identity(2);
  for (auto _ : state) benchmark::DoNotOptimize(order_approximate_pair(q, p, sched, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ApproximatePair)->Arg(10)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
