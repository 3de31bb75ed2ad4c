#include <benchmark/benchmark.h>

#include "sbr/estimators.hpp"
#include "sbr/optimizers.hpp"

using namespace sbr;

namespace {

DenseVector random_vector(int d, RngStream& rng) {
  std::vector<double> v(static_cast<std::size_t>(d));
  for (double& x : v) x = rng.normal();
  return DenseVector(std::move(v));
}

void BM_hard_threshold(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(1);
  const DenseVector v = random_vector(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hard_threshold(v, d / 20));
  state.SetItemsProcessed(state.iterations() * d);
}

void BM_exploration_gradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Budget budget(d, d / 20, d / 10, d / 5);
  const ProblemInstance inst = make_synthetic_instance(d, budget.s_star, 1.0);
  const BlockPartition part = make_block_partition(d, budget.block_width());
  ObservationLedger ledger(budget.s_prime);
  RngStream rng(2);
  const DenseVector theta = hard_threshold(random_vector(d, rng), budget.s);
  for (auto _ : state)
    benchmark::DoNotOptimize(exploration_gradient(theta, part, 4, inst, ledger, rng));
}

void BM_exploitation_gradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Budget budget(d, d / 20, d / 10, d / 5);
  const ProblemInstance inst = make_synthetic_instance(d, budget.s_star, 1.0);
  ObservationLedger ledger(budget.s_prime);
  RngStream rng(3);
  const DenseVector theta = hard_threshold(random_vector(d, rng), budget.s);
  const SupportSet S0 = support(theta);
  for (auto _ : state)
    benchmark::DoNotOptimize(exploitation_gradient(theta, S0, 4, inst, ledger, rng));
}

void BM_exploration_run(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Budget budget(d, d / 20, d / 10, d / 5);
  const ProblemInstance inst = make_synthetic_instance(d, budget.s_star, 1.0);
  BatchSchedule schedule;
  schedule.kind = ScheduleKind::Constant;
  schedule.base = 8;
  for (auto _ : state) {
    ObservationLedger ledger(budget.s_prime);
    RngStream rng(4);
    RunContext ctx{inst, ledger, rng, nullptr, 1, false};
    benchmark::DoNotOptimize(run_exploration(DenseVector::zeros(d), 0.25, budget, schedule,
                                             SmoothnessProfile::identity_covariance(), 5, ctx));
  }
}

}  // namespace

BENCHMARK(BM_hard_threshold)->Arg(500)->Arg(5000)->Arg(50000);
BENCHMARK(BM_exploration_gradient)->Arg(100)->Arg(500);
BENCHMARK(BM_exploitation_gradient)->Arg(100)->Arg(500);
BENCHMARK(BM_exploration_run)->Arg(100)->Arg(500);

BENCHMARK_MAIN();
