#include "sbr/optimizers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace sbr {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start, bool record) {
  if (!record) return 0.0;
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void snapshot(RunTrace& trace, RunContext& ctx, int t, const std::string& stage,
              const DenseVector& theta, Clock::time_point start) {
  TraceRow row;
  row.update_index = t;
  row.stage = stage;
  row.cum_examples = ctx.ledger.examples_drawn();
  row.cum_attribute_reads = ctx.ledger.attribute_reads();
  row.nnz_theta = support(theta).size();
  if (ctx.evaluate) row.metrics = ctx.evaluate(theta);
  row.elapsed_ms = elapsed_ms_since(start, ctx.record_timing);
  trace.rows.push_back(std::move(row));
}

bool due(int t, int T, int cadence) { return t % cadence == 0 || t == T; }

}  // namespace

RunResult run_exploration(const DenseVector& theta0, double eta, const Budget& budget,
                          const BatchSchedule& schedule, const SmoothnessProfile& profile, int T,
                          RunContext& ctx) {
  if (!(eta > 0)) throw std::invalid_argument("run_exploration: eta <= 0");
  if (T < 1) throw std::invalid_argument("run_exploration: T < 1");
  const auto start = Clock::now();
  const BlockPartition part = make_block_partition(budget.d, budget.block_width());

  DenseVector theta = hard_threshold(theta0, budget.s);
  RunResult result;
  snapshot(result.trace, ctx, 0, "explore", theta, start);

  for (int t = 1; t <= T; ++t) {
    const long B = schedule.size_at(t, profile, budget);
    if (B < 1) throw std::invalid_argument("run_exploration: schedule emitted B < 1");
    const GradientEstimate est =
        exploration_gradient(theta, part, static_cast<int>(B), ctx.inst, ctx.ledger, ctx.rng);
    DenseVector step = theta;
    for (int j = 0; j < budget.d; ++j) step.set(j, step[j] - eta * est.g[j]);
    theta = hard_threshold(step, budget.s);
    if (due(t, T, ctx.metric_cadence)) snapshot(result.trace, ctx, t, "explore", theta, start);
  }
  result.theta = std::move(theta);
  result.trace.final_theta = result.theta;
  return result;
}

RunResult run_exploitation(const DenseVector& theta0, double eta, const Budget& budget,
                           const BatchSchedule& schedule, const SmoothnessProfile& profile, int T,
                           RunContext& ctx) {
  if (!(eta > 0)) throw std::invalid_argument("run_exploitation: eta <= 0");
  if (T < 1) throw std::invalid_argument("run_exploitation: T < 1");
  const SupportSet S0 = support(theta0);
  if (S0.size() > budget.s_prime)
    throw std::invalid_argument("run_exploitation: |supp(theta0)| exceeds s'");
  const auto start = Clock::now();

  DenseVector theta = theta0;
  RunResult result;
  snapshot(result.trace, ctx, 0, "exploit", theta, start);

  for (int t = 1; t <= T; ++t) {
    const long B = schedule.size_at(t, profile, budget);
    if (B < 1) throw std::invalid_argument("run_exploitation: schedule emitted B < 1");
    const GradientEstimate est =
        exploitation_gradient(theta, S0, static_cast<int>(B), ctx.inst, ctx.ledger, ctx.rng);
    for (int j : S0) theta.set(j, theta[j] - eta * est.g[j]);
    if (due(t, T, ctx.metric_cadence)) snapshot(result.trace, ctx, t, "exploit", theta, start);
  }
  result.theta = std::move(theta);
  result.trace.final_theta = result.theta;
  return result;
}

RunResult run_hybrid(const DenseVector& theta0, const HybridConfig& config, RunContext& ctx) {
  if (config.K < 1 || config.T_minus < 1 || config.T_k < 1)
    throw std::invalid_argument("run_hybrid: K, T_minus, T_k must all be >= 1");

  DenseVector theta = theta0;
  RunResult result;
  int offset = 0;
  for (int k = 1; k <= config.K; ++k) {
    BatchSchedule explore = config.explore_schedule;
    BatchSchedule exploit = config.exploit_schedule;
    explore.stage_k = k;
    exploit.stage_k = k;

    RunResult stage = run_exploration(theta, config.eta, config.budget, explore, config.profile,
                                      config.T_minus, ctx);
    theta = std::move(stage.theta);
    for (auto& row : stage.trace.rows) {
      if (k > 1 && row.update_index == 0) continue;  // stage-start duplicate
      row.update_index += offset;
      result.trace.rows.push_back(std::move(row));
    }
    offset += config.T_minus;

    stage = run_exploitation(theta, config.eta, config.budget, exploit, config.profile,
                             config.T_k, ctx);
    theta = std::move(stage.theta);
    for (auto& row : stage.trace.rows) {
      if (row.update_index == 0) continue;
      row.update_index += offset;
      result.trace.rows.push_back(std::move(row));
    }
    offset += config.T_k;
  }
  result.theta = std::move(theta);
  result.trace.final_theta = result.theta;
  return result;
}

RunResult run_naive_exploration(const DenseVector& theta0, double eta0, const Budget& budget,
                                int T, RunContext& ctx) {
  if (!(eta0 > 0)) throw std::invalid_argument("run_naive_exploration: eta0 <= 0");
  if (T < 1) throw std::invalid_argument("run_naive_exploration: T < 1");
  const auto start = Clock::now();

  DenseVector theta = hard_threshold(theta0, budget.s);
  RunResult result;
  snapshot(result.trace, ctx, 0, "n/a", theta, start);

  for (int t = 1; t <= T; ++t) {
    const GradientEstimate est = naive_random_gradient(theta, budget, ctx.inst, ctx.ledger, ctx.rng);
    const double eta_t = eta0 / std::sqrt(static_cast<double>(t));
    DenseVector step = theta;
    for (int j : est.valid_support) step.set(j, step[j] - eta_t * est.g[j]);
    theta = hard_threshold(step, budget.s);
    if (due(t, T, ctx.metric_cadence)) snapshot(result.trace, ctx, t, "n/a", theta, start);
  }
  result.theta = std::move(theta);
  result.trace.final_theta = result.theta;
  return result;
}

}  // namespace sbr
