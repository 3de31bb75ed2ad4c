#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sbr/data_env.hpp"
#include "sbr/estimators.hpp"
#include "sbr/metrics.hpp"
#include "sbr/schedules.hpp"

namespace sbr {

struct TraceRow {
  int update_index = 0;
  std::string stage;  // "explore" | "exploit" | "n/a"
  long cum_examples = 0;
  long cum_attribute_reads = 0;
  int nnz_theta = 0;
  MetricSnapshot metrics;
  double elapsed_ms = 0.0;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  DenseVector final_theta;
  std::uint64_t seed = 0;
  std::string config_hash;
};

using MetricEvaluator = std::function<MetricSnapshot(const DenseVector&)>;

// Shared per-trial state the training loops mutate. Metric evaluation runs
// every metric_cadence updates plus at update 0 and the final update;
// record_timing off keeps traces byte-identical across reruns.
struct RunContext {
  const ProblemInstance& inst;
  ObservationLedger& ledger;
  RngStream& rng;
  MetricEvaluator evaluate;
  int metric_cadence = 1;
  bool record_timing = false;
};

struct RunResult {
  DenseVector theta;
  RunTrace trace;
};

// Iterative-hard-thresholding loop over the block estimator. theta0 is
// thresholded to s-sparse up front; every iterate stays <= s-sparse.
RunResult run_exploration(const DenseVector& theta0, double eta, const Budget& budget,
                          const BatchSchedule& schedule, const SmoothnessProfile& profile, int T,
                          RunContext& ctx);

// Plain gradient loop confined to S0 = supp(theta0); no thresholding.
// Requires |S0| <= s'.
RunResult run_exploitation(const DenseVector& theta0, double eta, const Budget& budget,
                           const BatchSchedule& schedule, const SmoothnessProfile& profile, int T,
                           RunContext& ctx);

struct HybridConfig {
  int K = 1;
  int T_minus = 3;
  int T_k = 1;
  BatchSchedule explore_schedule;
  BatchSchedule exploit_schedule;
  double eta = 0.25;
  Budget budget;
  SmoothnessProfile profile;
};

// K alternations of a short exploration stage and a longer exploitation
// stage; stage boundaries are visible through the trace's stage column.
RunResult run_hybrid(const DenseVector& theta0, const HybridConfig& config, RunContext& ctx);

// Single-sample scaled-estimator IHT baseline with decreasing step sizes
// eta_t = eta0 / sqrt(t) and random attribute selection. No convergence
// guarantee; kept for comparison runs.
RunResult run_naive_exploration(const DenseVector& theta0, double eta0, const Budget& budget,
                                int T, RunContext& ctx);

}  // namespace sbr
