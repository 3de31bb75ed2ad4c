#pragma once

#include <string>
#include <vector>

#include "sbr/config.hpp"
#include "sbr/optimizers.hpp"

namespace sbr {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One aggregated point on the cumulative-examples grid. Trials are aligned
// by last-observation-carried-forward before averaging; the band is twice
// the sample standard deviation.
struct AggregateRow {
  long cum_examples = 0;
  double test_mse_mean = 0.0;
  double test_mse_2std = 0.0;
  bool has_excess_risk = false;
  double excess_risk_mean = 0.0;
  double excess_risk_2std = 0.0;
  bool has_support_f1 = false;
  double support_f1_mean = 0.0;
  double support_f1_2std = 0.0;
};

struct ExperimentResult {
  std::vector<RunTrace> traces;            // one per trial
  std::vector<AggregateRow> aggregate;
  std::vector<std::string> trace_paths;
  std::string aggregate_path;
  std::string summary_path;
};

// Runs config.trials seeded trials (worker pool), writes one trace CSV per
// trial, the aggregate CSV, a summary, and the fully-resolved config into
// config.output_dir.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Trace CSV serialization (fixed column order).
void write_trace_csv(const std::string& path, const RunTrace& trace, int trial);
std::vector<AggregateRow> aggregate_traces(const std::vector<RunTrace>& traces);
void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows);

struct PlotOptions {
  bool log_y = false;
};

// Renders aggregate CSVs into a single self-contained SVG line chart:
// x = cumulative examples, y = mean test MSE, whiskers at +/- 2 std.
// Deterministic for fixed inputs.
void emit_plot(const std::vector<std::string>& aggregate_csvs, const std::string& out_path,
               const PlotOptions& opts = {});

}  // namespace sbr
