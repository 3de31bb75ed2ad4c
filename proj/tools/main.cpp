#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbr/harness.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitBudgetViolation = 4;

int cmd_run(const std::string& config_path) {
  const sbr::KeyValueConfig raw = sbr::KeyValueConfig::parse_file(config_path);
  const sbr::ExperimentConfig cfg = sbr::ExperimentConfig::from_config(raw);
  const sbr::ExperimentResult result = sbr::run_experiment(cfg);
  std::printf("wrote %zu trace files, %s, %s\n", result.trace_paths.size(),
              result.aggregate_path.c_str(), result.summary_path.c_str());
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const sbr::KeyValueConfig raw = sbr::KeyValueConfig::parse_file(config_path);
  const sbr::ExperimentConfig cfg = sbr::ExperimentConfig::from_config(raw);
  int d = cfg.d;
  if (!cfg.synthetic) {
    sbr::CsvLoadOptions opts;
    opts.target_column = cfg.csv_target;
    opts.split_ratio = cfg.split_ratio;
    opts.split_seed = cfg.split_seed;
    opts.standardize = cfg.standardize;
    d = sbr::load_csv_dataset(cfg.csv_path, opts).dim();
  }
  const sbr::Budget budget(d, cfg.s_star, cfg.s, cfg.s_prime);
  const double delta_t = cfg.schedule.confidence / (2.0 * std::max(1, cfg.T));
  const double B_t = static_cast<double>(cfg.schedule.size_at(1, cfg.profile, budget));
  const sbr::ParameterReport report =
      sbr::validate_parameters(cfg.eta, cfg.s, budget, cfg.profile, B_t, delta_t);
  for (const auto& c : report.checks)
    std::printf("%-16s %s  lhs=%.6g rhs=%.6g slack=%.6g\n", c.name.c_str(),
                c.passed ? "PASS" : "FAIL", c.lhs, c.rhs, c.slack);
  const auto diag = sbr::contraction_diagnostics(cfg.eta, cfg.s, budget, cfg.profile,
                                                 cfg.sigma, delta_t);
  std::printf("contraction alpha = %.6g, noise constant c_t = %.6g\n", diag.alpha, diag.c_t);
  return report.all_passed() ? 0 : 1;
}

int cmd_plot(const std::string& out_path, const std::vector<std::string>& csvs, bool log_y) {
  sbr::PlotOptions opts;
  opts.log_y = log_y;
  sbr::emit_plot(csvs, out_path, opts);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted sparse linear regression experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("config", config_path, "Path to config file")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Print the parameter constraint report");
  validate->add_option("config", validate_path, "Path to config file")->required();

  std::string plot_out;
  std::vector<std::string> plot_csvs;
  bool log_y = false;
  auto* plot = app.add_subcommand("plot", "Render aggregate CSVs into an SVG learning curve");
  plot->add_option("out", plot_out, "Output SVG path")->required();
  plot->add_option("csvs", plot_csvs, "Aggregate CSV files")->required();
  plot->add_flag("--log-y", log_y, "Logarithmic y axis");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (validate->parsed()) return cmd_validate(validate_path);
    if (plot->parsed()) return cmd_plot(plot_out, plot_csvs, log_y);
  } catch (const sbr::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const sbr::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitDataError;
  } catch (const sbr::BudgetExceeded& e) {
    std::fprintf(stderr, "budget violation (bug): %s\n", e.what());
    return kExitBudgetViolation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
