#include "sbr/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

namespace sbr {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

ProblemInstance build_instance(const ExperimentConfig& cfg) {
  if (!cfg.synthetic) {
    CsvLoadOptions opts;
    opts.target_column = cfg.csv_target;
    opts.split_ratio = cfg.split_ratio;
    opts.split_seed = cfg.split_seed;
    opts.standardize = cfg.standardize;
    try {
      return load_csv_dataset(cfg.csv_path, opts);
    } catch (const std::exception& e) {
      throw DataError(e.what());
    }
  }
  if (cfg.feature_law == "uniform") {
    ProblemInstance base = make_synthetic_instance(cfg.d, cfg.s_star, cfg.sigma);
    return ProblemInstance::uniform_bounded(base.theta_star(), cfg.sigma, cfg.r_inf);
  }
  return make_synthetic_instance(cfg.d, cfg.s_star, cfg.sigma);
}

RunTrace run_one_trial(const ExperimentConfig& cfg, const ProblemInstance& inst,
                       const TestSet& test, const Budget& budget, int trial) {
  RngStream rng = RngStream::for_trial(cfg.base_seed, static_cast<std::uint64_t>(trial));
  ObservationLedger ledger(budget.s_prime);
  RunContext ctx{inst, ledger, rng,
                 [&](const DenseVector& theta) {
                   return evaluate_metrics(theta, inst, test, budget.s_prime);
                 },
                 cfg.metric_cadence, cfg.record_timing};

  const DenseVector theta0 = DenseVector::zeros(budget.d);
  BatchSchedule schedule = cfg.schedule;
  RunResult result;
  switch (cfg.algorithm) {
    case AlgorithmKind::Exploration:
    case AlgorithmKind::FullInfo:
      schedule.horizon_T = cfg.T;
      result = run_exploration(theta0, cfg.eta, budget, schedule, cfg.profile, cfg.T, ctx);
      break;
    case AlgorithmKind::Exploitation: {
      schedule.horizon_T = cfg.T;
      // Exploitation needs a nonzero starting support; seed it with one
      // exploration update, mirroring how the alternating scheme uses it.
      BatchSchedule warm = schedule;
      warm.horizon_T = 1;
      RunResult start = run_exploration(theta0, cfg.eta, budget, warm, cfg.profile, 1, ctx);
      result = run_exploitation(start.theta, cfg.eta, budget, schedule, cfg.profile, cfg.T, ctx);
      break;
    }
    case AlgorithmKind::Hybrid: {
      HybridConfig hc{cfg.K,
                      cfg.T_minus,
                      cfg.T_k,
                      cfg.schedule,
                      cfg.exploit_schedule,
                      cfg.eta,
                      budget,
                      cfg.profile};
      hc.explore_schedule.horizon_T = cfg.T_minus;
      hc.exploit_schedule.horizon_T = cfg.T_k;
      result = run_hybrid(theta0, hc, ctx);
      break;
    }
    case AlgorithmKind::Naive:
      result = run_naive_exploration(theta0, cfg.eta, budget, cfg.T, ctx);
      break;
  }
  result.trace.seed = cfg.base_seed;
  result.trace.config_hash = cfg.config_hash;
  return std::move(result.trace);
}

double mean_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

void write_trace_csv(const std::string& path, const RunTrace& trace, int trial) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "trial,update_index,stage,cum_examples,cum_attribute_reads,nnz_theta,test_mse,"
         "excess_risk,support_f1,elapsed_ms\n";
  for (const auto& r : trace.rows) {
    out << trial << ',' << r.update_index << ',' << r.stage << ',' << r.cum_examples << ','
        << r.cum_attribute_reads << ',' << r.nnz_theta << ',' << fmt(r.metrics.test_mse) << ','
        << fmt_opt(r.metrics.excess_risk) << ',' << fmt_opt(r.metrics.support_f1) << ','
        << fmt(r.elapsed_ms) << '\n';
  }
}

std::vector<AggregateRow> aggregate_traces(const std::vector<RunTrace>& traces) {
  std::vector<long> grid;
  for (const auto& t : traces)
    for (const auto& r : t.rows) grid.push_back(r.cum_examples);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<AggregateRow> out;
  out.reserve(grid.size());
  for (long g : grid) {
    std::vector<double> mse, risk, f1;
    bool all_risk = true, all_f1 = true;
    for (const auto& t : traces) {
      const TraceRow* last = nullptr;
      for (const auto& r : t.rows) {
        if (r.cum_examples <= g) last = &r;  // LOCF
        else break;
      }
      if (!last) continue;  // trial has no observation yet at this grid point
      mse.push_back(last->metrics.test_mse);
      if (last->metrics.excess_risk) risk.push_back(*last->metrics.excess_risk);
      else all_risk = false;
      if (last->metrics.support_f1) f1.push_back(*last->metrics.support_f1);
      else all_f1 = false;
    }
    if (mse.empty()) continue;
    AggregateRow row;
    row.cum_examples = g;
    row.test_mse_mean = mean_of(mse);
    row.test_mse_2std = 2.0 * sample_std(mse, row.test_mse_mean);
    if (all_risk && !risk.empty()) {
      row.has_excess_risk = true;
      row.excess_risk_mean = mean_of(risk);
      row.excess_risk_2std = 2.0 * sample_std(risk, row.excess_risk_mean);
    }
    if (all_f1 && !f1.empty()) {
      row.has_support_f1 = true;
      row.support_f1_mean = mean_of(f1);
      row.support_f1_2std = 2.0 * sample_std(f1, row.support_f1_mean);
    }
    out.push_back(row);
  }
  return out;
}

void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "cum_examples,test_mse_mean,test_mse_2std,excess_risk_mean,excess_risk_2std,"
         "support_f1_mean,support_f1_2std\n";
  for (const auto& r : rows) {
    out << r.cum_examples << ',' << fmt(r.test_mse_mean) << ',' << fmt(r.test_mse_2std) << ',';
    if (r.has_excess_risk) out << fmt(r.excess_risk_mean) << ',' << fmt(r.excess_risk_2std);
    else out << ',';
    out << ',';
    if (r.has_support_f1) out << fmt(r.support_f1_mean) << ',' << fmt(r.support_f1_2std);
    else out << ',';
    out << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  namespace fs = std::filesystem;

  const ProblemInstance inst = build_instance(config);
  const int d = inst.dim();
  const int s_prime = config.algorithm == AlgorithmKind::FullInfo ? d : config.s_prime;
  const Budget budget(d, config.s_star, config.s, s_prime);

  const TestSet test = config.synthetic
                           ? TestSet::from_instance(inst, config.n_test,
                                                    config.base_seed ^ 0x7e57da7aULL)
                           : TestSet::from_dataset(inst.dataset());

  std::string out_root = config.output_dir;
  if (const char* env = std::getenv("SBR_OUTPUT_ROOT"); env && *env)
    out_root = (fs::path(env) / fs::path(config.output_dir).filename()).string();
  fs::create_directories(out_root);

  ExperimentResult result;
  result.traces.resize(static_cast<std::size_t>(config.trials));

  int workers = config.workers > 0 ? config.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, config.trials));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.trials));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < config.trials; i = next.fetch_add(1)) {
        try {
          result.traces[static_cast<std::size_t>(i)] =
              run_one_trial(config, inst, test, budget, i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (int i = 0; i < config.trials; ++i) {
    const std::string path = (fs::path(out_root) / ("trace_trial" + std::to_string(i) + ".csv")).string();
    write_trace_csv(path, result.traces[static_cast<std::size_t>(i)], i);
    result.trace_paths.push_back(path);
  }

  result.aggregate = aggregate_traces(result.traces);
  result.aggregate_path = (fs::path(out_root) / "aggregate.csv").string();
  write_aggregate_csv(result.aggregate_path, result.aggregate);

  {
    std::ofstream out(fs::path(out_root) / "resolved_config.ini", std::ios::binary);
    out << config.resolved.canonical_text();
  }

  result.summary_path = (fs::path(out_root) / "summary.txt").string();
  {
    std::ofstream out(result.summary_path, std::ios::binary);
    out << "config_hash = " << config.config_hash << '\n';
    out << "trials = " << config.trials << '\n';
    long total_examples = 0, total_reads = 0;
    for (int i = 0; i < config.trials; ++i) {
      const auto& rows = result.traces[static_cast<std::size_t>(i)].rows;
      const auto& last = rows.back();
      total_examples += last.cum_examples;
      total_reads += last.cum_attribute_reads;
      out << "trial" << i << ".final_test_mse = " << fmt(last.metrics.test_mse) << '\n';
      if (last.metrics.excess_risk)
        out << "trial" << i << ".final_excess_risk = " << fmt(*last.metrics.excess_risk) << '\n';
      out << "trial" << i << ".examples = " << last.cum_examples << '\n';
      out << "trial" << i << ".attribute_reads = " << last.cum_attribute_reads << '\n';
    }
    out << "total_examples = " << total_examples << '\n';
    out << "total_attribute_reads = " << total_reads << '\n';
    if (!result.aggregate.empty()) {
      const auto& last = result.aggregate.back();
      out << "final_test_mse_mean = " << fmt(last.test_mse_mean) << '\n';
      out << "final_test_mse_2std = " << fmt(last.test_mse_2std) << '\n';
    }
  }
  return result;
}

}  // namespace sbr
