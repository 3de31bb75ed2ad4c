#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "sbr/schedules.hpp"

namespace sbr {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat INI-style key-value configuration: [section] headers, key = value
// lines, '#' comments. Keys are addressed as "section.key".
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  // Canonical text form: sorted keys, one per line. Written back next to run
  // outputs and hashed into run metadata.
  std::string canonical_text() const;

 private:
  std::map<std::string, std::string> values_;
};

std::string fnv1a_hex(const std::string& text);

enum class AlgorithmKind { Exploration, Exploitation, Hybrid, Naive, FullInfo };

struct ExperimentConfig {
  AlgorithmKind algorithm = AlgorithmKind::Exploration;

  // data
  bool synthetic = true;
  int d = 0;
  int n_test = 2000;           // synthetic held-out rows
  double sigma = 1.0;
  std::string feature_law = "gaussian";  // or "uniform"
  double r_inf = 1.0;                    // uniform law bound
  std::string csv_path;
  std::string csv_target;
  double split_ratio = 0.9;
  std::uint64_t split_seed = 0;
  bool standardize = false;

  // budget
  int s_star = 1;
  int s = 1;
  int s_prime = 2;

  // optimizer
  double eta = 0.25;
  int T = 1;
  int K = 1;
  int T_k = 1;
  int T_minus = 3;
  BatchSchedule schedule;          // exploration / single-loop schedule
  BatchSchedule exploit_schedule;  // hybrid's exploitation schedule
  SmoothnessProfile profile;

  // run protocol
  int trials = 5;
  std::uint64_t base_seed = 0;
  int metric_cadence = 1;
  bool record_timing = false;
  int workers = 0;  // 0 = hardware concurrency
  std::string output_dir = "out";

  std::string config_hash;
  KeyValueConfig resolved;

  static ExperimentConfig from_config(const KeyValueConfig& raw);
};

}  // namespace sbr
