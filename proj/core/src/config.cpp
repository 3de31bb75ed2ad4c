#include "sbr/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace sbr {

namespace {

std::string trim(const std::string& s) {
  auto b = s.begin(), e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return std::string(b, e);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
  KeyValueConfig cfg;
  std::stringstream ss(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);  // inline comments
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("unterminated section at line " + std::to_string(line_no));
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(line_no));
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(line_no));
    cfg.values_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long KeyValueConfig::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos;
    const long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not an integer: " + v);
  }
}

long KeyValueConfig::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not a number: " + v);
  }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  std::string v = get_string(key);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key " + key + " is not a boolean: " + v);
}

std::string KeyValueConfig::canonical_text() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

AlgorithmKind parse_algorithm(const std::string& name) {
  if (name == "exploration") return AlgorithmKind::Exploration;
  if (name == "exploitation") return AlgorithmKind::Exploitation;
  if (name == "hybrid") return AlgorithmKind::Hybrid;
  if (name == "naive") return AlgorithmKind::Naive;
  if (name == "full-info") return AlgorithmKind::FullInfo;
  throw ConfigError("unknown algorithm: " + name);
}

ScheduleKind parse_schedule_kind(const std::string& name) {
  if (name == "constant") return ScheduleKind::Constant;
  if (name == "geometric") return ScheduleKind::Geometric;
  if (name == "theory-exploration") return ScheduleKind::TheoryExploration;
  if (name == "theory-exploitation") return ScheduleKind::TheoryExploitation;
  if (name == "theory-hybrid") return ScheduleKind::TheoryHybrid;
  throw ConfigError("unknown schedule kind: " + name);
}

BatchSchedule parse_schedule(const KeyValueConfig& raw, const std::string& section, double sigma) {
  BatchSchedule s;
  s.kind = parse_schedule_kind(raw.get_string(section + ".kind", "constant"));
  s.base = static_cast<int>(raw.get_int(section + ".base", 1));
  s.ratio = raw.get_double(section + ".ratio", 1.1);
  s.c_B = raw.get_double(section + ".c_B", 1.0);
  s.horizon_T = static_cast<int>(raw.get_int(section + ".T", 1));
  s.stage_k = static_cast<int>(raw.get_int(section + ".k", 1));
  s.target_delta = raw.get_double(section + ".Delta", 1.0);
  s.confidence = raw.get_double(section + ".delta", 0.1);
  s.sigma = raw.get_double(section + ".sigma", sigma);
  return s;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& raw) {
  ExperimentConfig cfg;
  cfg.algorithm = parse_algorithm(raw.get_string("algorithm.name"));

  const std::string source = raw.get_string("data.source", "synthetic");
  if (source == "synthetic") {
    cfg.synthetic = true;
    cfg.d = static_cast<int>(raw.get_int("data.d", 500));
    cfg.s_star = static_cast<int>(raw.get_int("data.s_star", 25));
    cfg.sigma = raw.get_double("data.sigma", 1.0);
    cfg.feature_law = raw.get_string("data.law", "gaussian");
    cfg.r_inf = raw.get_double("data.r_inf", 1.0);
    if (cfg.feature_law != "gaussian" && cfg.feature_law != "uniform")
      throw ConfigError("data.law must be gaussian or uniform");
  } else if (source == "csv") {
    cfg.synthetic = false;
    cfg.csv_path = raw.get_string("data.path");
    cfg.csv_target = raw.get_string("data.target");
    cfg.split_ratio = raw.get_double("data.split_ratio", 0.9);
    cfg.split_seed = static_cast<std::uint64_t>(raw.get_int("data.split_seed", 0));
    cfg.standardize = raw.get_bool("data.standardize", false);
    cfg.s_star = 1;
  } else {
    throw ConfigError("data.source must be synthetic or csv");
  }
  cfg.n_test = static_cast<int>(raw.get_int("data.n_test", 2000));

  cfg.s = static_cast<int>(raw.get_int("budget.s"));
  cfg.s_prime = static_cast<int>(raw.get_int("budget.s_prime"));
  cfg.s_star = static_cast<int>(raw.get_int("budget.s_star", cfg.s_star));

  cfg.profile.L_s = raw.get_double("profile.L_s", 1.0);
  cfg.profile.mu_s = raw.get_double("profile.mu_s", 1.0);
  cfg.profile.r_inf = raw.get_double("profile.r_inf", 1.0);
  cfg.profile.alpha_check =
      raw.get_double("profile.alpha_check", 1.0 / (32.0 * cfg.profile.kappa()));

  cfg.eta = raw.get_double("algorithm.eta", 1.0 / (4.0 * cfg.profile.L_s));
  cfg.T = static_cast<int>(raw.get_int("algorithm.T", 1));
  cfg.K = static_cast<int>(raw.get_int("algorithm.K", 1));
  cfg.T_k = static_cast<int>(raw.get_int("algorithm.T_k", 1));
  cfg.T_minus = static_cast<int>(raw.get_int("algorithm.T_minus", 3));

  cfg.schedule = parse_schedule(raw, "schedule", cfg.sigma);
  cfg.exploit_schedule =
      raw.has("exploit_schedule.kind") ? parse_schedule(raw, "exploit_schedule", cfg.sigma)
                                       : cfg.schedule;

  cfg.trials = static_cast<int>(raw.get_int("run.trials", 5));
  cfg.base_seed = static_cast<std::uint64_t>(raw.get_int("run.seed", 0));
  cfg.metric_cadence = static_cast<int>(raw.get_int("run.metric_cadence", 1));
  cfg.record_timing = raw.get_bool("run.record_timing", false);
  cfg.workers = static_cast<int>(raw.get_int("run.workers", 0));
  cfg.output_dir = raw.get_string("run.output_dir", "out");

  if (cfg.trials < 1) throw ConfigError("run.trials must be >= 1");
  if (cfg.metric_cadence < 1) throw ConfigError("run.metric_cadence must be >= 1");

  // For synthetic data the dimension is known now, so the budget ordering
  // can be rejected before any work happens. CSV runs re-check after the
  // dataset fixes d.
  if (cfg.synthetic) {
    const int sp = cfg.algorithm == AlgorithmKind::FullInfo ? cfg.d : cfg.s_prime;
    try {
      Budget check(cfg.d, cfg.s_star, cfg.s, sp);
      (void)check;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  cfg.resolved = raw;
  cfg.config_hash = fnv1a_hex(raw.canonical_text());
  return cfg;
}

}  // namespace sbr
