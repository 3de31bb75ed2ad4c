#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sbr/data_env.hpp"

namespace sbr {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& cell, double& out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end != '\0') {
    if (!std::isspace(static_cast<unsigned char>(*end))) return false;
    ++end;
  }
  return std::isfinite(out);
}

}  // namespace

ProblemInstance load_csv_dataset(const std::string& path, const CsvLoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv_dataset: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_csv_dataset: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_line(line);
  const int n_cols = static_cast<int>(header.size());
  if (n_cols < 2) throw std::runtime_error("load_csv_dataset: need at least two columns");

  // Target selected by header name, or by 1-based column index when the
  // selector is itself numeric.
  int target = -1;
  for (int c = 0; c < n_cols; ++c)
    if (header[static_cast<std::size_t>(c)] == opts.target_column) target = c;
  if (target < 0) {
    double as_num;
    if (parse_number(opts.target_column, as_num)) {
      const int idx = static_cast<int>(as_num);
      if (idx >= 1 && idx <= n_cols && static_cast<double>(idx) == as_num) target = idx - 1;
    }
  }
  if (target < 0)
    throw std::runtime_error("load_csv_dataset: target column '" + opts.target_column +
                             "' not found");

  FiniteDataset ds;
  int row_no = 1;  // header was row 1
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (static_cast<int>(cells.size()) != n_cols)
      throw std::runtime_error("load_csv_dataset: row " + std::to_string(row_no) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(n_cols));
    std::vector<double> feats;
    feats.reserve(static_cast<std::size_t>(n_cols - 1));
    for (int c = 0; c < n_cols; ++c) {
      double v;
      if (!parse_number(cells[static_cast<std::size_t>(c)], v))
        throw std::runtime_error("load_csv_dataset: non-numeric cell at row " +
                                 std::to_string(row_no) + ", column " + std::to_string(c + 1));
      if (c == target)
        ds.targets.push_back(v);
      else
        feats.push_back(v);
    }
    ds.rows.push_back(std::move(feats));
  }
  const int n = static_cast<int>(ds.rows.size());
  if (n < 2) throw std::runtime_error("load_csv_dataset: need at least two data rows");

  auto [train, test] = split_train_test(n, opts.split_ratio, opts.split_seed);
  ds.train_indices = std::move(train);
  ds.test_indices = std::move(test);

  if (opts.standardize) {
    // Mean/variance from the training split only, applied to every row.
    const int d = static_cast<int>(ds.rows.front().size());
    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    std::vector<double> scale(static_cast<std::size_t>(d), 0.0);
    for (int r : ds.train_indices)
      for (int c = 0; c < d; ++c)
        mean[static_cast<std::size_t>(c)] += ds.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    const double m = static_cast<double>(ds.train_indices.size());
    for (double& v : mean) v /= m;
    for (int r : ds.train_indices)
      for (int c = 0; c < d; ++c) {
        const double diff =
            ds.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] - mean[static_cast<std::size_t>(c)];
        scale[static_cast<std::size_t>(c)] += diff * diff;
      }
    for (double& v : scale) {
      v = std::sqrt(v / m);
      if (v == 0.0) v = 1.0;  // constant column: center only
    }
    for (auto& row : ds.rows)
      for (int c = 0; c < d; ++c)
        row[static_cast<std::size_t>(c)] =
            (row[static_cast<std::size_t>(c)] - mean[static_cast<std::size_t>(c)]) / scale[static_cast<std::size_t>(c)];
  }

  return ProblemInstance::finite(std::move(ds));
}

}  // namespace sbr
