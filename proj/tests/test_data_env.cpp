#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sbr/data_env.hpp"

using namespace sbr;

namespace {

std::string write_temp_csv(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

SupportSet full_support(int d) {
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  return SupportSet(std::move(idx));
}

}  // namespace

TEST_CASE("Budget enforces the ordering 1 <= s* <= s < s' <= d") {
  CHECK_NOTHROW(Budget(10, 2, 3, 5));
  CHECK_THROWS_AS(Budget(10, 0, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(Budget(10, 4, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(Budget(10, 2, 5, 5), std::invalid_argument);  // needs s < s'
  CHECK_THROWS_AS(Budget(10, 2, 3, 11), std::invalid_argument);
}

TEST_CASE("block partition covers [0, d) with clipped last block") {
  const BlockPartition p = make_block_partition(500, 25);
  CHECK(p.block_count == 20);
  CHECK(p.range(0) == std::pair<int, int>{0, 24});
  CHECK(p.range(19) == std::pair<int, int>{475, 499});

  const BlockPartition q = make_block_partition(7, 3);
  CHECK(q.block_count == 3);
  CHECK(q.range(0) == std::pair<int, int>{0, 2});
  CHECK(q.range(1) == std::pair<int, int>{3, 5});
  CHECK(q.range(2) == std::pair<int, int>{6, 6});

  const BlockPartition r = make_block_partition(1, 1);
  CHECK(r.block_count == 1);
  CHECK(r.range(0) == std::pair<int, int>{0, 0});

  CHECK_THROWS_AS(make_block_partition(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_block_partition(5, 6), std::invalid_argument);
}

TEST_CASE("noiseless zero model yields y = 0") {
  const ProblemInstance inst = ProblemInstance::gaussian(DenseVector::zeros(4), 0.0);
  ObservationLedger ledger(4);
  RngStream rng(1);
  for (int i = 0; i < 20; ++i) CHECK(draw_example(inst, ledger, rng).y() == 0.0);
}

TEST_CASE("noiseless basis model: y equals the active coordinate") {
  DenseVector e1 = DenseVector::zeros(3);
  e1.set(0, 1.0);
  const ProblemInstance inst = ProblemInstance::gaussian(e1, 0.0);
  ObservationLedger ledger(3);
  RngStream rng(2);
  for (int i = 0; i < 20; ++i) {
    Example ex = draw_example(inst, ledger, rng);
    const PartialRow row = observe(ex, SupportSet(std::vector<int>{0}), ledger);
    CHECK(ex.y() == doctest::Approx(row.at(0)));
  }
}

TEST_CASE("label variance matches the noise law") {
  const ProblemInstance inst = ProblemInstance::gaussian(DenseVector::zeros(2), 1.0);
  ObservationLedger ledger(2);
  RngStream rng(3);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = draw_example(inst, ledger, rng).y();
    sum += y;
    sumsq += y * y;
  }
  const double var = sumsq / n - (sum / n) * (sum / n);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("observe returns requested coordinates and counts distinct reveals") {
  const ProblemInstance inst = ProblemInstance::gaussian(DenseVector::zeros(6), 0.0);
  ObservationLedger ledger(3);
  RngStream rng(4);
  Example ex = draw_example(inst, ledger, rng);

  CHECK(observe(ex, SupportSet{}, ledger).empty());
  CHECK(ledger.attribute_reads() == 0);

  const PartialRow a = observe(ex, SupportSet(std::vector<int>{1, 4}), ledger);
  CHECK(a.size() == 2);
  CHECK(ex.distinct_revealed() == 2);
  CHECK(ledger.attribute_reads() == 2);

  // re-reading is free
  observe(ex, SupportSet(std::vector<int>{1}), ledger);
  CHECK(ex.distinct_revealed() == 2);
  CHECK(ledger.attribute_reads() == 2);
}

TEST_CASE("observe throws BudgetExceeded at the s' boundary without truncating") {
  const ProblemInstance inst = ProblemInstance::gaussian(DenseVector::zeros(6), 0.0);
  ObservationLedger ledger(3);
  RngStream rng(5);
  Example ex = draw_example(inst, ledger, rng);
  observe(ex, SupportSet(std::vector<int>{0, 1, 2}), ledger);
  CHECK(ex.distinct_revealed() == 3);
  CHECK_THROWS_AS(observe(ex, SupportSet(std::vector<int>{3}), ledger), BudgetExceeded);
  CHECK(ex.distinct_revealed() == 3);  // nothing revealed by the failed call
  CHECK(ledger.attribute_reads() == 3);
}

TEST_CASE("the block-plus-support observation pattern always fits the budget") {
  // J_i has width s' - s and |supp(theta)| <= s, so their union is <= s'.
  const Budget budget(17, 2, 4, 9);
  const ProblemInstance inst = ProblemInstance::gaussian(DenseVector::zeros(17), 0.0);
  const BlockPartition part = make_block_partition(budget.d, budget.block_width());
  RngStream rng(6);
  ObservationLedger ledger(budget.s_prime);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> supp;
    for (int j = 0; j < budget.d && static_cast<int>(supp.size()) < budget.s; ++j)
      if (rng.uniform() < 0.3) supp.push_back(j);
    const SupportSet S(supp);
    const int block = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(part.block_count)));
    Example ex = draw_example(inst, ledger, rng);
    CHECK_NOTHROW(observe(ex, part.block_support(block).set_union(S), ledger));
    CHECK(ex.distinct_revealed() <= budget.s_prime);
  }
}

TEST_CASE("ledger totals equal the sum of per-example distinct counts") {
  const ProblemInstance inst = ProblemInstance::gaussian(DenseVector::zeros(8), 0.0);
  ObservationLedger ledger(5);
  RngStream rng(7);
  long expected_reads = 0;
  for (int i = 0; i < 50; ++i) {
    Example ex = draw_example(inst, ledger, rng);
    const int want = static_cast<int>(rng.uniform_below(6));
    std::vector<int> idx;
    for (int j = 0; j < want; ++j) idx.push_back(j);
    observe(ex, SupportSet(idx), ledger);
    observe(ex, SupportSet(idx), ledger);  // repeats are free
    expected_reads += ex.distinct_revealed();
  }
  CHECK(ledger.examples_drawn() == 50);
  CHECK(ledger.attribute_reads() == expected_reads);
}

TEST_CASE("bounded uniform law respects the sup-norm bound") {
  const ProblemInstance inst =
      ProblemInstance::uniform_bounded(DenseVector::zeros(10), 0.0, 2.5);
  ObservationLedger ledger(10);
  RngStream rng(8);
  double max_abs = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Example ex = draw_example(inst, ledger, rng);
    for (const auto& [j, v] : observe(ex, full_support(10), ledger))
      max_abs = std::max(max_abs, std::abs(v));
  }
  CHECK(max_abs <= 2.5);
  CHECK(inst.r_inf() == 2.5);
  CHECK(std::isinf(ProblemInstance::gaussian(DenseVector::zeros(2), 0.0).r_inf()));
}

TEST_CASE("generative consistency: sigma = 0 and full observation reproduce y") {
  const ProblemInstance inst = make_synthetic_instance(12, 4, 0.0);
  ObservationLedger ledger(12);
  RngStream rng(9);
  for (int i = 0; i < 100; ++i) {
    Example ex = draw_example(inst, ledger, rng);
    const PartialRow row = observe(ex, full_support(12), ledger);
    double dot = 0.0;
    for (int j = 0; j < 12; ++j) dot += inst.theta_star()[j] * row.at(j);
    CHECK(ex.y() == doctest::Approx(dot).epsilon(1e-12));
  }
}

TEST_CASE("split_train_test produces a seeded disjoint cover") {
  auto [train, test] = split_train_test(10, 0.9, 99);
  CHECK(train.size() == 9);
  CHECK(test.size() == 1);

  auto [t2, e2] = split_train_test(2, 0.5, 1);
  CHECK(t2.size() == 1);
  CHECK(e2.size() == 1);
  CHECK(t2[0] != e2[0]);

  auto [a1, b1] = split_train_test(100, 0.8, 7);
  auto [a2, b2] = split_train_test(100, 0.8, 7);
  CHECK(a1 == a2);
  CHECK(b1 == b2);

  CHECK_THROWS_AS(split_train_test(1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("standard synthetic benchmark instance") {
  const ProblemInstance inst = make_synthetic_benchmark();
  CHECK(inst.dim() == 500);
  const DenseVector& ts = inst.theta_star();
  CHECK(ts[12] == 1.0);   // 13th coefficient
  CHECK(ts[13] == -1.0);  // 14th coefficient
  CHECK(ts[25] == 0.0);   // 26th coefficient
  CHECK(support(ts).size() == 25);
  // excess risk of theta = 0 under identity covariance is ||theta*||^2 = 25
  CHECK(sq_distance(DenseVector::zeros(500), ts) == doctest::Approx(25.0));
}

TEST_CASE("CSV loading: split sizes, determinism, standardization") {
  std::string csv = "a,b,target\n";
  for (int i = 0; i < 10; ++i)
    csv += std::to_string(i) + "," + std::to_string(2 * i + 1) + "," + std::to_string(3 * i) + "\n";
  const std::string path = write_temp_csv("sbr_test_ok.csv", csv);

  CsvLoadOptions opts;
  opts.target_column = "target";
  opts.split_ratio = 0.9;
  opts.split_seed = 5;
  const ProblemInstance inst = load_csv_dataset(path, opts);
  CHECK(inst.dim() == 2);
  CHECK(inst.dataset().train_indices.size() == 9);
  CHECK(inst.dataset().test_indices.size() == 1);

  const ProblemInstance again = load_csv_dataset(path, opts);
  CHECK(inst.dataset().train_indices == again.dataset().train_indices);
  CHECK(inst.dataset().test_indices == again.dataset().test_indices);

  opts.standardize = true;
  const ProblemInstance std_inst = load_csv_dataset(path, opts);
  const auto& ds = std_inst.dataset();
  for (int c = 0; c < 2; ++c) {
    double mean = 0.0, var = 0.0;
    for (int r : ds.train_indices) mean += ds.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    mean /= static_cast<double>(ds.train_indices.size());
    for (int r : ds.train_indices) {
      const double diff = ds.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] - mean;
      var += diff * diff;
    }
    var /= static_cast<double>(ds.train_indices.size());
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(var - 1.0) < 1e-9);
  }

  // target by 1-based column index
  opts.standardize = false;
  opts.target_column = "3";
  CHECK(load_csv_dataset(path, opts).dim() == 2);
}

TEST_CASE("CSV loading reports malformed input") {
  CsvLoadOptions opts;
  opts.target_column = "y";

  const std::string bad_cell = write_temp_csv("sbr_test_bad.csv", "x,y\n1,2\noops,3\n");
  CHECK_THROWS_WITH_AS(load_csv_dataset(bad_cell, opts),
                       doctest::Contains("row 3"), std::runtime_error);

  const std::string missing = write_temp_csv("sbr_test_missing.csv", "x,z\n1,2\n3,4\n");
  CHECK_THROWS_WITH_AS(load_csv_dataset(missing, opts), doctest::Contains("target column"),
                       std::runtime_error);
}
