#include <doctest.h>

#include <cmath>
#include <vector>

#include "sbr/estimators.hpp"

using namespace sbr;

namespace {

// Deterministic world with a single feature row, so estimators can be
// checked against hand-computed gradients.
ProblemInstance single_row_instance(std::vector<double> x, double y) {
  FiniteDataset ds;
  ds.rows.push_back(std::move(x));
  ds.targets.push_back(y);
  ds.train_indices = {0};
  ds.test_indices = {0};
  return ProblemInstance::finite(std::move(ds));
}

// Population gradient of E[(theta' x - y)^2] when x has covariance c * I and
// y = theta*' x (+ independent noise): 2 c (theta - theta*).
DenseVector population_gradient(const DenseVector& theta, const DenseVector& theta_star,
                                double cov_scale) {
  DenseVector g = DenseVector::zeros(theta.dim());
  for (int j = 0; j < theta.dim(); ++j)
    g.set(j, 2.0 * cov_scale * (theta[j] - theta_star[j]));
  return g;
}

}  // namespace

TEST_CASE("exploration gradient on a fixed row matches the hand computation") {
  // x = (2, 3), y = 0, theta = (1, 0): residual derivative 2(theta'x - y) = 4,
  // so the gradient is (8, 12).
  const ProblemInstance inst = single_row_instance({2.0, 3.0}, 0.0);
  DenseVector theta = DenseVector::zeros(2);
  theta.set(0, 1.0);

  ObservationLedger ledger(2);
  RngStream rng(1);
  const BlockPartition part = make_block_partition(2, 1);
  const GradientEstimate est = exploration_gradient(theta, part, 1, inst, ledger, rng);

  CHECK(est.g[0] == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(est.g[1] == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(est.valid_support.size() == 2);
  CHECK(est.samples_used == 2);  // one fresh example per block
  // block 0 reveals {0} (block ∪ supp); block 1 reveals {0, 1}
  CHECK(est.attribute_reads == 3);
}

TEST_CASE("exploitation gradient on a fixed row matches the hand computation") {
  const ProblemInstance inst = single_row_instance({2.0, 3.0, 5.0}, 1.0);
  DenseVector theta = DenseVector::zeros(3);
  theta.set(0, 1.0);
  const SupportSet S0(std::vector<int>{0, 2});

  ObservationLedger ledger(2);
  RngStream rng(1);
  const GradientEstimate est = exploitation_gradient(theta, S0, 4, inst, ledger, rng);

  // prediction restricted to S0 is 2; derivative 2(2 - 1) = 2.
  CHECK(est.g[0] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(est.g[1] == 0.0);  // structurally zero off S0
  CHECK(est.g[2] == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(est.valid_support == S0);
  CHECK(est.samples_used == 4);
  CHECK(est.attribute_reads == 4 * 2);
}

TEST_CASE("gradient vanishes at the truth when there is no noise") {
  const ProblemInstance inst = make_synthetic_instance(12, 4, 0.0);
  const DenseVector& theta = inst.theta_star();
  ObservationLedger ledger(12);
  RngStream rng(2);
  const BlockPartition part = make_block_partition(12, 4);
  const GradientEstimate est = exploration_gradient(theta, part, 3, inst, ledger, rng);
  for (int j = 0; j < 12; ++j) CHECK(std::abs(est.g[j]) < 1e-12);
}

TEST_CASE("exploitation gradient rejects invalid supports") {
  const ProblemInstance inst = make_synthetic_instance(8, 2, 0.0);
  ObservationLedger ledger(3);
  RngStream rng(3);
  DenseVector theta = DenseVector::zeros(8);
  theta.set(5, 1.0);

  // |S0| > s'
  CHECK_THROWS_AS(exploitation_gradient(theta, SupportSet(std::vector<int>{0, 1, 2, 5}), 1, inst,
                                        ledger, rng),
                  std::invalid_argument);
  // supp(theta) not within S0
  CHECK_THROWS_AS(exploitation_gradient(theta, SupportSet(std::vector<int>{0, 1}), 1, inst,
                                        ledger, rng),
                  std::invalid_argument);
  CHECK(ledger.examples_drawn() == 0);  // both rejected before touching data
}

TEST_CASE("exploration blocks draw disjoint fresh batches") {
  const ProblemInstance inst = make_synthetic_instance(10, 2, 1.0);
  ObservationLedger ledger(5);
  RngStream rng(4);
  const BlockPartition part = make_block_partition(10, 3);  // 4 blocks

  const long before = ledger.examples_drawn();
  const GradientEstimate est = exploration_gradient(inst.theta_star(), part, 7, inst, ledger, rng);
  CHECK(est.samples_used == 4 * 7);
  CHECK(ledger.examples_drawn() - before == 4 * 7);
}

TEST_CASE("exploration per-example cost is |block ∪ supp(theta)|") {
  const Budget budget(11, 2, 3, 7);
  const ProblemInstance inst = make_synthetic_instance(11, 2, 0.5);
  const BlockPartition part = make_block_partition(budget.d, budget.block_width());
  DenseVector theta = DenseVector::zeros(11);
  theta.set(0, 0.5);   // inside block 0
  theta.set(9, -0.5);  // inside the clipped last block
  theta.set(10, 0.25);

  long expected_per_sweep = 0;
  for (int i = 0; i < part.block_count; ++i)
    expected_per_sweep += part.block_support(i).set_union(support(theta)).size();

  ObservationLedger ledger(budget.s_prime);
  RngStream rng(5);
  const int B = 3;
  const GradientEstimate est = exploration_gradient(theta, part, B, inst, ledger, rng);
  CHECK(est.attribute_reads == B * expected_per_sweep);
  CHECK(est.attribute_reads == ledger.attribute_reads());
}

TEST_CASE("exploration estimator is unbiased under the Gaussian law") {
  const int d = 6;
  DenseVector theta_star = DenseVector::zeros(d);
  theta_star.set(0, 1.0);
  theta_star.set(3, -2.0);
  const ProblemInstance inst = ProblemInstance::gaussian(theta_star, 0.5);

  DenseVector theta = DenseVector::zeros(d);
  theta.set(0, 0.5);
  theta.set(1, 1.5);
  const DenseVector truth = population_gradient(theta, theta_star, 1.0);

  const BlockPartition part = make_block_partition(d, 2);
  ObservationLedger ledger(4);
  RngStream rng(6);

  const int n = 20000;
  std::vector<double> sum(static_cast<std::size_t>(d), 0.0);
  std::vector<double> sumsq(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < n; ++i) {
    const GradientEstimate est = exploration_gradient(theta, part, 1, inst, ledger, rng);
    for (int j = 0; j < d; ++j) {
      sum[static_cast<std::size_t>(j)] += est.g[j];
      sumsq[static_cast<std::size_t>(j)] += est.g[j] * est.g[j];
    }
  }
  for (int j = 0; j < d; ++j) {
    const double mean = sum[static_cast<std::size_t>(j)] / n;
    const double var =
        (sumsq[static_cast<std::size_t>(j)] - n * mean * mean) / (n - 1);
    const double se = std::sqrt(var / n);
    CHECK(std::abs(mean - truth[j]) <= 5.0 * se + 1e-12);
  }
}

TEST_CASE("exploitation estimator is unbiased on its support") {
  const int d = 6;
  DenseVector theta_star = DenseVector::zeros(d);
  theta_star.set(2, 1.0);
  const ProblemInstance inst = ProblemInstance::gaussian(theta_star, 1.0);

  DenseVector theta = DenseVector::zeros(d);
  theta.set(2, 0.25);
  theta.set(4, -1.0);
  const SupportSet S0(std::vector<int>{2, 4});
  const DenseVector truth = population_gradient(theta, theta_star, 1.0);

  ObservationLedger ledger(3);
  RngStream rng(7);
  const int n = 20000;
  double sum2 = 0.0, sumsq2 = 0.0, sum4 = 0.0, sumsq4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const GradientEstimate est = exploitation_gradient(theta, S0, 1, inst, ledger, rng);
    sum2 += est.g[2];
    sumsq2 += est.g[2] * est.g[2];
    sum4 += est.g[4];
    sumsq4 += est.g[4] * est.g[4];
    CHECK(est.g[0] == 0.0);
  }
  const auto check_coord = [n](double s, double ss, double truth_j) {
    const double mean = s / n;
    const double se = std::sqrt(((ss - n * mean * mean) / (n - 1)) / n);
    CHECK(std::abs(mean - truth_j) <= 5.0 * se + 1e-12);
  };
  check_coord(sum2, sumsq2, truth[2]);
  check_coord(sum4, sumsq4, truth[4]);
}

TEST_CASE("naive randomized estimator is unbiased and stays on budget") {
  const int d = 8;
  DenseVector theta_star = DenseVector::zeros(d);
  theta_star.set(1, 1.0);
  const ProblemInstance inst = ProblemInstance::gaussian(theta_star, 0.0);
  const Budget budget(d, 1, 2, 5);

  DenseVector theta = DenseVector::zeros(d);
  theta.set(1, 0.5);
  theta.set(6, 1.0);
  const DenseVector truth = population_gradient(theta, theta_star, 1.0);

  ObservationLedger ledger(budget.s_prime);
  RngStream rng(8);
  const int n = 60000;
  std::vector<double> sum(static_cast<std::size_t>(d), 0.0);
  std::vector<double> sumsq(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < n; ++i) {
    const GradientEstimate est = naive_random_gradient(theta, budget, inst, ledger, rng);
    CHECK(est.valid_support.size() == budget.block_width());
    CHECK(est.samples_used == 1);
    CHECK(est.attribute_reads ==
          est.valid_support.set_union(support(theta)).size());
    for (int j = 0; j < d; ++j) {
      sum[static_cast<std::size_t>(j)] += est.g[j];
      sumsq[static_cast<std::size_t>(j)] += est.g[j] * est.g[j];
    }
  }
  for (int j = 0; j < d; ++j) {
    const double mean = sum[static_cast<std::size_t>(j)] / n;
    const double var =
        (sumsq[static_cast<std::size_t>(j)] - n * mean * mean) / (n - 1);
    const double se = std::sqrt(var / n);
    CHECK(std::abs(mean - truth[j]) <= 5.0 * se + 1e-12);
  }
}
