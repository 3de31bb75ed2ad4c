#pragma once

#include <optional>
#include <vector>

#include "sbr/data_env.hpp"
#include "sbr/sparse_core.hpp"

namespace sbr {

struct MetricSnapshot {
  double test_mse = 0.0;
  std::optional<double> excess_risk;  // only when the covariance is known exactly
  std::optional<double> support_precision;
  std::optional<double> support_recall;
  std::optional<double> support_f1;
  std::optional<double> l2_sq_error;  // ||theta - theta*||^2
};

// Held-out evaluation rows. Prediction honors the attribute budget: only
// supp(theta) of each row is read.
struct TestSet {
  std::vector<std::vector<double>> rows;
  std::vector<double> targets;

  static TestSet from_instance(const ProblemInstance& inst, int m, std::uint64_t seed);
  static TestSet from_dataset(const FiniteDataset& ds);
};

// (1/m) sum (theta' x - y)^2 reading only supp(theta) attributes per row.
// Requires |supp(theta)| <= s_prime. attribute_reads_out, when given,
// receives the number of attribute reads performed.
double test_mse(const DenseVector& theta, const TestSet& test, int s_prime,
                long* attribute_reads_out = nullptr);

// (theta - theta*)' Sigma (theta - theta*) for instances whose covariance
// is a known multiple of the identity; absent otherwise.
std::optional<double> exact_excess_risk(const DenseVector& theta, const ProblemInstance& inst);

struct SupportScores {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
};

// Set precision/recall/F1 of supp(theta) against supp(theta*); empty vs
// empty counts as perfect.
SupportScores support_scores(const DenseVector& theta, const DenseVector& theta_star);

// Smallest nonzero magnitude of theta*; throws on the zero vector.
double r_min(const DenseVector& theta_star);

MetricSnapshot evaluate_metrics(const DenseVector& theta, const ProblemInstance& inst,
                                const TestSet& test, int s_prime);

}  // namespace sbr
