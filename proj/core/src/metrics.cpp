#include "sbr/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace sbr {

TestSet TestSet::from_instance(const ProblemInstance& inst, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("TestSet: m < 1");
  TestSet t;
  t.rows.reserve(static_cast<std::size_t>(m));
  t.targets.reserve(static_cast<std::size_t>(m));
  RngStream rng(seed);
  ObservationLedger scratch(inst.dim());
  for (int i = 0; i < m; ++i) {
    Example ex = draw_example(inst, scratch, rng);
    std::vector<int> all(static_cast<std::size_t>(inst.dim()));
    for (int j = 0; j < inst.dim(); ++j) all[static_cast<std::size_t>(j)] = j;
    PartialRow row = observe(ex, SupportSet(std::move(all)), scratch);
    std::vector<double> dense(static_cast<std::size_t>(inst.dim()));
    for (int j = 0; j < inst.dim(); ++j) dense[static_cast<std::size_t>(j)] = row.at(j);
    t.rows.push_back(std::move(dense));
    t.targets.push_back(ex.y());
  }
  return t;
}

TestSet TestSet::from_dataset(const FiniteDataset& ds) {
  TestSet t;
  for (int r : ds.test_indices) {
    t.rows.push_back(ds.rows[static_cast<std::size_t>(r)]);
    t.targets.push_back(ds.targets[static_cast<std::size_t>(r)]);
  }
  return t;
}

double test_mse(const DenseVector& theta, const TestSet& test, int s_prime,
                long* attribute_reads_out) {
  if (test.rows.empty()) throw std::invalid_argument("test_mse: empty test set");
  const SupportSet S = support(theta);
  if (S.size() > s_prime)
    throw std::invalid_argument("test_mse: |supp(theta)| exceeds the prediction budget s'");
  long reads = 0;
  double acc = 0.0;
  for (std::size_t i = 0; i < test.rows.size(); ++i) {
    const auto& x = test.rows[i];
    double pred = 0.0;
    for (int j : S) {
      pred += theta[j] * x[static_cast<std::size_t>(j)];
      ++reads;
    }
    const double resid = pred - test.targets[i];
    acc += resid * resid;
  }
  if (attribute_reads_out) *attribute_reads_out = reads;
  return acc / static_cast<double>(test.rows.size());
}

std::optional<double> exact_excess_risk(const DenseVector& theta, const ProblemInstance& inst) {
  const auto scale = inst.covariance_scale();
  if (!scale || !inst.has_theta_star()) return std::nullopt;
  return *scale * sq_distance(theta, inst.theta_star());
}

SupportScores support_scores(const DenseVector& theta, const DenseVector& theta_star) {
  const SupportSet s = support(theta);
  const SupportSet s_star = support(theta_star);
  SupportScores out;
  if (s.empty() && s_star.empty()) return out;  // all 1 by convention
  int hits = 0;
  for (int j : s)
    if (s_star.contains(j)) ++hits;
  out.precision = s.empty() ? 0.0 : static_cast<double>(hits) / s.size();
  out.recall = s_star.empty() ? 0.0 : static_cast<double>(hits) / s_star.size();
  out.f1 = (out.precision + out.recall) > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

double r_min(const DenseVector& theta_star) {
  double best = 0.0;
  bool found = false;
  for (int j = 0; j < theta_star.dim(); ++j) {
    const double m = std::abs(theta_star[j]);
    if (m > 0.0 && (!found || m < best)) {
      best = m;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("r_min: zero vector");
  return best;
}

MetricSnapshot evaluate_metrics(const DenseVector& theta, const ProblemInstance& inst,
                                const TestSet& test, int s_prime) {
  MetricSnapshot snap;
  snap.test_mse = test_mse(theta, test, s_prime);
  snap.excess_risk = exact_excess_risk(theta, inst);
  if (inst.has_theta_star()) {
    const SupportScores sc = support_scores(theta, inst.theta_star());
    snap.support_precision = sc.precision;
    snap.support_recall = sc.recall;
    snap.support_f1 = sc.f1;
    snap.l2_sq_error = sq_distance(theta, inst.theta_star());
  }
  return snap;
}

}  // namespace sbr
