#include "sbr/estimators.hpp"

#include <algorithm>
#include <stdexcept>

namespace sbr {

GradientEstimate exploration_gradient(const DenseVector& theta, const BlockPartition& part,
                                      int batch_size, const ProblemInstance& inst,
                                      ObservationLedger& ledger, RngStream& rng) {
  if (batch_size < 1) throw std::invalid_argument("exploration_gradient: batch size < 1");
  if (theta.dim() != part.d)
    throw std::invalid_argument("exploration_gradient: dimension mismatch");

  const SupportSet S = support(theta);
  const long reads_before = ledger.attribute_reads();

  DenseVector g = DenseVector::zeros(part.d);
  for (int i = 0; i < part.block_count; ++i) {
    const SupportSet block = part.block_support(i);
    const SupportSet wanted = block.set_union(S);
    auto [lo, hi] = part.range(i);
    for (int b = 0; b < batch_size; ++b) {
      Example ex = draw_example(inst, ledger, rng);
      const PartialRow row = observe(ex, wanted, ledger);
      const double deriv = loss_derivative(restricted_dot(theta, row, S), ex.y());
      for (int j = lo; j <= hi; ++j) g.set(j, g[j] + deriv * row.at(j));
    }
  }
  const double inv_b = 1.0 / batch_size;
  for (int j = 0; j < part.d; ++j) g.set(j, g[j] * inv_b);

  std::vector<int> all(static_cast<std::size_t>(part.d));
  for (int j = 0; j < part.d; ++j) all[static_cast<std::size_t>(j)] = j;
  GradientEstimate est;
  est.g = std::move(g);
  est.valid_support = SupportSet(std::move(all));
  est.samples_used = static_cast<long>(part.block_count) * batch_size;
  est.attribute_reads = ledger.attribute_reads() - reads_before;
  return est;
}

GradientEstimate exploitation_gradient(const DenseVector& theta, const SupportSet& S0,
                                       int batch_size, const ProblemInstance& inst,
                                       ObservationLedger& ledger, RngStream& rng) {
  if (batch_size < 1) throw std::invalid_argument("exploitation_gradient: batch size < 1");
  if (S0.size() > ledger.s_prime())
    throw std::invalid_argument("exploitation_gradient: |S0| exceeds the attribute budget s'");
  if (!support(theta).is_subset_of(S0))
    throw std::invalid_argument("exploitation_gradient: supp(theta) not contained in S0");

  const long reads_before = ledger.attribute_reads();
  DenseVector g = DenseVector::zeros(theta.dim());
  for (int b = 0; b < batch_size; ++b) {
    Example ex = draw_example(inst, ledger, rng);
    const PartialRow row = observe(ex, S0, ledger);
    const double deriv = loss_derivative(restricted_dot(theta, row, S0), ex.y());
    for (int j : S0) g.set(j, g[j] + deriv * row.at(j));
  }
  const double inv_b = 1.0 / batch_size;
  for (int j : S0) g.set(j, g[j] * inv_b);

  GradientEstimate est;
  est.g = std::move(g);
  est.valid_support = S0;
  est.samples_used = batch_size;
  est.attribute_reads = ledger.attribute_reads() - reads_before;
  return est;
}

GradientEstimate naive_random_gradient(const DenseVector& theta, const Budget& budget,
                                       const ProblemInstance& inst, ObservationLedger& ledger,
                                       RngStream& rng) {
  const SupportSet S = support(theta);
  const int width = budget.block_width();
  const long reads_before = ledger.attribute_reads();

  // Floyd's sampling of a width-sized random subset of [0, d).
  std::vector<int> sampled;
  sampled.reserve(static_cast<std::size_t>(width));
  for (int j = budget.d - width; j < budget.d; ++j) {
    const int t = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(j) + 1));
    if (std::find(sampled.begin(), sampled.end(), t) == sampled.end())
      sampled.push_back(t);
    else
      sampled.push_back(j);
  }
  const SupportSet random_set{std::move(sampled)};

  Example ex = draw_example(inst, ledger, rng);
  const PartialRow row = observe(ex, random_set.set_union(S), ledger);
  const double deriv = loss_derivative(restricted_dot(theta, row, S), ex.y());
  const double scale = static_cast<double>(budget.d) / width;

  DenseVector g = DenseVector::zeros(budget.d);
  for (int j : random_set) g.set(j, deriv * scale * row.at(j));

  GradientEstimate est;
  est.g = std::move(g);
  est.valid_support = random_set;
  est.samples_used = 1;
  est.attribute_reads = ledger.attribute_reads() - reads_before;
  return est;
}

}  // namespace sbr
