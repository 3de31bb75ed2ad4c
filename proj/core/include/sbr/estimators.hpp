#pragma once

#include "sbr/data_env.hpp"
#include "sbr/sparse_core.hpp"

namespace sbr {

// A stochastic gradient with the coordinates it actually estimated and the
// data cost it incurred. g is zero outside valid_support.
struct GradientEstimate {
  DenseVector g;
  SupportSet valid_support;
  long samples_used = 0;
  long attribute_reads = 0;
};

// Derivative of the squared loss (a - y)^2 in its prediction argument.
inline double loss_derivative(double prediction, double target) {
  return 2.0 * (prediction - target);
}

// Block-wise unbiased estimator of the full gradient at an s-sparse point.
// Each block of the partition gets its own batch of fresh examples; per
// example only the block plus supp(theta) is observed, which fits the s'
// budget since the block width is s' - s. Draw order is block-major, then
// batch, so traces replay bit-for-bit per seed.
GradientEstimate exploration_gradient(const DenseVector& theta, const BlockPartition& part,
                                      int batch_size, const ProblemInstance& inst,
                                      ObservationLedger& ledger, RngStream& rng);

// Gradient restricted to a fixed support S0: one batch of fresh examples,
// observing only S0 on each; coordinates outside S0 are structurally zero.
// Requires supp(theta) within S0 and |S0| <= s'.
GradientEstimate exploitation_gradient(const DenseVector& theta, const SupportSet& S0,
                                       int batch_size, const ProblemInstance& inst,
                                       ObservationLedger& ledger, RngStream& rng);

// Single-sample randomized estimator used by the naive baseline: observes
// supp(theta) plus a random (s' - s)-subset S, and scales the restriction to
// S by d / (s' - s) to stay unbiased.
GradientEstimate naive_random_gradient(const DenseVector& theta, const Budget& budget,
                                       const ProblemInstance& inst, ObservationLedger& ledger,
                                       RngStream& rng);

}  // namespace sbr
