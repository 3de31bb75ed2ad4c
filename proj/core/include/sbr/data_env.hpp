#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sbr/rng.hpp"
#include "sbr/sparse_core.hpp"

namespace sbr {

// Raised when an algorithm attempts to reveal more than s' distinct
// attributes of one example. Indicates a bug in the caller; runs must abort
// rather than truncate the request.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparsity and observation limits: 1 <= s* <= s < s' <= d.
struct Budget {
  int d;
  int s_star;
  int s;
  int s_prime;

  Budget(int d_, int s_star_, int s_, int s_prime_);
  int block_width() const { return s_prime - s; }
};

// Consecutive index ranges of a fixed width covering [0, d); the last block
// is clipped at d.
struct BlockPartition {
  int d = 0;
  int width = 0;
  int block_count = 0;  // ceil(d / width)

  static BlockPartition make(int d, int width);

  // Inclusive 0-based range of block i.
  std::pair<int, int> range(int i) const;
  SupportSet block_support(int i) const;
};

class Example;

// Per-run accounting of data access. Per-example distinct-attribute counts
// live on the examples themselves; the ledger tracks global totals and owns
// the s' limit used for enforcement.
class ObservationLedger {
 public:
  explicit ObservationLedger(int s_prime) : s_prime_(s_prime) {}

  int s_prime() const { return s_prime_; }
  long examples_drawn() const { return examples_drawn_; }
  long attribute_reads() const { return attribute_reads_; }

 private:
  friend Example draw_example(const class ProblemInstance&, ObservationLedger&, RngStream&);
  friend PartialRow observe(Example&, const SupportSet&, ObservationLedger&);

  int s_prime_;
  long examples_drawn_ = 0;
  long attribute_reads_ = 0;  // distinct reveals, summed over examples
};

// One (x, y) draw. The label y is always visible; x only through observe().
class Example {
 public:
  double y() const { return y_; }
  long id() const { return id_; }
  int distinct_revealed() const { return revealed_count_; }

 private:
  friend Example draw_example(const class ProblemInstance&, ObservationLedger&, RngStream&);
  friend PartialRow observe(Example&, const SupportSet&, ObservationLedger&);

  std::vector<double> x_;
  double y_ = 0.0;
  long id_ = 0;
  std::vector<char> revealed_;
  int revealed_count_ = 0;
};

enum class FeatureLaw { GaussianIid, UniformIid, FiniteDataset };

// A finite dataset: rows sampled uniformly with replacement from the
// training split; a held-out test split for evaluation.
struct FiniteDataset {
  std::vector<std::vector<double>> rows;  // features, row-major
  std::vector<double> targets;
  std::vector<int> train_indices;
  std::vector<int> test_indices;
};

// The data world of one experiment: either a generative model
// y = theta*' x + noise with an i.i.d. feature law, or a finite dataset.
class ProblemInstance {
 public:
  // Standard normal features; R_inf is unbounded (recorded as +inf).
  static ProblemInstance gaussian(DenseVector theta_star, double sigma);
  // Features i.i.d. uniform on [-r_inf, r_inf].
  static ProblemInstance uniform_bounded(DenseVector theta_star, double sigma, double r_inf);
  static ProblemInstance finite(FiniteDataset data);

  int dim() const { return dim_; }
  FeatureLaw law() const { return law_; }
  double sigma() const { return sigma_; }
  double r_inf() const { return r_inf_; }

  bool has_theta_star() const { return theta_star_.has_value(); }
  const DenseVector& theta_star() const { return theta_star_.value(); }

  // E[x x'] is a scalar multiple of the identity for the synthetic laws;
  // absent for finite datasets.
  std::optional<double> covariance_scale() const;

  bool has_dataset() const { return dataset_.has_value(); }
  const FiniteDataset& dataset() const { return dataset_.value(); }

 private:
  ProblemInstance() = default;

  friend Example draw_example(const ProblemInstance&, ObservationLedger&, RngStream&);

  int dim_ = 0;
  FeatureLaw law_ = FeatureLaw::GaussianIid;
  double sigma_ = 0.0;
  double r_inf_ = 0.0;
  std::optional<DenseVector> theta_star_;
  std::optional<FiniteDataset> dataset_;
};

BlockPartition make_block_partition(int d, int width);

Example draw_example(const ProblemInstance& inst, ObservationLedger& ledger, RngStream& rng);

// Reveals the requested coordinates. Already-revealed indices are free;
// throws BudgetExceeded (before revealing anything) if the distinct total
// would pass s'.
PartialRow observe(Example& ex, const SupportSet& attrs, ObservationLedger& ledger);

// Disjoint cover of [0, n); |train| = round(ratio * n).
std::pair<std::vector<int>, std::vector<int>> split_train_test(int n, double ratio,
                                                               std::uint64_t seed);

struct CsvLoadOptions {
  std::string target_column;   // header name, or 1-based index if numeric
  double split_ratio = 0.9;
  std::uint64_t split_seed = 0;
  bool standardize = false;    // per-column mean-0/var-1 from the training split
};

ProblemInstance load_csv_dataset(const std::string& path, const CsvLoadOptions& opts);

// The standard synthetic benchmark instance: d = 500, s* = 25, the first 13
// coefficients +1, the next 12 coefficients -1, standard normal features and
// unit Gaussian noise.
ProblemInstance make_synthetic_benchmark();

// Same coefficient pattern scaled to arbitrary sizes (first half of the
// support +1, second half -1).
ProblemInstance make_synthetic_instance(int d, int s_star, double sigma);

}  // namespace sbr
