#include "sbr/data_env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sbr {

Budget::Budget(int d_, int s_star_, int s_, int s_prime_)
    : d(d_), s_star(s_star_), s(s_), s_prime(s_prime_) {
  if (!(1 <= s_star && s_star <= s && s < s_prime && s_prime <= d))
    throw std::invalid_argument("Budget: requires 1 <= s* <= s < s' <= d");
}

BlockPartition BlockPartition::make(int d, int width) {
  if (width < 1 || width > d)
    throw std::invalid_argument("BlockPartition: width must be in [1, d]");
  BlockPartition p;
  p.d = d;
  p.width = width;
  p.block_count = (d + width - 1) / width;
  return p;
}

std::pair<int, int> BlockPartition::range(int i) const {
  if (i < 0 || i >= block_count) throw std::out_of_range("BlockPartition::range");
  const int lo = width * i;
  const int hi = std::min(width * (i + 1), d) - 1;
  return {lo, hi};
}

SupportSet BlockPartition::block_support(int i) const {
  auto [lo, hi] = range(i);
  std::vector<int> idx(static_cast<std::size_t>(hi - lo + 1));
  std::iota(idx.begin(), idx.end(), lo);
  return SupportSet(std::move(idx));
}

BlockPartition make_block_partition(int d, int width) { return BlockPartition::make(d, width); }

ProblemInstance ProblemInstance::gaussian(DenseVector theta_star, double sigma) {
  if (sigma < 0) throw std::invalid_argument("ProblemInstance: sigma < 0");
  ProblemInstance inst;
  inst.dim_ = theta_star.dim();
  inst.law_ = FeatureLaw::GaussianIid;
  inst.sigma_ = sigma;
  inst.r_inf_ = std::numeric_limits<double>::infinity();
  inst.theta_star_ = std::move(theta_star);
  return inst;
}

ProblemInstance ProblemInstance::uniform_bounded(DenseVector theta_star, double sigma,
                                                 double r_inf) {
  if (sigma < 0) throw std::invalid_argument("ProblemInstance: sigma < 0");
  if (!(r_inf > 0) || !std::isfinite(r_inf))
    throw std::invalid_argument("ProblemInstance: r_inf must be positive and finite");
  ProblemInstance inst;
  inst.dim_ = theta_star.dim();
  inst.law_ = FeatureLaw::UniformIid;
  inst.sigma_ = sigma;
  inst.r_inf_ = r_inf;
  inst.theta_star_ = std::move(theta_star);
  return inst;
}

ProblemInstance ProblemInstance::finite(FiniteDataset data) {
  if (data.rows.empty()) throw std::invalid_argument("ProblemInstance: empty dataset");
  if (data.rows.size() != data.targets.size())
    throw std::invalid_argument("ProblemInstance: rows/targets size mismatch");
  if (data.train_indices.empty())
    throw std::invalid_argument("ProblemInstance: empty training split");
  ProblemInstance inst;
  inst.dim_ = static_cast<int>(data.rows.front().size());
  inst.law_ = FeatureLaw::FiniteDataset;
  inst.sigma_ = 0.0;
  double r = 0.0;
  for (const auto& row : data.rows)
    for (double v : row) r = std::max(r, std::abs(v));
  inst.r_inf_ = r;
  inst.dataset_ = std::move(data);
  return inst;
}

std::optional<double> ProblemInstance::covariance_scale() const {
  switch (law_) {
    case FeatureLaw::GaussianIid: return 1.0;
    case FeatureLaw::UniformIid: return r_inf_ * r_inf_ / 3.0;
    case FeatureLaw::FiniteDataset: return std::nullopt;
  }
  return std::nullopt;
}

Example draw_example(const ProblemInstance& inst, ObservationLedger& ledger, RngStream& rng) {
  Example ex;
  const int d = inst.dim_;
  ex.x_.resize(static_cast<std::size_t>(d));
  switch (inst.law_) {
    case FeatureLaw::GaussianIid:
      for (int j = 0; j < d; ++j) ex.x_[static_cast<std::size_t>(j)] = rng.normal();
      break;
    case FeatureLaw::UniformIid:
      for (int j = 0; j < d; ++j)
        ex.x_[static_cast<std::size_t>(j)] = inst.r_inf_ * (2.0 * rng.uniform() - 1.0);
      break;
    case FeatureLaw::FiniteDataset: {
      const auto& ds = *inst.dataset_;
      const auto row =
          ds.train_indices[rng.uniform_below(static_cast<std::uint64_t>(ds.train_indices.size()))];
      ex.x_ = ds.rows[static_cast<std::size_t>(row)];
      ex.y_ = ds.targets[static_cast<std::size_t>(row)];
      ex.revealed_.assign(static_cast<std::size_t>(d), 0);
      ex.id_ = ++ledger.examples_drawn_;
      return ex;
    }
  }
  double yx = 0.0;
  const DenseVector& ts = *inst.theta_star_;
  for (int j = 0; j < d; ++j) yx += ts[j] * ex.x_[static_cast<std::size_t>(j)];
  ex.y_ = yx + (inst.sigma_ > 0 ? inst.sigma_ * rng.normal() : 0.0);
  ex.revealed_.assign(static_cast<std::size_t>(d), 0);
  ex.id_ = ++ledger.examples_drawn_;
  return ex;
}

PartialRow observe(Example& ex, const SupportSet& attrs, ObservationLedger& ledger) {
  int fresh = 0;
  for (int j : attrs) {
    if (j < 0 || j >= static_cast<int>(ex.x_.size()))
      throw std::out_of_range("observe: attribute index out of range");
    if (!ex.revealed_[static_cast<std::size_t>(j)]) ++fresh;
  }
  if (ex.revealed_count_ + fresh > ledger.s_prime_)
    throw BudgetExceeded("observe: example " + std::to_string(ex.id_) + " would reveal " +
                         std::to_string(ex.revealed_count_ + fresh) + " > s' = " +
                         std::to_string(ledger.s_prime_) + " distinct attributes");
  PartialRow out;
  out.reserve(static_cast<std::size_t>(attrs.size()));
  for (int j : attrs) {
    if (!ex.revealed_[static_cast<std::size_t>(j)]) {
      ex.revealed_[static_cast<std::size_t>(j)] = 1;
      ++ex.revealed_count_;
      ++ledger.attribute_reads_;
    }
    out.emplace(j, ex.x_[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::pair<std::vector<int>, std::vector<int>> split_train_test(int n, double ratio,
                                                               std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("split_train_test: n < 2");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("split_train_test: ratio must be in (0, 1)");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  RngStream rng(seed);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[rng.uniform_below(static_cast<std::uint64_t>(i) + 1)]);
  const int n_train = static_cast<int>(std::lround(ratio * n));
  std::vector<int> train(perm.begin(), perm.begin() + n_train);
  std::vector<int> test(perm.begin() + n_train, perm.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

ProblemInstance make_synthetic_instance(int d, int s_star, double sigma) {
  std::vector<double> coef(static_cast<std::size_t>(d), 0.0);
  const int n_pos = (s_star + 1) / 2;
  for (int j = 0; j < s_star; ++j) coef[static_cast<std::size_t>(j)] = j < n_pos ? 1.0 : -1.0;
  return ProblemInstance::gaussian(DenseVector(std::move(coef)), sigma);
}

ProblemInstance make_synthetic_benchmark() { return make_synthetic_instance(500, 25, 1.0); }

}  // namespace sbr
