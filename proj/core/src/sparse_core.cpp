#include "sbr/sparse_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sbr {

DenseVector::DenseVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("DenseVector: non-finite entry");
  }
}

void DenseVector::set(int i, double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("DenseVector::set: non-finite value");
  values_.at(static_cast<std::size_t>(i)) = v;
}

SupportSet::SupportSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw std::invalid_argument("SupportSet: duplicate index");
  if (!indices_.empty() && indices_.front() < 0)
    throw std::invalid_argument("SupportSet: negative index");
}

bool SupportSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

SupportSet SupportSet::set_union(const SupportSet& o) const {
  std::vector<int> out;
  out.reserve(indices_.size() + o.indices_.size());
  std::set_union(indices_.begin(), indices_.end(), o.indices_.begin(), o.indices_.end(),
                 std::back_inserter(out));
  SupportSet r;
  r.indices_ = std::move(out);
  return r;
}

bool SupportSet::is_subset_of(const SupportSet& o) const {
  return std::includes(o.indices_.begin(), o.indices_.end(), indices_.begin(), indices_.end());
}

DenseVector hard_threshold(const DenseVector& v, int s) {
  const int d = v.dim();
  if (s < 1 || s > d) throw std::invalid_argument("hard_threshold: s out of range");

  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  // Keep larger magnitude; on ties keep the smaller index.
  auto better = [&v](int a, int b) {
    const double ma = std::abs(v[a]), mb = std::abs(v[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  };
  if (s < d) std::nth_element(idx.begin(), idx.begin() + s, idx.end(), better);

  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  for (int k = 0; k < s; ++k) out[static_cast<std::size_t>(idx[k])] = v[idx[k]];
  return DenseVector(std::move(out));
}

SupportSet support(const DenseVector& v) {
  std::vector<int> idx;
  for (int i = 0; i < v.dim(); ++i)
    if (v[i] != 0.0) idx.push_back(i);
  return SupportSet(std::move(idx));
}

double restricted_dot(const DenseVector& v, const PartialRow& x_partial, const SupportSet& S) {
  double acc = 0.0;
  for (int j : S) {
    auto it = x_partial.find(j);
    if (it == x_partial.end())
      throw std::invalid_argument("restricted_dot: coordinate " + std::to_string(j) +
                                  " missing from partial row");
    acc += v[j] * it->second;
  }
  return acc;
}

double sq_distance(const DenseVector& a, const DenseVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sq_distance: dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace sbr
