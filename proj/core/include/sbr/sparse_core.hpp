#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace sbr {

// Dense parameter vector. All entries are kept finite; constructing or
// mutating with NaN/Inf throws. Indices are 0-based internally; external
// interfaces (config files, CSV target selection) use 1-based indices.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::vector<double> values);

  static DenseVector zeros(int d) { return DenseVector(std::vector<double>(d, 0.0)); }

  int dim() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  void set(int i, double v);

  const std::vector<double>& values() const { return values_; }

  bool operator==(const DenseVector& o) const { return values_ == o.values_; }

 private:
  std::vector<double> values_;
};

// Strictly increasing set of coordinate indices in [0, d).
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<int> indices);  // sorts and checks uniqueness

  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int i) const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<int>& indices() const { return indices_; }

  SupportSet set_union(const SupportSet& o) const;
  bool is_subset_of(const SupportSet& o) const;
  bool operator==(const SupportSet& o) const { return indices_ == o.indices_; }

 private:
  std::vector<int> indices_;
};

// Coordinates of one example revealed so far: index -> value.
using PartialRow = std::unordered_map<int, double>;

// Projection onto s-sparse vectors: keeps the s largest-magnitude entries,
// zeroes the rest. Ties are broken toward the smaller index so results are
// deterministic. Selection-based, O(d) expected.
DenseVector hard_threshold(const DenseVector& v, int s);

SupportSet support(const DenseVector& v);

// Sum over j in S of v[j] * x_partial(j). Only the partial map is consulted,
// so no coordinate outside S can be read. Throws if some j in S is missing
// from x_partial.
double restricted_dot(const DenseVector& v, const PartialRow& x_partial, const SupportSet& S);

double sq_distance(const DenseVector& a, const DenseVector& b);

}  // namespace sbr
