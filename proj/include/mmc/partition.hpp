#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mmc/json.hpp"
#include "mmc/rational.hpp"

namespace mmc {

namespace detail {
inline std::vector<int> sorted(std::vector<int> v, bool increasing) {
  if (increasing)
    std::sort(v.begin(), v.end());
  else
    std::sort(v.begin(), v.end(), std::greater<int>());
  return v;
}
}  // namespace detail

/// Ordinary partition: weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(detail::sorted(std::move(parts), false)) {
    for (int p : parts_)
      if (p < 1) throw std::invalid_argument("Partition parts must be >= 1");
  }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  friend bool operator==(const Partition& a, const Partition& b) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) = default;

 private:
  std::vector<int> parts_;
};

/// Generalized partition: weakly increasing integer parts of any sign.
class GeneralizedPartition {
 public:
  GeneralizedPartition() = default;
  GeneralizedPartition(std::initializer_list<int> parts)
      : GeneralizedPartition(std::vector<int>(parts)) {}
  explicit GeneralizedPartition(std::vector<int> parts)
      : parts_(detail::sorted(std::move(parts), true)) {}
  explicit GeneralizedPartition(const Partition& p)
      : parts_(detail::sorted(p.parts(), true)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  /// Algebraic sum of parts.
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  friend bool operator==(const GeneralizedPartition& a, const GeneralizedPartition& b) = default;
  friend auto operator<=>(const GeneralizedPartition& a, const GeneralizedPartition& b) = default;

 private:
  std::vector<int> parts_;
};

/// Sorted multiset of non-negative integers. Partitions cannot hold a part 0,
/// but operator brackets produce derivative indices 0; these live here.
class IndexMultiset {
 public:
  IndexMultiset() = default;
  IndexMultiset(std::initializer_list<int> parts) : IndexMultiset(std::vector<int>(parts)) {}
  explicit IndexMultiset(std::vector<int> parts) : parts_(detail::sorted(std::move(parts), false)) {
    for (int p : parts_)
      if (p < 0) throw std::invalid_argument("IndexMultiset entries must be >= 0");
  }
  explicit IndexMultiset(const Partition& p) : parts_(p.parts()) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  friend bool operator==(const IndexMultiset& a, const IndexMultiset& b) = default;
  friend auto operator<=>(const IndexMultiset& a, const IndexMultiset& b) = default;

 private:
  std::vector<int> parts_;  // weakly decreasing
};

template <typename P>
P partition_union(const P& a, const P& b) {
  std::vector<int> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return P(std::move(parts));
}

/// Removes one occurrence of `part`. Absence is a caller bug.
template <typename P>
P partition_remove(const P& a, int part) {
  std::vector<int> parts = a.parts();
  auto it = std::find(parts.begin(), parts.end(), part);
  if (it == parts.end()) throw std::out_of_range("partition_remove: part not present");
  parts.erase(it);
  return P(std::move(parts));
}

inline ordered_json partition_to_json(const std::vector<int>& parts) {
  return ordered_json(parts);
}

/// Multivariate polynomial with rational coefficients, exponent vectors of a
/// fixed variable count. Just enough structure for monomial symmetric
/// functions; not a general symmetric-function algebra.
using ExponentPoly = std::map<std::vector<int>, Rational>;

/// m_lambda(x_1..x_vars): sum over all distinct permutations of the exponent
/// vector. Zero when the partition is longer than the variable count.
inline ExponentPoly monomial_symmetric(const Partition& lambda, int vars) {
  ExponentPoly out;
  if (lambda.length() > vars) return out;
  std::vector<int> exps(static_cast<size_t>(vars), 0);
  std::copy(lambda.parts().begin(), lambda.parts().end(), exps.begin());
  std::sort(exps.begin(), exps.end());
  do {
    out[exps] = 1;
  } while (std::next_permutation(exps.begin(), exps.end()));
  return out;
}

}  // namespace mmc
