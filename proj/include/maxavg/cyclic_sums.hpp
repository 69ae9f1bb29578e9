#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxavg/periodic.hpp"

namespace maxavg {

// Window lengths r_1..r_n, each >= 1.
class RadiusTuple {
 public:
  explicit RadiusTuple(std::vector<Index> radii);
  static RadiusTuple constant(Index n, Index k);

  Index size() const { return static_cast<Index>(radii_.size()); }
  Index operator[](Index i) const { return radii_[static_cast<std::size_t>(i - 1)]; }  // 1-based
  const std::vector<Index>& values() const { return radii_; }

  friend bool operator==(const RadiusTuple&, const RadiusTuple&) = default;

 private:
  std::vector<Index> radii_;
};

// sum_i x_i / a_[i+1 : i+r_i](x). Throws InadmissiblePair on a zero window.
template <class T>
T sum_with_radii(const PeriodicTuple<T>& x, const RadiusTuple& radii);

// sum_i x_i / (x_{i+1} + ... + x_{i+k})
template <class T>
T diananda_sum(const PeriodicTuple<T>& x, Index k);

template <class T>
struct MaxAvgSum {
  T value;
  RadiusTuple radii;  // smallest maximizing window per index
};

// sum_i x_i / m_i^+(x); the infimum of sum_with_radii over all radii.
template <class T>
MaxAvgSum<T> max_avg_sum(const PeriodicTuple<T>& x);

/// For each i in 1..n, a collection of nonempty subsets of {1..n}.
///
/// Subsets are kept as sorted 1-based index lists; for n <= 64 a bitmask
/// copy is kept as well and used for evaluation.
class SubsetCollectionSystem {
 public:
  using Subset = std::vector<Index>;

  SubsetCollectionSystem(Index n, std::vector<std::vector<Subset>> collections);

  Index size() const { return n_; }
  const std::vector<Subset>& collection(Index i) const {
    return collections_[static_cast<std::size_t>(i - 1)];
  }
  bool has_masks() const { return !masks_.empty(); }
  const std::vector<std::uint64_t>& masks(Index i) const {
    return masks_[static_cast<std::size_t>(i - 1)];
  }

 private:
  Index n_;
  std::vector<std::vector<Subset>> collections_;
  std::vector<std::vector<std::uint64_t>> masks_;
};

// m_i(x) = max over the collection of subset averages.
template <class T>
T subset_max_average(const PeriodicTuple<T>& x, const SubsetCollectionSystem& system, Index i);

// sum_i x_i / m_i(x). Throws InadmissiblePair if some m_i(x) = 0.
template <class T>
T generalized_max_sum(const PeriodicTuple<T>& x, const SubsetCollectionSystem& system);

}  // namespace maxavg
