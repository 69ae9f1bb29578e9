#include "maxavg/cyclic_sums.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "maxavg/errors.hpp"

namespace maxavg {

RadiusTuple::RadiusTuple(std::vector<Index> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw InputError("radius tuple must be nonempty");
  for (Index r : radii_)
    if (r < 1) throw InputError("radii must be positive integers");
}

RadiusTuple RadiusTuple::constant(Index n, Index k) {
  return RadiusTuple(std::vector<Index>(static_cast<std::size_t>(n), k));
}

template <class T>
T sum_with_radii(const PeriodicTuple<T>& x, const RadiusTuple& radii) {
  if (radii.size() != x.size())
    throw InputError("radius tuple length " + std::to_string(radii.size()) +
                     " does not match tuple length " + std::to_string(x.size()));
  T sum = 0;
  for (Index i = 1; i <= x.size(); ++i) {
    const T window = x.window_sum(i + 1, radii[i]);
    if (window == 0)
      throw InadmissiblePair("zero denominator at index " + std::to_string(i));
    if (x.value(i) == 0) continue;
    sum += x.value(i) * from_index<T>(radii[i]) / window;
  }
  return sum;
}

template <class T>
T diananda_sum(const PeriodicTuple<T>& x, Index k) {
  if (k < 1) throw InputError("Diananda window must be positive");
  return sum_with_radii(x, RadiusTuple::constant(x.size(), k)) / from_index<T>(k);
}

template <class T>
MaxAvgSum<T> max_avg_sum(const PeriodicTuple<T>& x) {
  T sum = 0;
  std::vector<Index> radii;
  radii.reserve(static_cast<std::size_t>(x.size()));
  for (Index i = 1; i <= x.size(); ++i) {
    auto m = forward_max_average(x, i);  // >= mean(x) > 0
    radii.push_back(m.length);
    if (x.value(i) != 0) sum += x.value(i) / m.value;
  }
  return {sum, RadiusTuple(std::move(radii))};
}

SubsetCollectionSystem::SubsetCollectionSystem(Index n, std::vector<std::vector<Subset>> collections)
    : n_(n), collections_(std::move(collections)) {
  if (n_ < 1) throw InputError("subset system needs n >= 1");
  if (static_cast<Index>(collections_.size()) != n_)
    throw InputError("subset system must have one collection per index");
  for (auto& coll : collections_) {
    if (coll.empty()) throw InputError("each collection must be nonempty");
    for (auto& subset : coll) {
      if (subset.empty()) throw InputError("subsets must be nonempty");
      std::sort(subset.begin(), subset.end());
      subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
      if (subset.front() < 1 || subset.back() > n_)
        throw InputError("subset index out of range 1.." + std::to_string(n_));
    }
  }
  if (n_ <= 64) {
    masks_.resize(collections_.size());
    for (std::size_t i = 0; i < collections_.size(); ++i)
      for (const auto& subset : collections_[i]) {
        std::uint64_t mask = 0;
        for (Index j : subset) mask |= std::uint64_t{1} << (j - 1);
        masks_[i].push_back(mask);
      }
  }
}

template <class T>
T subset_max_average(const PeriodicTuple<T>& x, const SubsetCollectionSystem& system, Index i) {
  std::optional<T> best;
  auto consider = [&](T sum, Index count) {
    T avg = sum / from_index<T>(count);
    if (!best || avg > *best) best = std::move(avg);
  };
  if (system.has_masks()) {
    for (std::uint64_t mask : system.masks(i)) {
      T sum = 0;
      for (std::uint64_t m = mask; m != 0; m &= m - 1)
        sum += x.value(static_cast<Index>(std::countr_zero(m)) + 1);
      consider(sum, std::popcount(mask));
    }
  } else {
    for (const auto& subset : system.collection(i)) {
      T sum = 0;
      for (Index j : subset) sum += x.value(j);
      consider(sum, static_cast<Index>(subset.size()));
    }
  }
  return *best;
}

template <class T>
T generalized_max_sum(const PeriodicTuple<T>& x, const SubsetCollectionSystem& system) {
  if (system.size() != x.size()) throw InputError("subset system size does not match tuple");
  T sum = 0;
  for (Index i = 1; i <= x.size(); ++i) {
    T m = subset_max_average(x, system, i);
    if (m == 0) throw InadmissiblePair("zero subset maximum at index " + std::to_string(i));
    if (x.value(i) != 0) sum += x.value(i) / m;
  }
  return sum;
}

#define MAXAVG_INSTANTIATE(T)                                                                  \
  template T sum_with_radii<T>(const PeriodicTuple<T>&, const RadiusTuple&);                   \
  template T diananda_sum<T>(const PeriodicTuple<T>&, Index);                                  \
  template MaxAvgSum<T> max_avg_sum<T>(const PeriodicTuple<T>&);                               \
  template T subset_max_average<T>(const PeriodicTuple<T>&, const SubsetCollectionSystem&,     \
                                   Index);                                                     \
  template T generalized_max_sum<T>(const PeriodicTuple<T>&, const SubsetCollectionSystem&);

MAXAVG_INSTANTIATE(double)
MAXAVG_INSTANTIATE(Rational)
#undef MAXAVG_INSTANTIATE

}  // namespace maxavg
