#pragma once

#include <span>
#include <vector>

#include "maxavg/scalar.hpp"

namespace maxavg {

// Integer interval [a:b] = {a, a+1, ..., b}.
struct IndexInterval {
  Index a = 0;
  Index b = 0;

  Index cardinality() const { return b - a + 1; }
  bool is_short(Index n) const { return b - a < n; }
  bool contains(const IndexInterval& other) const {
    return a <= other.a && other.b <= b;
  }
  bool overlaps(const IndexInterval& other) const {
    return a <= other.b && other.a <= b;
  }
  // [a:b] ~ [a+kn : b+kn]
  bool equivalent(const IndexInterval& other, Index n) const;

  friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

// Positive integer modulus into 1..n.
inline Index wrap_index(Index i, Index n) {
  Index r = (i - 1) % n;
  if (r < 0) r += n;
  return r + 1;
}

/// An n-tuple of nonnegative scalars viewed as its n-periodic extension.
///
/// Indices are 1-based and taken modulo n, so `value(0) == value(n)`.
/// Construction rejects empty, negative, or all-zero input. Prefix sums over
/// two periods are precomputed, making every window sum O(1).
template <class T>
class PeriodicTuple {
 public:
  explicit PeriodicTuple(std::vector<T> values);

  Index size() const { return static_cast<Index>(values_.size()); }
  const T& value(Index i) const {
    return values_[static_cast<std::size_t>(wrap_index(i, size()) - 1)];
  }
  std::span<const T> values() const { return values_; }

  // Sum of `length` consecutive terms beginning at `start`; any length >= 0.
  T window_sum(Index start, Index length) const;
  const T& total() const { return prefix_[values_.size()]; }
  T mean() const { return total() / from_index<T>(size()); }

  // (x_{1+shift}, x_{2+shift}, ..., x_{n+shift})
  PeriodicTuple rotated(Index shift) const;
  PeriodicTuple scaled(const T& factor) const;

 private:
  std::vector<T> values_;
  std::vector<T> prefix_;  // prefix_[k] = x_1 + ... + x_k, k = 0..2n
};

template <class T>
struct MaximalAverage {
  T value;
  Index length = 1;  // smallest window length attaining `value`
};

template <class T>
T interval_average(const PeriodicTuple<T>& x, const IndexInterval& interval);

// max over r = 1..n of the average of x over [i : i+r-1]. Comparisons are
// strict, so the reported length is the smallest maximizing one.
template <class T>
MaximalAverage<T> right_maximal(const PeriodicTuple<T>& x, Index i);

// Maximal average of the terms strictly after i, i.e. right_maximal(x, i+1).
template <class T>
MaximalAverage<T> forward_max_average(const PeriodicTuple<T>& x, Index i);

extern template class PeriodicTuple<double>;
extern template class PeriodicTuple<Rational>;

}  // namespace maxavg
