#include "maxavg/periodic.hpp"

#include <type_traits>

#include "maxavg/errors.hpp"

namespace maxavg {

bool IndexInterval::equivalent(const IndexInterval& other, Index n) const {
  if (b - a != other.b - other.a) return false;
  Index d = other.a - a;
  return d % n == 0;
}

template <class T>
PeriodicTuple<T>::PeriodicTuple(std::vector<T> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("tuple must have at least one entry");
  bool any_positive = false;
  for (T& v : values_) {
    if constexpr (std::is_same_v<T, Rational>) v.canonicalize();
    if (v < 0) throw InputError("tuple entries must be nonnegative");
    if (v > 0) any_positive = true;
  }
  if (!any_positive) throw InputError("tuple must have a positive entry");

  const std::size_t n = values_.size();
  prefix_.assign(2 * n + 1, T(0));
  for (std::size_t k = 0; k < 2 * n; ++k) prefix_[k + 1] = prefix_[k] + values_[k % n];
}

template <class T>
T PeriodicTuple<T>::window_sum(Index start, Index length) const {
  const Index n = size();
  const Index s = wrap_index(start, n) - 1;
  const Index full = length / n;
  const Index rem = length % n;
  T sum = prefix_[static_cast<std::size_t>(s + rem)] - prefix_[static_cast<std::size_t>(s)];
  if (full > 0) sum += from_index<T>(full) * total();
  return sum;
}

template <class T>
PeriodicTuple<T> PeriodicTuple<T>::rotated(Index shift) const {
  std::vector<T> out;
  out.reserve(values_.size());
  for (Index i = 1; i <= size(); ++i) out.push_back(value(i + shift));
  return PeriodicTuple(std::move(out));
}

template <class T>
PeriodicTuple<T> PeriodicTuple<T>::scaled(const T& factor) const {
  std::vector<T> out(values_);
  for (T& v : out) v *= factor;
  return PeriodicTuple(std::move(out));
}

template <class T>
T interval_average(const PeriodicTuple<T>& x, const IndexInterval& interval) {
  if (interval.b < interval.a) throw InputError("interval must satisfy b >= a");
  const Index len = interval.cardinality();
  return x.window_sum(interval.a, len) / from_index<T>(len);
}

template <class T>
MaximalAverage<T> right_maximal(const PeriodicTuple<T>& x, Index i) {
  MaximalAverage<T> best{x.value(i), 1};
  for (Index r = 2; r <= x.size(); ++r) {
    T avg = x.window_sum(i, r) / from_index<T>(r);
    if (avg > best.value) {
      best.value = avg;
      best.length = r;
    }
  }
  return best;
}

template <class T>
MaximalAverage<T> forward_max_average(const PeriodicTuple<T>& x, Index i) {
  return right_maximal(x, i + 1);
}

template class PeriodicTuple<double>;
template class PeriodicTuple<Rational>;

#define MAXAVG_INSTANTIATE(T)                                                    \
  template T interval_average<T>(const PeriodicTuple<T>&, const IndexInterval&); \
  template MaximalAverage<T> right_maximal<T>(const PeriodicTuple<T>&, Index);   \
  template MaximalAverage<T> forward_max_average<T>(const PeriodicTuple<T>&, Index);

MAXAVG_INSTANTIATE(double)
MAXAVG_INSTANTIATE(Rational)
#undef MAXAVG_INSTANTIATE

}  // namespace maxavg
