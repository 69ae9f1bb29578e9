#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxavg/periodic.hpp"

namespace maxavg {

/// Irreducible maximal interval [start : start+kappa]: the shortest window
/// beginning at `start` whose average equals the right maximal function.
template <class T>
struct MIntervalRecord {
  Index start = 1;
  Index kappa = 0;
  T average;

  IndexInterval interval() const { return {start, start + kappa}; }
};

template <class T>
MIntervalRecord<T> m_interval(const PeriodicTuple<T>& x, Index i);

// One record per start index 1..n.
template <class T>
std::vector<MIntervalRecord<T>> m_intervals(const PeriodicTuple<T>& x);

// Smallest i in 1..n such that the full window [i : i+n-1] is a maximal
// interval. Under distinct averages this is the unique i with kappa(i) = n-1.
// If floating-point rounding leaves no window attaining the maximum exactly,
// the index whose full window comes closest is returned.
template <class T>
Index full_maximal_start(const PeriodicTuple<T>& x);

// True iff sum_{j<k} x_{start+j} < k * mean(x) for k = 1..n-1.
template <class T>
bool has_strict_majorization(const PeriodicTuple<T>& x, Index start);

// The rotation whose partial sums stay strictly below the mean line;
// equals full_maximal_start(x).
template <class T>
Index majorizing_rotation(const PeriodicTuple<T>& x);

// Surrogate for rational independence of the entries: the averages of all
// non-equivalent short intervals and the period mean are pairwise distinct.
template <class T>
bool has_distinct_averages(const PeriodicTuple<T>& x);

/// Inclusion order on the n classes of M-intervals.
///
/// `nodes[k]` is the class of [k+1 : k+1+kappa(k+1)]. `parent[k]` holds the
/// start of the smallest M-interval class whose representative strictly
/// contains that of node k, or nothing for a maximal element. `root` is the
/// start of the class of cardinality n when one exists.
template <class T>
struct IntervalPoset {
  std::vector<MIntervalRecord<T>> nodes;
  std::vector<std::optional<Index>> parent;
  std::optional<Index> root;

  Index size() const { return static_cast<Index>(nodes.size()); }
  const MIntervalRecord<T>& node(Index start) const {
    return nodes[static_cast<std::size_t>(start - 1)];
  }
  std::optional<Index> parent_of(Index start) const {
    return parent[static_cast<std::size_t>(start - 1)];
  }
  // (child, parent) pairs in order of child start.
  std::vector<std::pair<Index, Index>> edges() const;
  std::vector<Index> maximal_elements() const;
  std::vector<Index> minimal_elements() const;
  bool is_tree() const;
};

// Throws DegenerateOrder when two representatives overlap without nesting.
template <class T>
IntervalPoset<T> build_poset(const PeriodicTuple<T>& x);

template <class T>
std::string poset_to_json(const IntervalPoset<T>& poset);

template <class T>
std::string poset_to_dot(const IntervalPoset<T>& poset);

}  // namespace maxavg
