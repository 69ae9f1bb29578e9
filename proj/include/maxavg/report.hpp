#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxavg/maximal_structure.hpp"

namespace maxavg {

/// Everything the `analyze` command reports about one tuple.
template <class T>
struct Analysis {
  PeriodicTuple<T> tuple;
  std::vector<MIntervalRecord<T>> m_intervals;
  Index full_maximal_start = 1;
  Index rotation_start = 1;
  bool rotation_strict = false;
  std::optional<bool> distinct_averages;  // only when requested
  std::optional<IntervalPoset<T>> poset;
  std::string poset_error;                // DegenerateOrder message, if any
};

template <class T>
Analysis<T> analyze(const PeriodicTuple<T>& x, bool check_distinct_averages);

// Averages a_[i : i+r-1] for r = 1..n-1 (rows) and i = 1..n (columns),
// rounded to 3 decimals. M-interval cells are bracketed and the column of the
// full maximal interval carries a '*'.
template <class T>
std::string render_average_table(const PeriodicTuple<T>& x);

template <class T>
std::string render_text(const Analysis<T>& a);

template <class T>
std::string render_json(const Analysis<T>& a);

// Long-form table: r,i,average,m_interval
template <class T>
std::string render_csv(const Analysis<T>& a);

}  // namespace maxavg
