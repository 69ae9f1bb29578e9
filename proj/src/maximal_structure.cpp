#include "maxavg/maximal_structure.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "maxavg/errors.hpp"

namespace maxavg {

template <class T>
MIntervalRecord<T> m_interval(const PeriodicTuple<T>& x, Index i) {
  auto best = right_maximal(x, i);
  return {wrap_index(i, x.size()), best.length - 1, best.value};
}

template <class T>
std::vector<MIntervalRecord<T>> m_intervals(const PeriodicTuple<T>& x) {
  std::vector<MIntervalRecord<T>> out;
  out.reserve(static_cast<std::size_t>(x.size()));
  for (Index i = 1; i <= x.size(); ++i) out.push_back(m_interval(x, i));
  return out;
}

template <class T>
Index full_maximal_start(const PeriodicTuple<T>& x) {
  const Index n = x.size();
  if (n == 1) return 1;
  Index closest = 1;
  std::optional<T> closest_excess;
  for (Index i = 1; i <= n; ++i) {
    T shorter = x.value(i);
    for (Index r = 2; r < n; ++r) {
      T avg = x.window_sum(i, r) / from_index<T>(r);
      if (avg > shorter) shorter = avg;
    }
    T full = x.window_sum(i, n) / from_index<T>(n);
    if (!(shorter > full)) return i;
    T excess = shorter - full;
    if (!closest_excess || excess < *closest_excess) {
      closest_excess = excess;
      closest = i;
    }
  }
  return closest;
}

template <class T>
bool has_strict_majorization(const PeriodicTuple<T>& x, Index start) {
  const Index n = x.size();
  const T n_scalar = from_index<T>(n);
  T partial = 0;
  for (Index k = 1; k < n; ++k) {
    partial += x.value(start + k - 1);
    if (!(n_scalar * partial < from_index<T>(k) * x.total())) return false;
  }
  return true;
}

template <class T>
Index majorizing_rotation(const PeriodicTuple<T>& x) {
  return full_maximal_start(x);
}

template <class T>
bool has_distinct_averages(const PeriodicTuple<T>& x) {
  const Index n = x.size();
  std::vector<T> averages;
  averages.reserve(static_cast<std::size_t>(n * (n - 1) + 1));
  for (Index i = 1; i <= n; ++i)
    for (Index r = 1; r < n; ++r) averages.push_back(x.window_sum(i, r) / from_index<T>(r));
  averages.push_back(x.mean());
  std::sort(averages.begin(), averages.end());
  return std::adjacent_find(averages.begin(), averages.end()) == averages.end();
}

template <class T>
std::vector<std::pair<Index, Index>> IntervalPoset<T>::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index s = 1; s <= size(); ++s)
    if (auto p = parent_of(s)) out.emplace_back(s, *p);
  return out;
}

template <class T>
std::vector<Index> IntervalPoset<T>::maximal_elements() const {
  std::vector<Index> out;
  for (Index s = 1; s <= size(); ++s)
    if (!parent_of(s)) out.push_back(s);
  return out;
}

template <class T>
std::vector<Index> IntervalPoset<T>::minimal_elements() const {
  std::vector<bool> has_child(nodes.size(), false);
  for (const auto& p : parent)
    if (p) has_child[static_cast<std::size_t>(*p - 1)] = true;
  std::vector<Index> out;
  for (Index s = 1; s <= size(); ++s)
    if (!has_child[static_cast<std::size_t>(s - 1)]) out.push_back(s);
  return out;
}

template <class T>
bool IntervalPoset<T>::is_tree() const {
  auto tops = maximal_elements();
  return root && tops.size() == 1 && tops.front() == *root;
}

template <class T>
IntervalPoset<T> build_poset(const PeriodicTuple<T>& x) {
  const Index n = x.size();
  IntervalPoset<T> poset;
  poset.nodes = m_intervals(x);
  poset.parent.assign(static_cast<std::size_t>(n), std::nullopt);

  auto rep = [&](Index start) { return poset.node(start).interval(); };

  // Pairwise: every shift of class j that meets the base representative of
  // class i must be disjoint from it or nested with it.
  for (Index i = 1; i <= n; ++i) {
    const IndexInterval base = rep(i);
    for (Index j = i + 1; j <= n; ++j) {
      const Index kappa_j = poset.node(j).kappa;
      Index lo = base.a - kappa_j;
      Index first = lo + ((j - lo) % n + n) % n;  // smallest start >= lo congruent to j
      for (Index s = first; s <= base.b; s += n) {
        IndexInterval other{s, s + kappa_j};
        if (!base.overlaps(other)) continue;
        if (!base.contains(other) && !other.contains(base)) {
          std::ostringstream msg;
          msg << "M-intervals [" << base.a << ":" << base.b << "] and [" << other.a << ":"
              << other.b << "] overlap without nesting";
          throw DegenerateOrder(msg.str());
        }
      }
    }
  }

  for (Index i = 1; i <= n; ++i) {
    const IndexInterval inner = rep(i);
    std::optional<Index> best;
    Index best_card = 0;
    for (Index j = 1; j <= n; ++j) {
      if (j == i) continue;
      const Index shifted = i - (((i - j) % n) + n) % n;
      IndexInterval outer{shifted, shifted + poset.node(j).kappa};
      if (!outer.contains(inner) || outer == inner) continue;
      if (!best || outer.cardinality() < best_card) {
        best = j;
        best_card = outer.cardinality();
      }
    }
    poset.parent[static_cast<std::size_t>(i - 1)] = best;
    if (poset.node(i).kappa == n - 1 && !poset.root) poset.root = i;
  }
  return poset;
}

namespace {

nlohmann::json average_json(double v) { return v; }
nlohmann::json average_json(const Rational& v) { return v.get_d(); }

}  // namespace

template <class T>
std::string poset_to_json(const IntervalPoset<T>& poset) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const auto& node : poset.nodes) {
    nlohmann::json rec{{"start", node.start}, {"kappa", node.kappa},
                       {"average", average_json(node.average)}};
    if constexpr (std::is_same_v<T, Rational>) rec["average_exact"] = to_string(node.average);
    j["nodes"].push_back(std::move(rec));
  }
  j["edges"] = nlohmann::json::array();
  for (auto [child, parent] : poset.edges()) j["edges"].push_back({child, parent});
  j["root"] = poset.root ? nlohmann::json(*poset.root) : nlohmann::json(nullptr);
  return j.dump();
}

template <class T>
std::string poset_to_dot(const IntervalPoset<T>& poset) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  for (const auto& node : poset.nodes) {
    auto iv = node.interval();
    out << "  n" << node.start << " [label=\"[" << iv.a << ":" << iv.b
        << "] a=" << format_rounded(node.average, 6) << "\"";
    if (poset.root && *poset.root == node.start) out << ", style=bold";
    out << "];\n";
  }
  for (auto [child, parent] : poset.edges())
    out << "  n" << child << " -> n" << parent << ";\n";
  out << "}\n";
  return out.str();
}

#define MAXAVG_INSTANTIATE(T)                                                             \
  template MIntervalRecord<T> m_interval<T>(const PeriodicTuple<T>&, Index);              \
  template std::vector<MIntervalRecord<T>> m_intervals<T>(const PeriodicTuple<T>&);       \
  template Index full_maximal_start<T>(const PeriodicTuple<T>&);                          \
  template bool has_strict_majorization<T>(const PeriodicTuple<T>&, Index);               \
  template Index majorizing_rotation<T>(const PeriodicTuple<T>&);                         \
  template bool has_distinct_averages<T>(const PeriodicTuple<T>&);                        \
  template struct IntervalPoset<T>;                                                       \
  template IntervalPoset<T> build_poset<T>(const PeriodicTuple<T>&);                      \
  template std::string poset_to_json<T>(const IntervalPoset<T>&);                         \
  template std::string poset_to_dot<T>(const IntervalPoset<T>&);

MAXAVG_INSTANTIATE(double)
MAXAVG_INSTANTIATE(Rational)
#undef MAXAVG_INSTANTIATE

}  // namespace maxavg
