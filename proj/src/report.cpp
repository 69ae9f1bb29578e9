#include "maxavg/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "maxavg/errors.hpp"

namespace maxavg {
namespace {

template <class T>
bool is_m_interval_cell(const std::vector<MIntervalRecord<T>>& recs, Index i, Index r) {
  return recs[static_cast<std::size_t>(i - 1)].kappa + 1 == r;
}

template <class T>
nlohmann::json scalar_json(const T& v) {
  return to_double(v);
}

}  // namespace

template <class T>
Analysis<T> analyze(const PeriodicTuple<T>& x, bool check_distinct_averages) {
  Analysis<T> a{x, m_intervals(x), full_maximal_start(x), 1, false, std::nullopt, std::nullopt, {}};
  a.rotation_start = majorizing_rotation(x);
  a.rotation_strict = has_strict_majorization(x, a.rotation_start);
  if (check_distinct_averages) a.distinct_averages = has_distinct_averages(x);
  try {
    a.poset = build_poset(x);
  } catch (const DegenerateOrder& e) {
    a.poset_error = e.what();
  }
  return a;
}

template <class T>
std::string render_average_table(const PeriodicTuple<T>& x) {
  const Index n = x.size();
  const auto recs = m_intervals(x);
  const Index star = full_maximal_start(x);
  constexpr int kWidth = 9;
  std::ostringstream out;
  out << std::setw(6) << std::left << "r\\i" << std::right;
  for (Index i = 1; i <= n; ++i)
    out << std::setw(kWidth) << (std::to_string(i) + (i == star ? "*" : " "));
  out << "\n";
  for (Index r = 1; r < n; ++r) {
    out << std::setw(6) << std::left << r << std::right;
    for (Index i = 1; i <= n; ++i) {
      std::string cell = format_rounded(interval_average(x, {i, i + r - 1}), 3);
      cell = is_m_interval_cell(recs, i, r) ? "[" + cell + "]" : cell + " ";
      out << std::setw(kWidth) << cell;
    }
    out << "\n";
  }
  return out.str();
}

template <class T>
std::string render_text(const Analysis<T>& a) {
  const Index n = a.tuple.size();
  std::ostringstream out;
  out << "n = " << n << ", mean = " << format_rounded(a.tuple.mean(), 6) << "\n\n";
  if (n > 1) out << render_average_table(a.tuple) << "\n";
  out << "M-intervals:\n";
  for (const auto& m : a.m_intervals) {
    auto iv = m.interval();
    out << "  [" << iv.a << ":" << iv.b << "]  kappa=" << m.kappa
        << "  average=" << format_rounded(m.average, 6) << "\n";
  }
  out << "\nfull maximal interval: [" << a.full_maximal_start << ":"
      << a.full_maximal_start + n - 1 << "]\n";
  out << "majorizing rotation: starts at " << a.rotation_start
      << (a.rotation_strict ? " (strict)" : " (not strict)") << "\n";
  if (a.distinct_averages)
    out << "distinct short-interval averages: " << (*a.distinct_averages ? "yes" : "no") << "\n";
  if (a.poset) {
    const auto& P = *a.poset;
    auto label = [&](Index s) {
      auto iv = P.node(s).interval();
      return "[" + std::to_string(iv.a) + ":" + std::to_string(iv.b) + "]";
    };
    out << "\nposet (" << (P.is_tree() ? "tree" : "forest") << "):\n";
    for (auto [child, parent] : P.edges()) out << "  " << label(child) << " < " << label(parent) << "\n";
    out << "  maximal:";
    for (Index s : P.maximal_elements()) out << " " << label(s);
    out << "\n  minimal:";
    for (Index s : P.minimal_elements()) out << " " << label(s);
    out << "\n";
  } else {
    out << "\nposet: degenerate order (" << a.poset_error << ")\n";
  }
  return out.str();
}

template <class T>
std::string render_json(const Analysis<T>& a) {
  using nlohmann::json;
  const Index n = a.tuple.size();
  json j;
  j["n"] = n;
  j["mean"] = scalar_json(a.tuple.mean());
  json table = json::array();
  for (Index r = 1; r < n; ++r) {
    json row = json::array();
    for (Index i = 1; i <= n; ++i) row.push_back(scalar_json(interval_average(a.tuple, {i, i + r - 1})));
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  j["m_intervals"] = json::array();
  for (const auto& m : a.m_intervals)
    j["m_intervals"].push_back({{"start", m.start}, {"kappa", m.kappa}, {"average", scalar_json(m.average)}});
  j["full_maximal_start"] = a.full_maximal_start;
  json rot = json::array();
  for (Index k = 0; k < n; ++k) rot.push_back(scalar_json(a.tuple.value(a.rotation_start + k)));
  j["majorizing_rotation"] = {{"start", a.rotation_start}, {"strict", a.rotation_strict}, {"values", rot}};
  j["distinct_averages"] = a.distinct_averages ? json(*a.distinct_averages) : json(nullptr);
  if (a.poset) {
    j["poset"] = json::parse(poset_to_json(*a.poset));
  } else {
    j["poset"] = nullptr;
    j["poset_error"] = a.poset_error;
  }
  return j.dump(2);
}

template <class T>
std::string render_csv(const Analysis<T>& a) {
  std::ostringstream out;
  out << "r,i,average,m_interval\n";
  const Index n = a.tuple.size();
  for (Index r = 1; r <= n; ++r)
    for (Index i = 1; i <= n; ++i) {
      out << r << "," << i << "," << to_string(to_double(interval_average(a.tuple, {i, i + r - 1}))) << ","
          << (is_m_interval_cell(a.m_intervals, i, r) ? 1 : 0) << "\n";
    }
  return out.str();
}

#define MAXAVG_INSTANTIATE(T)                                          \
  template Analysis<T> analyze<T>(const PeriodicTuple<T>&, bool);      \
  template std::string render_average_table<T>(const PeriodicTuple<T>&); \
  template std::string render_text<T>(const Analysis<T>&);             \
  template std::string render_json<T>(const Analysis<T>&);             \
  template std::string render_csv<T>(const Analysis<T>&);

MAXAVG_INSTANTIATE(double)
MAXAVG_INSTANTIATE(Rational)
#undef MAXAVG_INSTANTIATE

}  // namespace maxavg
