#include <doctest.h>

#include <json.hpp>
#include <algorithm>
#include <sstream>

#include "maxavg/io.hpp"
#include "maxavg/report.hpp"
#include "oracles.hpp"

using namespace maxavg;

namespace {

std::string golden(const char* name) { return read_file(std::string(MAXAVG_GOLDEN_DIR) + "/" + name); }

std::vector<std::vector<std::string>> table_cells(const std::string& table) {
  std::istringstream in(table);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> cells;
    std::string cell;
    ls >> cell;  // r
    while (ls >> cell) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("text report matches the golden file on both backends") {
  const std::string input = golden("example10.json");
  const std::string expected = golden("example10_analyze.txt");
  CHECK(render_text(analyze(parse_tuple<Rational>(input), false)) == expected);
  CHECK(render_text(analyze(parse_tuple<double>(input), false)) == expected);
}

TEST_CASE("table cells are the rounded exact averages") {
  const std::string input = golden("example10.json");
  auto x = parse_tuple<Rational>(input);
  std::vector<Rational> v(x.values().begin(), x.values().end());
  auto rows = table_cells(render_average_table(x));
  REQUIRE(rows.size() == 9);
  for (long r = 1; r <= 9; ++r) {
    REQUIRE(rows[r - 1].size() == 10);
    for (long i = 1; i <= 10; ++i) {
      std::string cell = rows[r - 1][i - 1];
      const bool bracketed = cell.front() == '[';
      if (bracketed) cell = cell.substr(1, cell.size() - 2);
      CAPTURE(r);
      CAPTURE(i);
      CHECK(cell == format_rounded(oracle::average(v, i, r), 3));
      CHECK(bracketed == (oracle::right_max(v, i).second == r - 1));
    }
  }
}

TEST_CASE("json and csv reports") {
  auto a = analyze(parse_tuple<Rational>(golden("example10.json")), true);
  auto j = nlohmann::json::parse(render_json(a));
  CHECK(j["n"] == 10);
  CHECK(j["full_maximal_start"] == 9);
  CHECK(j["m_intervals"].size() == 10);
  CHECK(j["distinct_averages"] == false);
  CHECK(j["poset"]["root"] == 9);
  const std::string csv = render_csv(a);
  CHECK(csv.rfind("r,i,average,m_interval\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 100);
}

TEST_CASE("constant tuple reports a forest") {
  auto a = analyze(parse_tuple<double>(R"({"values": [1, 1, 1]})"), false);
  REQUIRE(a.poset);
  CHECK_FALSE(a.poset->is_tree());
  CHECK(render_text(a).find("poset (forest)") != std::string::npos);
}
