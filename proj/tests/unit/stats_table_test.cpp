#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "metiblt/stats.hpp"
#include "metiblt/table.hpp"

using namespace metiblt;

TEST_CASE("wilson interval matches hand-computed values") {
  // 8/10 at z=1.96: the textbook example lands near [0.490, 0.943]
  auto ci = wilson_interval(8, 10, 1.96);
  CHECK(ci.low == doctest::Approx(0.4901625).epsilon(1e-4));
  CHECK(ci.high == doctest::Approx(0.9433178).epsilon(1e-4));

  auto zero = wilson_interval(0, 50);
  CHECK(zero.low == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(zero.high > 0.0);
  CHECK(zero.high < 0.1);

  auto all = wilson_interval(50, 50);
  CHECK(all.high == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(all.low > 0.9);

  // no data: the interval is vacuous, not a crash
  auto empty = wilson_interval(0, 0);
  CHECK(empty.low == 0.0);
  CHECK(empty.high == 1.0);
}

TEST_CASE("wilson interval always contains the point estimate") {
  for (std::uint64_t n : {1ull, 7ull, 100ull, 10000ull})
    for (std::uint64_t k = 0; k <= n; k += std::max<std::uint64_t>(1, n / 7)) {
      auto ci = wilson_interval(k, n);
      double phat = static_cast<double>(k) / n;
      CHECK(ci.low <= phat + 1e-12);
      CHECK(ci.high >= phat - 1e-12);
    }
}

TEST_CASE("mean interval on a known sample") {
  std::array<double, 4> samples = {1.0, 2.0, 3.0, 4.0};
  auto ci = mean_interval(samples);
  CHECK(ci.mean == doctest::Approx(2.5).epsilon(1e-12));
  // sd = sqrt(5/3), sem = sd/2
  double sem = std::sqrt(5.0 / 3.0) / 2.0;
  CHECK(ci.low == doctest::Approx(2.5 - 1.959964 * sem).epsilon(1e-9));
  CHECK(ci.high == doctest::Approx(2.5 + 1.959964 * sem).epsilon(1e-9));

  std::array<double, 1> one = {7.0};
  auto degenerate = mean_interval(one);
  CHECK(degenerate.mean == 7.0);
  CHECK(degenerate.low == 7.0);
  CHECK(degenerate.high == 7.0);
}

TEST_CASE("csv output is stable byte for byte") {
  ResultTable table;
  table.x_name = "eta";
  table.rows.push_back({0.785, "e1@m=100000", "pe", 0.0005, 0.0001, 0.002});
  table.rows.push_back({0.845, "e1@m=100000", "pe", 0.25, 0.2, 0.31});

  std::ostringstream out;
  emit(table, TableFormat::csv, out);
  CHECK(out.str() ==
        "eta,id,stat,value,ci_low,ci_high\n"
        "0.785,e1@m=100000,pe,0.0005,0.0001,0.002\n"
        "0.845,e1@m=100000,pe,0.25,0.2,0.31\n");
}

TEST_CASE("json output carries the same rows in order") {
  ResultTable table;
  table.x_name = "delta";
  table.rows.push_back({10, "met-rateless", "wire_bytes_mean", 812.5, 790.0, 835.0});

  std::ostringstream out;
  emit(table, TableFormat::json, out);
  auto text = out.str();
  CHECK(text.find("\"x_name\": \"delta\"") != std::string::npos);
  CHECK(text.find("\"id\": \"met-rateless\"") != std::string::npos);
  CHECK(text.find("\"value\": 812.5") != std::string::npos);
  // key order is fixed, so the document itself is reproducible
  CHECK(text.find("\"x\"") < text.find("\"id\""));
  CHECK(text.find("\"id\"") < text.find("\"stat\""));
}

TEST_CASE("empty tables and unnamed axes are refused") {
  ResultTable table;
  std::ostringstream out;
  CHECK_THROWS_AS(emit(table, TableFormat::csv, out), std::invalid_argument);
  table.x_name = "eta";
  CHECK_THROWS_AS(emit(table, TableFormat::csv, out), std::invalid_argument);
  table.x_name.clear();
  table.rows.push_back({1, "x", "y", 0, 0, 0});
  CHECK_THROWS_AS(emit(table, TableFormat::csv, out), std::invalid_argument);
}

TEST_CASE("format names parse and reject") {
  CHECK(parse_table_format("csv") == TableFormat::csv);
  CHECK(parse_table_format("json") == TableFormat::json);
  CHECK_THROWS_AS(parse_table_format("yaml"), std::invalid_argument);
}

TEST_CASE("file emission round-trips through the filesystem") {
  ResultTable table;
  table.x_name = "i";
  table.rows.push_back({1, "ref", "eta_star", 0.806, 0.805, 0.807});

  std::string path = "stats_table_test_tmp.csv";
  emit_to_file(table, TableFormat::csv, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  in.close();
  std::remove(path.c_str());

  std::ostringstream direct;
  emit(table, TableFormat::csv, direct);
  CHECK(buffer.str() == direct.str());

  CHECK_THROWS_AS(emit_to_file(table, TableFormat::csv, "missing_dir/x.csv"), std::runtime_error);
}
