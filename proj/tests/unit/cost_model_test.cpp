#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "metiblt/cost_model.hpp"

using namespace metiblt;

namespace {

DiffDigestTable three_point_table() {
  DiffDigestTable table;
  table.rows = {{10, 30}, {100, 220}, {1000, 1700}};
  return table;
}

}  // namespace

TEST_CASE("sizing lookups clamp, interpolate and extrapolate") {
  auto table = three_point_table();
  CHECK(table.cells_for(0) == 0);
  CHECK(table.cells_for(3) == 30);    // below the first point: clamp
  CHECK(table.cells_for(10) == 30);   // exactly on a point
  CHECK(table.cells_for(55) == 125);  // halfway: 30 + 0.5 * 190
  CHECK(table.cells_for(100) == 220);
  CHECK(table.cells_for(550) == 960);  // 220 + 0.5 * 1480
  // beyond the last point: last ratio 1.7 cells per element
  CHECK(table.cells_for(2000) == 3400);
  CHECK(table.cells_for(1001) == static_cast<std::uint64_t>(std::ceil(1.7 * 1001)));
}

TEST_CASE("interpolation rounds up rather than down") {
  DiffDigestTable table;
  table.rows = {{1, 10}, {4, 11}};
  // 10 + (2/3) * 1 = 10.67 -> 11
  CHECK(table.cells_for(3) == 11);
}

TEST_CASE("sizing tables round-trip through their file form") {
  auto table = three_point_table();
  std::string path = "cost_model_test_tmp.csv";
  table.save(path, 200, 9, 0.99);

  auto loaded = DiffDigestTable::load(path);
  std::remove(path.c_str());
  REQUIRE(loaded.rows.size() == table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(loaded.rows[i].t == table.rows[i].t);
    CHECK(loaded.rows[i].cells == table.rows[i].cells);
  }
}

TEST_CASE("malformed sizing files are rejected") {
  std::string path = "cost_model_test_bad.csv";
  {
    std::ofstream out(path);
    out << "t,cells\n100,220\n10,30\n";  // descending
  }
  CHECK_THROWS_AS(DiffDigestTable::load(path), std::runtime_error);
  {
    std::ofstream out(path);
    out << "# only a comment\n";
  }
  CHECK_THROWS_AS(DiffDigestTable::load(path), std::runtime_error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(DiffDigestTable::load("does_not_exist.csv"), std::runtime_error);
}

TEST_CASE("baseline byte formulas") {
  auto table = three_point_table();
  CHECK(difference_digest_bytes(10, table) == 15000 + 30 * 12);
  CHECK(difference_digest_bytes(100, table, 1.0) == 15000 + 220 * 12);
  // oversizing inflates the sized element count before the lookup
  CHECK(difference_digest_bytes(100, table, 2.0) ==
        15000 + table.cells_for(200) * 12);
  CHECK_THROWS_AS(difference_digest_bytes(10, table, 0.5), std::invalid_argument);

  CHECK(cpi_bytes(0) == 0);
  CHECK(cpi_bytes(137) == 1370);
}

TEST_CASE("a tiny calibration produces a sane ascending table") {
  auto table = calibrate_diff_digest({4, 16}, 0.9, 40, 123);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].t == 4);
  CHECK(table.rows[1].t == 16);
  CHECK(table.rows[0].cells >= 4);
  CHECK(table.rows[1].cells > table.rows[0].cells);
  // 3-regular tables decode near 1.22 cells per element at scale; tiny
  // tables need slack but never this much
  CHECK(table.rows[1].cells < 16 * 12);

  // same seed, same table
  auto again = calibrate_diff_digest({4, 16}, 0.9, 40, 123);
  CHECK(again.rows[0].cells == table.rows[0].cells);
  CHECK(again.rows[1].cells == table.rows[1].cells);
}
