#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "metiblt/design.hpp"
#include "metiblt/experiments.hpp"

using namespace metiblt;

TEST_CASE("rescaling preserves type fractions and never drops a type") {
  auto config = reference_design(50).materialize(8, 32, 32, 3, "ref8");
  const double total = static_cast<double>(config.total_cells());

  for (std::uint64_t target : {1000ull, 12750ull, 100000ull}) {
    auto scaled = scale_config_cells(config, target);
    CHECK(scaled.total_cells() == target);
    REQUIRE(scaled.cells_per_type.size() == config.cells_per_type.size());
    for (std::size_t i = 0; i < scaled.cells_per_type.size(); ++i) {
      CHECK(scaled.cells_per_type[i] >= 1);
      double want = static_cast<double>(config.cells_per_type[i]) / total;
      double got = static_cast<double>(scaled.cells_per_type[i]) / static_cast<double>(target);
      CHECK(std::abs(got - want) < 1.0 / 1000.0 + 1e-9);
    }
    CHECK_NOTHROW(scaled.validate());
    // the scaled table is no longer the doubling family
    CHECK(scaled.extendable == nullptr);
  }
}

TEST_CASE("rescaling refuses totals below one cell per type") {
  auto config = reference_design(50).materialize(8, 32, 32, 3, "ref8");
  CHECK_THROWS_AS(scale_config_cells(config, 4), std::invalid_argument);
}

TEST_CASE("sampled values are distinct and in range") {
  std::mt19937_64 rng(5);
  auto values = sample_distinct_values(5000, 16, rng);
  CHECK(values.size() == 5000);
  std::set<std::uint64_t> unique(values.begin(), values.end());
  CHECK(unique.size() == values.size());
  for (auto v : values) CHECK(v < (std::uint64_t{1} << 16));
}

TEST_CASE("set pairs hit the requested difference exactly") {
  std::mt19937_64 rng(11);
  for (std::uint64_t delta : {0ull, 1ull, 10ull, 101ull}) {
    auto pair = sample_set_pair(500, delta, 32, rng);
    std::set<std::uint64_t> a(pair.a.begin(), pair.a.end());
    std::set<std::uint64_t> b(pair.b.begin(), pair.b.end());
    REQUIRE(a.size() == pair.a.size());
    REQUIRE(b.size() == pair.b.size());
    CHECK(a.size() == 500);

    std::vector<std::uint64_t> sym;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(sym));
    CHECK(sym.size() == delta);
  }
}

TEST_CASE("per-trial seeds separate streams and trials") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t stream : {0ull, 1ull, 2ull})
    for (std::uint64_t trial = 0; trial < 5; ++trial)
      seen.insert(trial_seed(9, stream, trial));
  CHECK(seen.size() == 15);
  CHECK(trial_seed(9, 1, 2) == trial_seed(9, 1, 2));
  CHECK(trial_seed(9, 1, 2) != trial_seed(10, 1, 2));
}

TEST_CASE("a small loss sweep behaves like the threshold says") {
  PeSweepSpec spec;
  spec.config = reference_design(50).materialize(8, 32, 32, 3, "ref8");
  spec.m_totals = {2000};
  spec.etas = {0.60, 1.05};
  spec.trials = 12;
  spec.seed = 4;

  auto points = pe_sweep_points(spec);
  REQUIRE(points.size() == 2);
  CHECK(points[0].m == 2000);
  CHECK(points[0].inserted == 1200);
  CHECK(points[0].trials == 12);
  // far below threshold nearly everything peels; far above it cannot
  CHECK(points[0].pe < 0.02);
  CHECK(points[1].pe > 0.10);
  CHECK(points[0].ci.low <= points[0].pe);
  CHECK(points[0].pe <= points[0].ci.high);

  auto table = run_pe_sweep(spec);
  CHECK(table.x_name == "eta");
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].id == "ref8@m=2000");
  CHECK(table.rows[0].stat == "pe");
  CHECK(table.rows[0].x == doctest::Approx(0.60));

  // deterministic for a fixed spec
  auto again = pe_sweep_points(spec);
  CHECK(again[0].pe == points[0].pe);
  CHECK(again[1].pe == points[1].pe);
}

TEST_CASE("a small reconciliation sweep compares all four schemes") {
  ReconcileSweepSpec spec;
  spec.met_config = reference_design(16).materialize(8, 32, 32, 5, "met");
  spec.deltas = {8, 24};
  spec.set_size = 300;
  spec.trials = 6;
  spec.seed = 2;
  spec.regular_m = 300;
  spec.regular_packet_cells = 25;
  spec.dd_table.rows = {{10, 30}, {100, 220}};

  auto points = reconcile_sweep_points(spec);
  // met + regular + two analytic baselines, per delta
  REQUIRE(points.size() == 8);

  for (const auto& point : points) {
    if (point.scheme == "met-rateless" || point.scheme == "regular-rateless") {
      CHECK(point.trials == 6);
      CHECK(point.successes == 6);  // tiny differences always decode
      CHECK(point.wire_bytes.mean >= point.cell_bytes.mean);
    } else {
      CHECK(point.trials == 0);
      CHECK(point.success_rate == 1.0);
    }
  }

  // the streaming scheme stops early; the single-type table sends everything
  const auto* met8 = &points[0];
  const ReconcilePoint* reg8 = nullptr;
  for (const auto& point : points)
    if (point.delta == 8) {
      if (point.scheme == "met-rateless") met8 = &point;
      if (point.scheme == "regular-rateless") reg8 = &point;
    }
  REQUIRE(reg8 != nullptr);
  CHECK(met8->cell_bytes.mean < reg8->cell_bytes.mean);
  CHECK(reg8->cell_bytes.mean == doctest::Approx(300 * 12.0));

  auto table = run_reconciliation_sweep(spec);
  CHECK(table.x_name == "delta");
  bool has_success = false;
  for (const auto& row : table.rows)
    if (row.stat == "success_rate") has_success = true;
  CHECK(has_success);
}
