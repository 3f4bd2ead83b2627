#include <doctest.h>

#include <cmath>

#include "metiblt/annealing.hpp"

using namespace metiblt;

namespace {

// deliberately weak starting point: uniform p, flat low degrees
ExtendableDesign weak_start() {
  ExtendableDesign design;
  design.m1 = 50;
  design.p = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  design.base_rows = {{2, 2, 2}, {1, 1, 1}};
  design.max_degree = 5;
  return design;
}

AnnealOptions quick_options(std::uint64_t budget, std::uint64_t seed = 1) {
  AnnealOptions options;
  options.budget = budget;
  options.seed = seed;
  options.probe_types = 4;
  options.threshold_tol = 5e-3;
  options.de.max_iterations = 5000;
  return options;
}

}  // namespace

TEST_CASE("a zero budget returns the start, snapped onto the search grid") {
  auto start = weak_start();
  auto options = quick_options(0);
  auto result = anneal(start, options);
  CHECK(result.trace.empty());
  CHECK(result.best.m1 == start.m1);
  CHECK(result.best.base_rows == start.base_rows);
  CHECK(result.best.max_degree == start.max_degree);
  REQUIRE(result.best.p.size() == start.p.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < start.p.size(); ++j) {
    CHECK(std::abs(result.best.p[j] - start.p[j]) <=
          options.p_quantum * static_cast<double>(start.p.size()));
    sum += result.best.p[j];
  }
  CHECK(sum == doctest::Approx(1.0));
  CHECK(result.best_objective ==
        doctest::Approx(design_objective(result.best, options)).epsilon(1e-9));
}

TEST_CASE("the same seed reproduces the same search") {
  auto options = quick_options(60, 42);
  auto first = anneal(weak_start(), options);
  auto second = anneal(weak_start(), options);
  CHECK(first.best == second.best);
  CHECK(first.best_objective == second.best_objective);
  REQUIRE(first.trace.size() == second.trace.size());
  for (std::size_t i = 0; i < first.trace.size(); ++i) {
    CHECK(first.trace[i].objective == second.trace[i].objective);
    CHECK(first.trace[i].accepted == second.trace[i].accepted);
  }
}

TEST_CASE("different seeds explore differently") {
  auto a = anneal(weak_start(), quick_options(60, 1));
  auto b = anneal(weak_start(), quick_options(60, 2));
  bool any_difference = a.trace.size() != b.trace.size();
  for (std::size_t i = 0; !any_difference && i < a.trace.size(); ++i)
    any_difference = a.trace[i].objective != b.trace[i].objective;
  CHECK(any_difference);
}

TEST_CASE("the best objective never decreases along the trace") {
  auto result = anneal(weak_start(), quick_options(80));
  REQUIRE_FALSE(result.trace.empty());
  double best = 0.0;
  for (const auto& row : result.trace) {
    CHECK(row.best_objective >= best - 1e-12);
    best = row.best_objective;
  }
  CHECK(result.best_objective == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("a short search already improves a weak start") {
  auto options = quick_options(150, 7);
  double start_objective = design_objective(weak_start(), options);
  auto result = anneal(weak_start(), options);
  CHECK(result.best_objective > start_objective);
  CHECK_NOTHROW(result.best.validate());
}

TEST_CASE("candidates always stay inside the design constraints") {
  auto result = anneal(weak_start(), quick_options(120, 3));
  auto& best = result.best;
  double sum = 0.0;
  for (double q : best.p) {
    CHECK(q >= 0.0);
    sum += q;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& row : best.base_rows)
    for (int a : row) {
      CHECK(a >= 0);
      CHECK(a <= best.max_degree);
    }
  for (int a : best.base_rows[0]) CHECK(a >= 1);
}

TEST_CASE("the objective matches the worst prefix threshold") {
  auto start = weak_start();
  auto options = quick_options(0);
  double objective = design_objective(start, options);
  // the joint bisection lands within tolerance of the per-prefix minimum
  auto config = start.materialize(options.probe_types, 32, 32, 1, "probe");
  auto ensemble = make_ensemble(config);
  double worst = 2.0;
  for (int i = 1; i <= options.probe_types; ++i) {
    auto result = prefix_threshold(ensemble, i, 1e-4, options.de);
    REQUIRE(result.found);
    worst = std::min(worst, result.eta_star);
  }
  CHECK(objective == doctest::Approx(worst).epsilon(0.02));
}
