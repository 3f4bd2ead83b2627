#ifndef METIBLT_ANNEALING_HPP
#define METIBLT_ANNEALING_HPP

#include <cstdint>
#include <vector>

#include "metiblt/density_evolution.hpp"
#include "metiblt/design.hpp"

namespace metiblt {

struct AnnealOptions {
  std::uint64_t budget = 2000;  // candidate evaluations
  std::uint64_t seed = 1;
  int probe_types = 8;          // objective = worst prefix threshold over 1..probe_types
  double initial_temperature = 0.02;
  double cooling = 0.995;       // geometric, applied per evaluation
  double p_step = 0.01;
  double p_quantum = 1e-4;
  double threshold_tol = 1e-3;
  DeOptions de{.max_iterations = 20000};
};

struct AnnealTraceRow {
  std::uint64_t evaluation = 0;
  double temperature = 0.0;
  double objective = 0.0;       // candidate
  double best_objective = 0.0;
  bool accepted = false;
};

struct AnnealResult {
  ExtendableDesign best;
  double best_objective = 0.0;
  std::vector<AnnealTraceRow> trace;
};

// Worst prefix threshold of the design over prefixes 1..probe_types, found
// with one bisection over the joint feasibility of all prefixes.
double design_objective(const ExtendableDesign& design, const AnnealOptions& options);

// Random-restart-free simulated annealing over (p, degree rows): one move
// shifts a quantized probability mass of p_step between types or steps a
// single degree by one, staying within [0, max_degree] and keeping the first
// row at least 1 everywhere. Deterministic for a fixed seed.
AnnealResult anneal(const ExtendableDesign& initial, const AnnealOptions& options);

}  // namespace metiblt

#endif
