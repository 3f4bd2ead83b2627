#ifndef METIBLT_EXPERIMENTS_HPP
#define METIBLT_EXPERIMENTS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "metiblt/config.hpp"
#include "metiblt/cost_model.hpp"
#include "metiblt/stats.hpp"
#include "metiblt/table.hpp"

namespace metiblt {

// Rescales a config to `m_total` cells, preserving the per-type fractions
// (largest-remainder rounding).
MetConfig scale_config_cells(const MetConfig& config, std::uint64_t m_total);

// `count` distinct kappa-bit values.
std::vector<std::uint64_t> sample_distinct_values(std::uint64_t count, int kappa_bits,
                                                  std::mt19937_64& rng);

// Two sets of `set_size` elements (B one smaller for odd differences) whose
// symmetric difference has exactly `delta` elements.
struct SetPair {
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
};
SetPair sample_set_pair(std::uint64_t set_size, std::uint64_t delta, int kappa_bits,
                        std::mt19937_64& rng);

// Loss-rate sweep: for each table size and load, insert round(eta * m)
// random elements and measure the fraction recovery leaves behind.
struct PeSweepSpec {
  MetConfig config;
  std::vector<std::uint64_t> m_totals;
  std::vector<double> etas;
  std::uint64_t trials = 50;
  std::uint64_t seed = 1;
};

struct PePoint {
  std::uint64_t m = 0;
  double eta = 0.0;
  std::uint64_t inserted = 0;  // per trial
  std::uint64_t trials = 0;
  double pe = 0.0;
  Interval ci;  // Wilson over element recovery
};

std::vector<PePoint> pe_sweep_points(const PeSweepSpec& spec);
ResultTable run_pe_sweep(const PeSweepSpec& spec);

// Transfer-cost sweep across difference sizes, comparing the streaming
// protocol against the fixed-size baselines.
struct ReconcileSweepSpec {
  MetConfig met_config;  // streaming scheme table
  std::vector<std::uint64_t> deltas;
  std::uint64_t set_size = 10000;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::uint64_t met_packet_cells = 1;
  bool run_met = true;
  bool run_regular = true;           // 3-regular table over the same protocol
  std::uint64_t regular_m = 10000;
  std::uint64_t regular_packet_cells = 100;
  bool model_difference_digest = true;
  bool model_cpi = true;
  DiffDigestTable dd_table;          // required when model_difference_digest
  double dd_oversize_c = 1.0;
};

struct ReconcilePoint {
  std::uint64_t delta = 0;
  std::string scheme;
  std::uint64_t trials = 0;  // 0 for analytic models
  std::uint64_t successes = 0;
  MeanCi cell_bytes;         // cells transferred, at wire size per cell
  MeanCi wire_bytes;         // including frame headers and digest
  double success_rate = 1.0;
};

std::vector<ReconcilePoint> reconcile_sweep_points(const ReconcileSweepSpec& spec);
ResultTable run_reconciliation_sweep(const ReconcileSweepSpec& spec);

// Runs fn(trial) for trial in [0, trials) across a small worker pool; the
// per-trial seeds and result slots make the outcome independent of thread
// count and interleaving.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

}  // namespace metiblt

#endif
