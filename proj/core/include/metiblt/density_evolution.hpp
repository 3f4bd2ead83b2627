#ifndef METIBLT_DENSITY_EVOLUTION_HPP
#define METIBLT_DENSITY_EVOLUTION_HPP

#include <cstdint>
#include <vector>

#include "metiblt/config.hpp"

namespace metiblt {

// Edge-perspective description of a table family in the large-system limit:
// cell-type fractions f, mean edge counts per cell a_bar, and the fraction
// lambda[i][j] of type-i cell edges that attach to type-j data nodes.
struct EnsembleParams {
  std::vector<double> p;                    // data-type distribution
  std::vector<std::vector<int>> degree;     // alpha[i][j]
  std::vector<double> f;                    // cell-type fractions, sum 1
  std::vector<double> a_bar;                // sum_j p_j * alpha[i][j]
  std::vector<std::vector<double>> lambda;  // p_j * alpha[i][j] / a_bar[i]

  int cell_types() const { return static_cast<int>(f.size()); }
  int data_types() const { return static_cast<int>(p.size()); }
};

EnsembleParams make_ensemble(const std::vector<double>& p,
                             const std::vector<std::vector<int>>& degree,
                             const std::vector<double>& cell_weights);
EnsembleParams make_ensemble(const MetConfig& config);

// Same family truncated to its first `prefix_types` cell types, with f
// renormalized over the prefix. Load is then measured against prefix cells.
EnsembleParams prefix_ensemble(const EnsembleParams& ensemble, int prefix_types);

// Fraction r[i] of type-i cells that were actually received; an unreceived
// cell behaves as a permanent erasure.
struct ReceptionProfile {
  std::vector<double> r;
  void validate(int cell_types) const;
};

struct DeState {
  std::vector<double> q;      // per cell type: prob. an edge is still unresolved
  std::vector<double> p_avg;  // per cell type: mean unresolved prob. on incoming edges
  std::vector<double> gamma;  // per data type: prob. a data node is unrecovered
  std::uint64_t iteration = 0;
};

DeState de_init(const EnsembleParams& ensemble);

// One update at load eta (elements per cell): cell messages from the last
// data messages, then data messages and per-type erasure probabilities.
void de_step(DeState& state, const EnsembleParams& ensemble, double eta);
void de_step(DeState& state, const EnsembleParams& ensemble, double eta,
             const ReceptionProfile& reception);

struct DeOptions {
  std::uint64_t max_iterations = 100000;
  double gamma_target = 1e-8;  // recovered when every gamma falls below this
  double stall_tol = 1e-12;    // stop once q moves less than this per step
};

struct DeRun {
  bool feasible = false;
  std::uint64_t iterations = 0;
  double max_gamma = 0.0;
};

DeRun de_run(const EnsembleParams& ensemble, double eta, const DeOptions& options = {});
DeRun de_run(const EnsembleParams& ensemble, double eta, const ReceptionProfile& reception,
             const DeOptions& options = {});

struct ThresholdResult {
  double eta_star = 0.0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  bool found = false;  // false: no positive threshold
};

// Largest load the family decodes in the limit, located by bisection over
// [0, 1.5] to width `tol`.
ThresholdResult load_threshold(const EnsembleParams& ensemble, double tol = 1e-4,
                               const DeOptions& options = {});
ThresholdResult load_threshold(const EnsembleParams& ensemble, const ReceptionProfile& reception,
                               double tol = 1e-4, const DeOptions& options = {});

// Threshold of the first `prefix_types` cell types, load measured against
// the prefix cells only.
ThresholdResult prefix_threshold(const EnsembleParams& ensemble, int prefix_types,
                                 double tol = 1e-4, const DeOptions& options = {});

}  // namespace metiblt

#endif
