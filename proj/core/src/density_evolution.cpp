#include "metiblt/density_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace metiblt {

namespace {

double powi(double base, int exp) {
  double out = 1.0;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

ReceptionProfile full_reception(int cell_types) {
  return ReceptionProfile{std::vector<double>(cell_types, 1.0)};
}

}  // namespace

void ReceptionProfile::validate(int cell_types) const {
  if (static_cast<int>(r.size()) != cell_types)
    throw std::invalid_argument("reception profile must list every cell type");
  for (double x : r)
    if (x < 0.0 || x > 1.0)
      throw std::invalid_argument("reception fractions must lie in [0, 1]");
}

DeState de_init(const EnsembleParams& ensemble) {
  DeState state;
  state.q.assign(ensemble.cell_types(), 1.0);
  state.p_avg.assign(ensemble.cell_types(), 1.0);
  state.gamma.assign(ensemble.data_types(), 1.0);
  return state;
}

void de_step(DeState& state, const EnsembleParams& ensemble, double eta) {
  de_step(state, ensemble, eta, full_reception(ensemble.cell_types()));
}

void de_step(DeState& state, const EnsembleParams& ensemble, double eta,
             const ReceptionProfile& reception) {
  const int dc = ensemble.cell_types();
  const int dd = ensemble.data_types();

  // Cell-side update: a type-i cell resolves an edge once every other edge
  // into it is resolved; unreceived cells (fraction 1 - r_i) never resolve.
  for (int i = 0; i < dc; ++i)
    state.q[i] =
        1.0 - reception.r[i] * std::exp(-(eta / ensemble.f[i]) * ensemble.a_bar[i] * state.p_avg[i]);

  // Data-side update: an edge into a type-i cell stays unresolved while the
  // node's other edges (one fewer into type i itself) are all unresolved.
  for (int i = 0; i < dc; ++i) {
    double avg = 0.0;
    for (int j = 0; j < dd; ++j) {
      if (ensemble.lambda[i][j] == 0.0) continue;
      double prod = 1.0;
      for (int k = 0; k < dc; ++k) {
        const int b = k == i ? std::max(0, ensemble.degree[k][j] - 1) : ensemble.degree[k][j];
        prod *= powi(state.q[k], b);
      }
      avg += ensemble.lambda[i][j] * prod;
    }
    state.p_avg[i] = avg;
  }

  for (int j = 0; j < dd; ++j) {
    double prod = 1.0;
    for (int i = 0; i < dc; ++i) prod *= powi(state.q[i], ensemble.degree[i][j]);
    state.gamma[j] = prod;
  }
  ++state.iteration;
}

DeRun de_run(const EnsembleParams& ensemble, double eta, const DeOptions& options) {
  return de_run(ensemble, eta, full_reception(ensemble.cell_types()), options);
}

DeRun de_run(const EnsembleParams& ensemble, double eta, const ReceptionProfile& reception,
             const DeOptions& options) {
  reception.validate(ensemble.cell_types());
  DeState state = de_init(ensemble);
  DeRun run;
  std::vector<double> prev_q;
  while (state.iteration < options.max_iterations) {
    prev_q = state.q;
    de_step(state, ensemble, eta, reception);
    run.iterations = state.iteration;
    run.max_gamma = *std::max_element(state.gamma.begin(), state.gamma.end());
    if (run.max_gamma < options.gamma_target) {
      run.feasible = true;
      return run;
    }
    double move = 0.0;
    for (int i = 0; i < ensemble.cell_types(); ++i)
      move = std::max(move, std::abs(state.q[i] - prev_q[i]));
    if (move < options.stall_tol) return run;  // settled above the target
  }
  return run;
}

namespace {

ThresholdResult bisect_threshold(const std::function<bool(double)>& feasible, double tol) {
  ThresholdResult result;
  if (tol <= 0.0) throw std::invalid_argument("threshold tolerance must be positive");
  double lo = 0.0;
  double hi = 1.5;
  if (!feasible(lo)) return result;  // no threshold at all (e.g. nothing received)
  if (feasible(hi)) {
    // Saturated: every probed load decodes. Report the cap.
    result.eta_star = result.bracket_low = result.bracket_high = hi;
    result.found = true;
    return result;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  result.bracket_low = lo;
  result.bracket_high = hi;
  result.eta_star = 0.5 * (lo + hi);
  result.found = true;
  return result;
}

}  // namespace

ThresholdResult load_threshold(const EnsembleParams& ensemble, double tol,
                               const DeOptions& options) {
  return load_threshold(ensemble, full_reception(ensemble.cell_types()), tol, options);
}

ThresholdResult load_threshold(const EnsembleParams& ensemble, const ReceptionProfile& reception,
                               double tol, const DeOptions& options) {
  reception.validate(ensemble.cell_types());
  return bisect_threshold(
      [&](double eta) { return de_run(ensemble, eta, reception, options).feasible; }, tol);
}

ThresholdResult prefix_threshold(const EnsembleParams& ensemble, int prefix_types, double tol,
                                 const DeOptions& options) {
  return load_threshold(prefix_ensemble(ensemble, prefix_types), tol, options);
}

}  // namespace metiblt
