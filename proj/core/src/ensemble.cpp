#include <cmath>
#include <stdexcept>

#include "metiblt/density_evolution.hpp"

namespace metiblt {

EnsembleParams make_ensemble(const std::vector<double>& p,
                             const std::vector<std::vector<int>>& degree,
                             const std::vector<double>& cell_weights) {
  if (p.empty()) throw std::invalid_argument("ensemble: empty type distribution");
  if (degree.size() != cell_weights.size())
    throw std::invalid_argument("ensemble: degree rows must match cell weights");
  double psum = 0.0;
  for (double q : p) {
    if (q < 0.0) throw std::invalid_argument("ensemble: negative type probability");
    psum += q;
  }
  if (std::abs(psum - 1.0) > 1e-12)
    throw std::invalid_argument("ensemble: type distribution must sum to 1");

  EnsembleParams ens;
  ens.p = p;
  ens.degree = degree;

  double wsum = 0.0;
  for (double w : cell_weights) {
    if (w <= 0.0) throw std::invalid_argument("ensemble: cell weights must be positive");
    wsum += w;
  }
  for (double w : cell_weights) ens.f.push_back(w / wsum);

  for (const auto& row : degree) {
    if (row.size() != p.size())
      throw std::invalid_argument("ensemble: degree row width must match data types");
    double abar = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (row[j] < 0) throw std::invalid_argument("ensemble: negative degree entry");
      abar += p[j] * row[j];
    }
    ens.a_bar.push_back(abar);
    std::vector<double> lam(p.size(), 0.0);
    if (abar > 0.0)
      for (std::size_t j = 0; j < p.size(); ++j) lam[j] = p[j] * row[j] / abar;
    ens.lambda.push_back(std::move(lam));
  }
  return ens;
}

EnsembleParams make_ensemble(const MetConfig& config) {
  config.validate();
  std::vector<double> weights;
  for (std::uint64_t m : config.cells_per_type) weights.push_back(static_cast<double>(m));
  return make_ensemble(config.type_dist, config.degree, weights);
}

EnsembleParams prefix_ensemble(const EnsembleParams& ensemble, int prefix_types) {
  if (prefix_types < 1 || prefix_types > ensemble.cell_types())
    throw std::invalid_argument("prefix_ensemble: prefix outside [1, cell_types]");
  std::vector<std::vector<int>> degree(ensemble.degree.begin(),
                                       ensemble.degree.begin() + prefix_types);
  std::vector<double> weights(ensemble.f.begin(), ensemble.f.begin() + prefix_types);
  return make_ensemble(ensemble.p, degree, weights);
}

}  // namespace metiblt
