#include "metiblt/annealing.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "metiblt/prf.hpp"

namespace metiblt {

namespace {

std::vector<double> prefix_weights(int types) {
  std::vector<double> w;
  for (int i = 0; i < types; ++i) w.push_back(std::ldexp(1.0, i));
  return w;
}

std::vector<EnsembleParams> prefix_family(const ExtendableDesign& design, int probe_types) {
  std::vector<std::vector<int>> degree;
  for (int i = 0; i < probe_types; ++i) degree.push_back(design.row(i));
  const EnsembleParams full = make_ensemble(design.p, degree, prefix_weights(probe_types));
  std::vector<EnsembleParams> family;
  for (int i = 1; i <= probe_types; ++i) family.push_back(prefix_ensemble(full, i));
  return family;
}

// Worst prefix threshold via one bisection on the joint feasibility of all
// prefixes. `first_check` remembers the last binding prefix so infeasible
// probes exit early.
double joint_objective(const std::vector<EnsembleParams>& family, double tol,
                       const DeOptions& de, int& first_check) {
  auto feasible = [&](double eta) {
    const int n = static_cast<int>(family.size());
    for (int step = 0; step < n; ++step) {
      const int i = (first_check + step) % n;
      if (!de_run(family[i], eta, de).feasible) {
        first_check = i;
        return false;
      }
    }
    return true;
  };
  double lo = 1e-3;
  double hi = 1.5;
  if (!feasible(lo)) return 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::uint64_t design_digest(const ExtendableDesign& design, double quantum, int probe_types) {
  std::uint64_t h = prf64(0, PrfDomain::config_digest, 0x616e6e65616cULL);
  auto fold = [&h](std::uint64_t w) { h = mix64(h ^ w); };
  fold(static_cast<std::uint64_t>(probe_types));
  for (double p : design.p)
    fold(static_cast<std::uint64_t>(std::llround(p / quantum)));
  for (const auto& row : design.base_rows)
    for (int a : row) fold(static_cast<std::uint64_t>(a));
  return h;
}

// Snap p onto the quantum grid with the exact total preserved; the largest
// entry absorbs the rounding residue.
void quantize_dist(std::vector<double>& p, double quantum) {
  const long long total = std::llround(1.0 / quantum);
  std::vector<long long> units(p.size());
  long long sum = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    units[j] = std::llround(p[j] / quantum);
    if (units[j] < 0) units[j] = 0;
    sum += units[j];
  }
  std::size_t largest = 0;
  for (std::size_t j = 1; j < p.size(); ++j)
    if (units[j] > units[largest]) largest = j;
  units[largest] += total - sum;
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = static_cast<double>(units[j]) * quantum;
}

double uniform01(std::mt19937_64& rng) { return std::ldexp(static_cast<double>(rng() >> 11), -53); }

// One candidate move; returns false when the drawn move leaves the search
// space (caller redraws).
bool propose(ExtendableDesign& design, std::mt19937_64& rng, const AnnealOptions& options) {
  const auto dd = design.p.size();
  const auto rows = design.base_rows.size();
  if (rng() % 2 == 0 && dd >= 2) {
    const std::size_t j = rng() % dd;
    const double sign = rng() % 2 == 0 ? 1.0 : -1.0;
    design.p[j] += sign * options.p_step;
    if (design.p[j] < 0.0) return false;
    double sum = 0.0;
    for (double q : design.p) sum += q;
    for (double& q : design.p) q /= sum;
    quantize_dist(design.p, options.p_quantum);
    return true;
  }
  const std::size_t i = rng() % rows;
  const std::size_t j = rng() % dd;
  const int sign = rng() % 2 == 0 ? 1 : -1;
  const int next = design.base_rows[i][j] + sign;
  const int low = i == 0 ? 1 : 0;
  if (next < low || next > design.max_degree) return false;
  design.base_rows[i][j] = next;
  return true;
}

}  // namespace

double design_objective(const ExtendableDesign& design, const AnnealOptions& options) {
  design.validate();
  int first_check = static_cast<int>(options.probe_types) - 1;
  return joint_objective(prefix_family(design, options.probe_types), options.threshold_tol,
                         options.de, first_check);
}

AnnealResult anneal(const ExtendableDesign& initial, const AnnealOptions& options) {
  initial.validate();
  if (options.probe_types < 1) throw std::invalid_argument("anneal: probe_types must be >= 1");

  std::mt19937_64 rng(options.seed);
  std::unordered_map<std::uint64_t, double> cache;
  int first_check = options.probe_types - 1;

  auto evaluate = [&](const ExtendableDesign& design) {
    const std::uint64_t key = design_digest(design, options.p_quantum, options.probe_types);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const double obj = joint_objective(prefix_family(design, options.probe_types),
                                       options.threshold_tol, options.de, first_check);
    cache.emplace(key, obj);
    return obj;
  };

  ExtendableDesign current = initial;
  quantize_dist(current.p, options.p_quantum);
  double current_obj = evaluate(current);

  AnnealResult result;
  result.best = current;
  result.best_objective = current_obj;

  double temperature = options.initial_temperature;
  for (std::uint64_t eval = 1; eval <= options.budget; ++eval) {
    ExtendableDesign candidate = current;
    bool valid = false;
    for (int tries = 0; tries < 64 && !valid; ++tries) {
      candidate = current;
      valid = propose(candidate, rng, options);
    }
    if (!valid) break;  // search space exhausted around the current point

    const double candidate_obj = evaluate(candidate);
    const double delta = candidate_obj - current_obj;
    const bool accepted = delta >= 0.0 || uniform01(rng) < std::exp(delta / temperature);
    if (accepted) {
      current = candidate;
      current_obj = candidate_obj;
      if (candidate_obj > result.best_objective) {
        result.best = candidate;
        result.best_objective = candidate_obj;
      }
    }
    result.trace.push_back({eval, temperature, candidate_obj, result.best_objective, accepted});
    temperature *= options.cooling;
  }
  return result;
}

}  // namespace metiblt
