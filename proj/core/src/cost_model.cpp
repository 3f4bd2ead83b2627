#include "metiblt/cost_model.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "metiblt/iblt.hpp"
#include "metiblt/prf.hpp"

namespace metiblt {

DiffDigestTable DiffDigestTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sizing table '" + path + "'");
  DiffDigestTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("t,", 0) == 0) continue;  // header
    std::istringstream row(line);
    Row r;
    char comma = 0;
    if (!(row >> r.t >> comma >> r.cells))
      throw std::runtime_error("bad row in sizing table '" + path + "': " + line);
    if (!table.rows.empty() && r.t <= table.rows.back().t)
      throw std::runtime_error("sizing table '" + path + "' must be ascending in t");
    table.rows.push_back(r);
  }
  if (table.rows.empty()) throw std::runtime_error("sizing table '" + path + "' is empty");
  return table;
}

void DiffDigestTable::save(const std::string& path, std::uint64_t trials, std::uint64_t seed,
                           double target) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write sizing table '" + path + "'");
  out << "# smallest 3-regular table recovering t elements, calibrated at success >= " << target
      << "\n# trials=" << trials << " seed=" << seed << "\nt,cells\n";
  for (const Row& r : rows) out << r.t << ',' << r.cells << '\n';
}

std::uint64_t DiffDigestTable::cells_for(std::uint64_t t) const {
  if (rows.empty()) throw std::logic_error("sizing table is empty");
  if (t == 0) return 0;
  if (t <= rows.front().t) return rows.front().cells;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (t <= rows[k].t) {
      const auto& lo = rows[k - 1];
      const auto& hi = rows[k];
      const double frac =
          static_cast<double>(t - lo.t) / static_cast<double>(hi.t - lo.t);
      return static_cast<std::uint64_t>(
          std::ceil(lo.cells + frac * static_cast<double>(hi.cells - lo.cells)));
    }
  }
  const auto& last = rows.back();
  const double ratio = static_cast<double>(last.cells) / static_cast<double>(last.t);
  return static_cast<std::uint64_t>(std::ceil(ratio * static_cast<double>(t)));
}

namespace {

MetConfig regular3_config(std::uint64_t m, std::uint64_t seed) {
  MetConfig config;
  config.id = "regular3";
  config.nu_bits = 32;
  config.kappa_bits = 32;
  config.seed = seed;
  config.type_dist = {1.0};
  config.degree = {{3}};
  config.cells_per_type = {m};
  return config;
}

bool regular3_trial(std::uint64_t t, std::uint64_t m, std::mt19937_64& rng) {
  MetConfig config = regular3_config(m, rng());
  Iblt table(config);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(t * 2);
  while (seen.size() < t) {
    const std::uint64_t value = rng() & low_bits_mask(config.kappa_bits);
    if (seen.insert(value).second) table.insert(KeyValuePair::from_value(value, config));
  }
  return table.recover().success;
}

}  // namespace

DiffDigestTable calibrate_diff_digest(const std::vector<std::uint64_t>& t_grid,
                                      double target_success, std::uint64_t trials,
                                      std::uint64_t seed) {
  if (target_success <= 0.0 || target_success >= 1.0)
    throw std::invalid_argument("target success must lie in (0, 1)");
  DiffDigestTable table;
  for (std::uint64_t t : t_grid) {
    if (t == 0) throw std::invalid_argument("calibration grid must be positive");
    auto success_rate = [&](std::uint64_t m) {
      std::uint64_t good = 0;
      for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(prf64(seed, PrfDomain::trial_seed, (t << 24) ^ m, trial));
        if (regular3_trial(t, m, rng)) ++good;
      }
      return static_cast<double>(good) / static_cast<double>(trials);
    };
    // The success probability climbs steeply in m, so a bisection over a
    // generous bracket lands on the knee.
    std::uint64_t lo = std::max<std::uint64_t>(3, t);
    std::uint64_t hi = 4 * t + 32;
    while (success_rate(hi) < target_success) {
      lo = hi;
      hi = 2 * hi;
      if (hi > (1ULL << 26)) throw std::runtime_error("calibration failed to bracket");
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (success_rate(mid) >= target_success ? hi : lo) = mid;
    }
    table.rows.push_back({t, hi});
  }
  return table;
}

std::uint64_t difference_digest_bytes(std::uint64_t delta, const DiffDigestTable& table,
                                      double oversize_c) {
  if (oversize_c < 1.0) throw std::invalid_argument("oversize factor must be >= 1");
  const auto t = static_cast<std::uint64_t>(
      std::ceil(oversize_c * static_cast<double>(delta)));
  return kStrataEstimatorBytes + table.cells_for(t) * 12;
}

std::uint64_t cpi_bytes(std::uint64_t delta) { return 10 * delta; }

}  // namespace metiblt
