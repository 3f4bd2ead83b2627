#include "metiblt/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "metiblt/prf.hpp"

namespace metiblt {

namespace {

// Cumulative probability as 64-bit fixed point. Comparing a uniform 64-bit
// PRF word against these thresholds realizes the distribution exactly in the
// quantized sense; integer comparison means ties cannot occur.
std::uint64_t fixed_point(double cum) {
  if (cum >= 1.0) return ~0ULL;
  if (cum <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::ldexp(cum, 64));
}

}  // namespace

PrfMapper::PrfMapper(const MetConfig& config) : seed_(config.seed), degree_(config.degree) {
  config.validate();
  double cum = 0.0;
  for (int j = 0; j + 1 < config.data_types(); ++j) {
    cum += config.type_dist[j];
    cum_thresholds_.push_back(fixed_point(cum));
  }
  cells_per_type_ = config.cells_per_type;
  std::uint64_t offset = 0;
  for (std::uint64_t m : cells_per_type_) {
    type_offset_.push_back(offset);
    offset += m;
  }
}

int PrfMapper::assign_type(std::uint64_t key) const {
  const std::uint64_t u = prf64(seed_, PrfDomain::assign_type, key);
  for (std::size_t j = 0; j < cum_thresholds_.size(); ++j)
    if (u < cum_thresholds_[j]) return static_cast<int>(j);
  return static_cast<int>(cum_thresholds_.size());
}

std::vector<std::uint32_t> PrfMapper::map_cells(std::uint64_t key, int data_type) const {
  if (data_type < 0 || data_type >= static_cast<int>(degree_.empty() ? 0 : degree_[0].size()))
    throw std::invalid_argument("map_cells: data type out of range");
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < cells_per_type_.size(); ++i) {
    const int alpha = degree_[i][data_type];
    const std::uint64_t m = cells_per_type_[i];
    if (alpha == 0) continue;
    if (static_cast<std::uint64_t>(alpha) > m)
      throw std::invalid_argument("map_cells: degree exceeds cells of type " +
                                  std::to_string(i + 1));
    // Distinct draws within the type; draws for one type do not depend on
    // how many later types exist, so extending a table preserves them.
    const std::size_t first = out.size();
    std::uint64_t counter = 0;
    const std::uint64_t give_up = 64 * m + 1024;
    while (out.size() - first < static_cast<std::size_t>(alpha)) {
      if (counter > give_up) throw std::logic_error("map_cells: rejection loop stuck");
      const std::uint64_t draw =
          prf64(seed_, PrfDomain::map_cells, key, (static_cast<std::uint64_t>(i) << 32) | counter);
      ++counter;
      const auto idx = static_cast<std::uint32_t>(type_offset_[i] + draw % m);
      if (std::find(out.begin() + first, out.end(), idx) == out.end()) out.push_back(idx);
    }
  }
  return out;
}

int assign_type(std::uint64_t key, const MetConfig& config) {
  return PrfMapper(config).assign_type(key);
}

std::vector<std::uint32_t> map_cells(std::uint64_t key, int data_type, const MetConfig& config) {
  return PrfMapper(config).map_cells(key, data_type);
}

}  // namespace metiblt
