#include "metiblt/config.hpp"

#include <cmath>
#include <stdexcept>

#include "metiblt/key_value.hpp"
#include "metiblt/prf.hpp"

namespace metiblt {

std::uint64_t MetConfig::total_cells() const {
  std::uint64_t total = 0;
  for (std::uint64_t m : cells_per_type) total += m;
  return total;
}

std::uint64_t MetConfig::type_offset(int cell_type) const {
  std::uint64_t offset = 0;
  for (int i = 0; i < cell_type; ++i) offset += cells_per_type[i];
  return offset;
}

void MetConfig::validate() const {
  if (nu_bits < 8 || nu_bits > 64 || nu_bits % 8 != 0)
    throw std::invalid_argument("config '" + id + "': nu_bits must be a multiple of 8 in [8,64]");
  if (kappa_bits < 8 || kappa_bits > 64 || kappa_bits % 8 != 0)
    throw std::invalid_argument("config '" + id + "': kappa_bits must be a multiple of 8 in [8,64]");
  if (type_dist.empty()) throw std::invalid_argument("config '" + id + "': empty type distribution");
  if (cells_per_type.empty()) throw std::invalid_argument("config '" + id + "': no cell types");
  double sum = 0.0;
  for (double p : type_dist) {
    if (p < 0.0) throw std::invalid_argument("config '" + id + "': negative type probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("config '" + id + "': type distribution must sum to 1");
  if (degree.size() != cells_per_type.size())
    throw std::invalid_argument("config '" + id + "': degree rows must match cell types");
  for (const auto& row : degree) {
    if (static_cast<int>(row.size()) != data_types())
      throw std::invalid_argument("config '" + id + "': degree columns must match data types");
    for (int a : row)
      if (a < 0) throw std::invalid_argument("config '" + id + "': negative degree");
  }
  for (std::uint64_t m : cells_per_type)
    if (m == 0) throw std::invalid_argument("config '" + id + "': empty cell type");
}

void MetConfig::validate_for_reconciliation() const {
  validate();
  for (int j = 0; j < data_types(); ++j)
    if (degree[0][j] < 1)
      throw std::invalid_argument("config '" + id +
                                  "': every data type must map into the first cell type");
}

std::uint64_t MetConfig::digest() const {
  std::uint64_t h = prf64(seed, PrfDomain::config_digest, 0x6d6574ULL);
  auto fold = [&h](std::uint64_t w) { h = mix64(h ^ w); };
  fold(static_cast<std::uint64_t>(nu_bits));
  fold(static_cast<std::uint64_t>(kappa_bits));
  fold(static_cast<std::uint64_t>(type_dist.size()));
  for (double p : type_dist) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(p));
    __builtin_memcpy(&bits, &p, sizeof(bits));
    fold(bits);
  }
  fold(static_cast<std::uint64_t>(cells_per_type.size()));
  for (std::uint64_t m : cells_per_type) fold(m);
  for (const auto& row : degree)
    for (int a : row) fold(static_cast<std::uint64_t>(a));
  return h;
}

std::uint64_t derive_key(std::uint64_t value, std::uint64_t seed, int nu_bits) {
  return prf64(seed, PrfDomain::derive_key, value) & low_bits_mask(nu_bits);
}

std::uint64_t derive_key(std::uint64_t value, const MetConfig& config) {
  return derive_key(value, config.seed, config.nu_bits);
}

KeyValuePair KeyValuePair::from_value(std::uint64_t value, const MetConfig& config) {
  if (value & ~low_bits_mask(config.kappa_bits))
    throw std::invalid_argument("value does not fit in " + std::to_string(config.kappa_bits) +
                                " bits");
  return KeyValuePair(derive_key(value, config), value);
}

}  // namespace metiblt
