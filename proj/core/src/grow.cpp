#include <stdexcept>

#include "metiblt/design.hpp"
#include "metiblt/iblt.hpp"

namespace metiblt {

Iblt grow_cells(const Iblt& table, int extra_types, std::span<const KeyValuePair> local_set) {
  const MetConfig& old_config = table.config();
  if (!old_config.extendable)
    throw std::invalid_argument("grow_cells: config was not built from an extendable design");
  if (extra_types < 0) throw std::invalid_argument("grow_cells: extra_types must be >= 0");
  if (dynamic_cast<const PrfMapper*>(table.mapper().get()) == nullptr)
    throw std::invalid_argument("grow_cells: only PRF-mapped tables can grow");

  MetConfig config = old_config.extendable->materialize(
      old_config.cell_types() + extra_types, old_config.nu_bits, old_config.kappa_bits,
      old_config.seed, old_config.id);

  Iblt grown(config);
  // Per-type cell draws do not depend on the number of types, so the old
  // cells carry over verbatim and the set only lands in the new range.
  const std::uint64_t old_total = old_config.total_cells();
  for (std::uint64_t i = 0; i < old_total; ++i) grown.cells_[i] = table.cells_[i];
  for (const auto& pair : local_set) {
    const int type = grown.mapper_->assign_type(pair.key());
    for (std::uint32_t idx : grown.mapper_->map_cells(pair.key(), type)) {
      if (idx < old_total) continue;
      Cell& c = grown.cells_[idx];
      c.count += 1;
      c.key_sum ^= pair.key();
      c.value_sum ^= pair.value();
    }
  }
  return grown;
}

}  // namespace metiblt
