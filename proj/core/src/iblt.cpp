#include "metiblt/iblt.hpp"

#include <utility>

namespace metiblt {

Iblt::Iblt(MetConfig config) : Iblt(std::move(config), nullptr) {}

Iblt::Iblt(MetConfig config, std::shared_ptr<const CellMapper> mapper)
    : config_(std::move(config)), mapper_(std::move(mapper)) {
  config_.validate();
  if (!mapper_) mapper_ = std::make_shared<PrfMapper>(config_);
  cells_.resize(config_.total_cells());
}

void Iblt::apply(const KeyValuePair& pair, std::int64_t delta) {
  const int type = mapper_->assign_type(pair.key());
  for (std::uint32_t idx : mapper_->map_cells(pair.key(), type)) {
    Cell& c = cells_[idx];
    c.count += delta;
    c.key_sum ^= pair.key();
    c.value_sum ^= pair.value();
  }
}

RecoverResult Iblt::recover() const {
  std::vector<Cell> cells(cells_.begin(), cells_.end());
  RecoverResult result;

  std::vector<std::uint32_t> queue;
  for (std::uint32_t i = 0; i < cells.size(); ++i)
    if (cells[i].count == 1) queue.push_back(i);

  // A table built by inserts only peels at most once per cell; the guard
  // stops runaway loops on malformed input.
  std::uint64_t guard = 4 * cells.size() + 64;
  while (!queue.empty()) {
    const std::uint32_t at = queue.back();
    queue.pop_back();
    if (cells[at].count != 1) continue;
    if (guard-- == 0) return result;

    const auto pair = KeyValuePair::from_parts_unchecked(cells[at].key_sum, cells[at].value_sum);
    result.pairs.push_back(pair);
    const int type = mapper_->assign_type(pair.key());
    for (std::uint32_t idx : mapper_->map_cells(pair.key(), type)) {
      Cell& c = cells[idx];
      c.count -= 1;
      c.key_sum ^= pair.key();
      c.value_sum ^= pair.value();
      if (c.count == 1) queue.push_back(idx);
    }
  }

  result.success = true;
  for (const Cell& c : cells)
    if (c.count != 0) result.success = false;
  return result;
}

}  // namespace metiblt
