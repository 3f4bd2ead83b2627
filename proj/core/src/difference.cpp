#include "metiblt/difference.hpp"

#include <algorithm>
#include <stdexcept>

namespace metiblt {

bool is_pure(const Cell& cell, const MetConfig& config) {
  if (cell.count != 1 && cell.count != -1) return false;
  return derive_key(cell.value_sum, config) == cell.key_sum;
}

DifferenceIblt::DifferenceIblt(const Iblt& local)
    : config_(local.config()),
      mapper_(local.mapper()),
      local_cells_(local.cells().begin(), local.cells().end()) {}

void DifferenceIblt::append_remote_cell(const Cell& remote) {
  if (cells_.size() >= local_cells_.size())
    throw std::out_of_range("append_remote_cell: all cells already received");
  cells_.push_back(subtract_cells(local_cells_[cells_.size()], remote));
}

DifferenceIblt DifferenceIblt::full_difference(const Iblt& local_b, const Iblt& remote_a) {
  if (local_b.config().digest() != remote_a.config().digest())
    throw std::invalid_argument("full_difference: tables built under different configs");
  DifferenceIblt diff(local_b);
  for (const Cell& c : remote_a.cells()) diff.append_remote_cell(c);
  return diff;
}

ModifiedRecoverResult DifferenceIblt::modified_recover() const {
  std::vector<Cell> cells(cells_.begin(), cells_.end());
  const std::size_t received = cells.size();
  ModifiedRecoverResult result;

  std::vector<std::uint32_t> queue;
  for (std::uint32_t i = 0; i < received; ++i)
    if (cells[i].count == 1 || cells[i].count == -1) queue.push_back(i);

  // Impure count +-1 cells stay in place and are revisited only when a
  // removal touches them again (the queue re-pushes on every count change).
  std::uint64_t guard = 4 * received + 64;
  while (!queue.empty()) {
    const std::uint32_t at = queue.back();
    queue.pop_back();
    if (!is_pure(cells[at], config_)) continue;
    if (guard-- == 0) return result;

    const auto pair = KeyValuePair::from_parts_unchecked(cells[at].key_sum, cells[at].value_sum);
    // +1 means B inserted it and A did not: remove its contribution.
    // -1 means A inserted it and B did not: add the contribution back.
    const std::int64_t delta = cells[at].count == 1 ? -1 : +1;
    if (delta == -1)
      result.difference.only_in_b.push_back(pair);
    else
      result.difference.only_in_a.push_back(pair);

    const int type = mapper_->assign_type(pair.key());
    for (std::uint32_t idx : mapper_->map_cells(pair.key(), type)) {
      if (idx >= received) continue;
      Cell& c = cells[idx];
      c.count += delta;
      c.key_sum ^= pair.key();
      c.value_sum ^= pair.value();
      if (c.count == 1 || c.count == -1) queue.push_back(idx);
    }
  }

  result.success = true;
  for (const Cell& c : cells)
    if (!c.is_zero()) result.success = false;

  std::sort(result.difference.only_in_b.begin(), result.difference.only_in_b.end());
  std::sort(result.difference.only_in_a.begin(), result.difference.only_in_a.end());
  return result;
}

}  // namespace metiblt
