#ifndef METIBLT_DIFFERENCE_HPP
#define METIBLT_DIFFERENCE_HPP

#include <memory>
#include <span>
#include <vector>

#include "metiblt/cell.hpp"
#include "metiblt/config.hpp"
#include "metiblt/iblt.hpp"
#include "metiblt/key_value.hpp"
#include "metiblt/mapping.hpp"

namespace metiblt {

// Two-sided set difference recovered from a subtracted table.
struct SignedDifference {
  std::vector<KeyValuePair> only_in_b;  // recovered from count +1 cells
  std::vector<KeyValuePair> only_in_a;  // recovered from count -1 cells
  std::size_t size() const { return only_in_b.size() + only_in_a.size(); }
};

struct ModifiedRecoverResult {
  SignedDifference difference;
  bool success = false;
};

// Prefix of the cell-wise difference (local B minus remote A), grown as the
// remote side streams its cells in index order.
class DifferenceIblt {
 public:
  // Keeps a copy of the local table's cells; appended remote cells are
  // subtracted from the matching local cell.
  explicit DifferenceIblt(const Iblt& local);

  const MetConfig& config() const { return config_; }
  std::size_t received() const { return cells_.size(); }
  std::span<const Cell> cells() const { return cells_; }

  // Appends the difference for the next cell index. Throws once every local
  // cell has been consumed.
  void append_remote_cell(const Cell& remote);

  // Full-table difference of two locally held tables (b - a).
  static DifferenceIblt full_difference(const Iblt& local_b, const Iblt& remote_a);

  // Peels a copy of the received prefix. Pure +1 cells yield elements only B
  // holds (removed from the prefix); pure -1 cells yield elements only A
  // holds (inserted back). Success requires every received cell to end fully
  // zero, so a zero-count prefix with leftover data reports failure.
  ModifiedRecoverResult modified_recover() const;

 private:
  MetConfig config_;
  std::shared_ptr<const CellMapper> mapper_;
  std::vector<Cell> local_cells_;
  std::vector<Cell> cells_;
};

}  // namespace metiblt

#endif
