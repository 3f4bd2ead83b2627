#ifndef METIBLT_IBLT_HPP
#define METIBLT_IBLT_HPP

#include <memory>
#include <span>
#include <vector>

#include "metiblt/cell.hpp"
#include "metiblt/config.hpp"
#include "metiblt/key_value.hpp"
#include "metiblt/mapping.hpp"

namespace metiblt {

struct RecoverResult {
  std::vector<KeyValuePair> pairs;
  bool success = false;
};

// Invertible lookup table with typed cells. Insert and remove are exact
// inverses in any order; recover peels singleton cells and succeeds when it
// empties the table.
class Iblt {
 public:
  explicit Iblt(MetConfig config);
  Iblt(MetConfig config, std::shared_ptr<const CellMapper> mapper);

  const MetConfig& config() const { return config_; }
  const std::shared_ptr<const CellMapper>& mapper() const { return mapper_; }
  std::span<const Cell> cells() const { return cells_; }

  void insert(const KeyValuePair& pair) { apply(pair, +1); }
  void remove(const KeyValuePair& pair) { apply(pair, -1); }

  // Peels a copy of the table. Requires a table built by inserts only;
  // success means every count reached zero and `pairs` is the stored set.
  RecoverResult recover() const;

 private:
  void apply(const KeyValuePair& pair, std::int64_t delta);
  friend Iblt grow_cells(const Iblt&, int, std::span<const KeyValuePair>);

  MetConfig config_;
  std::shared_ptr<const CellMapper> mapper_;
  std::vector<Cell> cells_;
};

// Extends a table built from an extendable design by `extra_types` further
// cell types and inserts the local set into the new cells only; existing
// cells keep their exact contents, so an ongoing cell stream stays valid.
Iblt grow_cells(const Iblt& table, int extra_types, std::span<const KeyValuePair> local_set);

}  // namespace metiblt

#endif
