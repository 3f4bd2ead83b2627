#ifndef METIBLT_CELL_HPP
#define METIBLT_CELL_HPP

#include <cstdint>

#include "metiblt/config.hpp"

namespace metiblt {

// One table cell: signed element count plus XOR accumulators for the keys
// and values of everything mapped here. Counts are kept at 64 bits
// internally; the wire codec rejects counts outside 32-bit range.
struct Cell {
  std::int64_t count = 0;
  std::uint64_t key_sum = 0;
  std::uint64_t value_sum = 0;

  bool is_zero() const { return count == 0 && key_sum == 0 && value_sum == 0; }
  bool operator==(const Cell&) const = default;
};

// Cell-wise difference b - a: counts subtract, data XORs. Elements present
// on both sides cancel exactly.
inline Cell subtract_cells(const Cell& b, const Cell& a) {
  return Cell{b.count - a.count, b.key_sum ^ a.key_sum, b.value_sum ^ a.value_sum};
}

// A cell holds exactly one element (with high probability) when its count is
// +-1 and the key accumulator matches the hash of the value accumulator.
// False positives occur with probability about 2^-nu per impure cell.
bool is_pure(const Cell& cell, const MetConfig& config);

}  // namespace metiblt

#endif
