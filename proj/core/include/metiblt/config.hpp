#ifndef METIBLT_CONFIG_HPP
#define METIBLT_CONFIG_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace metiblt {

struct ExtendableDesign;

// Parameters shared by both ends of a reconciliation session: key width,
// value width, PRF seed, the data-type distribution p, the degree matrix
// (rows are cell types, columns are data types) and the number of cells of
// each type. Cells of type i occupy one contiguous index range, type ranges
// appear in order.
struct MetConfig {
  std::string id;
  int nu_bits = 32;     // key width, multiple of 8, <= 64
  int kappa_bits = 32;  // value width, multiple of 8, <= 64
  std::uint64_t seed = 0;
  std::vector<double> type_dist;               // p, one entry per data type
  std::vector<std::vector<int>> degree;        // alpha[i][j], cell type i, data type j
  std::vector<std::uint64_t> cells_per_type;   // m_i
  // Present when the config was materialized from an extendable design;
  // required by grow_cells.
  std::shared_ptr<const ExtendableDesign> extendable;

  int data_types() const { return static_cast<int>(type_dist.size()); }
  int cell_types() const { return static_cast<int>(cells_per_type.size()); }
  std::uint64_t total_cells() const;
  std::uint64_t type_offset(int cell_type) const;

  // Shape and distribution checks that every config must satisfy.
  void validate() const;
  // Additional requirement for reconciliation use: every data type must map
  // at least once into the first cell type, otherwise an early decode could
  // silently miss part of the difference.
  void validate_for_reconciliation() const;

  // Digest over the fields both hosts must agree on (everything except id).
  std::uint64_t digest() const;
};

std::uint64_t derive_key(std::uint64_t value, std::uint64_t seed, int nu_bits);
std::uint64_t derive_key(std::uint64_t value, const MetConfig& config);

}  // namespace metiblt

#endif
