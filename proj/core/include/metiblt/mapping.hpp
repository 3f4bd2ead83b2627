#ifndef METIBLT_MAPPING_HPP
#define METIBLT_MAPPING_HPP

#include <cstdint>
#include <vector>

#include "metiblt/config.hpp"

namespace metiblt {

// How keys choose their data type and their cells. The default is the seeded
// PRF mapper below; tests substitute fixed mappings through this interface.
class CellMapper {
 public:
  virtual ~CellMapper() = default;
  // Data type of a key, in [0, d_d).
  virtual int assign_type(std::uint64_t key) const = 0;
  // Global cell indices a key of data type `data_type` maps to, grouped by
  // cell type in type order, distinct within each type.
  virtual std::vector<std::uint32_t> map_cells(std::uint64_t key, int data_type) const = 0;
};

class PrfMapper final : public CellMapper {
 public:
  explicit PrfMapper(const MetConfig& config);

  int assign_type(std::uint64_t key) const override;
  std::vector<std::uint32_t> map_cells(std::uint64_t key, int data_type) const override;

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> cum_thresholds_;  // d_d - 1 entries, 64-bit fixed point
  std::vector<std::vector<int>> degree_;
  std::vector<std::uint64_t> cells_per_type_;
  std::vector<std::uint64_t> type_offset_;
};

// Convenience wrappers over a PrfMapper built on the fly.
int assign_type(std::uint64_t key, const MetConfig& config);
std::vector<std::uint32_t> map_cells(std::uint64_t key, int data_type, const MetConfig& config);

}  // namespace metiblt

#endif
