#ifndef METIBLT_DESIGN_HPP
#define METIBLT_DESIGN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metiblt/config.hpp"

namespace metiblt {

// A table family that can grow without re-mapping: cell counts double from
// type to type (m_i = 2^(i-1) * m_1) and the degree matrix repeats its last
// explicit row for every further type. Materializing with any number of
// types yields configs that agree on every shared cell.
struct ExtendableDesign {
  std::uint64_t m1 = 50;
  std::vector<double> p;                    // data-type distribution
  std::vector<std::vector<int>> base_rows;  // explicit degree rows, one per leading cell type
  int max_degree = 5;

  int data_types() const { return static_cast<int>(p.size()); }
  const std::vector<int>& row(int cell_type) const {
    return base_rows[std::min<std::size_t>(cell_type, base_rows.size() - 1)];
  }

  void validate() const;
  MetConfig materialize(int cell_types, int nu_bits, int kappa_bits, std::uint64_t seed,
                        std::string id) const;

  bool operator==(const ExtendableDesign&) const = default;
};

// The shipped reference layout: three data types, five explicit degree rows,
// doubling cell counts. Its worst prefix threshold over eight types is about
// 0.784, and deeper prefixes settle near 0.783.
ExtendableDesign reference_design(std::uint64_t m1 = 50);

}  // namespace metiblt

#endif
