#include "metiblt/design.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace metiblt {

void ExtendableDesign::validate() const {
  if (m1 == 0) throw std::invalid_argument("design: m1 must be positive");
  if (p.empty()) throw std::invalid_argument("design: empty type distribution");
  double sum = 0.0;
  for (double q : p) {
    if (q < 0.0) throw std::invalid_argument("design: negative type probability");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("design: type distribution must sum to 1");
  if (base_rows.empty()) throw std::invalid_argument("design: no degree rows");
  for (const auto& row : base_rows) {
    if (row.size() != p.size())
      throw std::invalid_argument("design: degree row width must match data types");
    for (int a : row)
      if (a < 0 || a > max_degree)
        throw std::invalid_argument("design: degree outside [0, max_degree]");
  }
  for (int a : base_rows[0])
    if (a < 1)
      throw std::invalid_argument("design: first row must map every data type at least once");
}

MetConfig ExtendableDesign::materialize(int cell_types, int nu_bits, int kappa_bits,
                                        std::uint64_t seed, std::string id) const {
  validate();
  if (cell_types < 1) throw std::invalid_argument("design: need at least one cell type");
  if (cell_types > 40) throw std::invalid_argument("design: cell count would overflow");
  MetConfig config;
  config.id = std::move(id);
  config.nu_bits = nu_bits;
  config.kappa_bits = kappa_bits;
  config.seed = seed;
  config.type_dist = p;
  for (int i = 0; i < cell_types; ++i) {
    config.degree.push_back(row(i));
    config.cells_per_type.push_back(m1 << i);
  }
  config.extendable = std::make_shared<ExtendableDesign>(*this);
  config.validate();
  return config;
}

ExtendableDesign reference_design(std::uint64_t m1) {
  ExtendableDesign design;
  design.m1 = m1;
  design.p = {0.1959, 0.1904, 0.6137};
  design.base_rows = {{3, 4, 2}, {1, 4, 1}, {1, 4, 1}, {1, 4, 1}, {1, 5, 1}};
  design.max_degree = 5;
  return design;
}

}  // namespace metiblt
