#ifndef METIBLT_COST_MODEL_HPP
#define METIBLT_COST_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace metiblt {

// Calibrated sizing for the two-round difference-digest baseline: smallest
// 3-regular table (in cells) that recovers t elements with the target
// success rate. Shipped as a data file; regenerate with the calibration
// tool.
struct DiffDigestTable {
  struct Row {
    std::uint64_t t = 0;
    std::uint64_t cells = 0;
  };
  std::vector<Row> rows;  // ascending in t

  static DiffDigestTable load(const std::string& path);
  void save(const std::string& path, std::uint64_t trials, std::uint64_t seed,
            double target) const;

  // Conservative lookup: interpolates between calibrated points, rounding
  // up, and extrapolates the last cells/t ratio beyond the table.
  std::uint64_t cells_for(std::uint64_t t) const;
};

// Monte-Carlo calibration of 3-regular recovery (fresh random elements per
// trial; success means a complete peel).
DiffDigestTable calibrate_diff_digest(const std::vector<std::uint64_t>& t_grid,
                                      double target_success, std::uint64_t trials,
                                      std::uint64_t seed);

// Analytic per-difference transfer costs used for curve comparison.
// Difference digest: fixed-size strata estimate plus the sized table at 12
// bytes a cell, with the estimate oversized by factor c.
std::uint64_t difference_digest_bytes(std::uint64_t delta, const DiffDigestTable& table,
                                      double oversize_c = 1.0);
// Characteristic-polynomial interpolation: 10 bytes per evaluation point,
// one point per difference element.
std::uint64_t cpi_bytes(std::uint64_t delta);

inline constexpr std::uint64_t kStrataEstimatorBytes = 15000;

}  // namespace metiblt

#endif
