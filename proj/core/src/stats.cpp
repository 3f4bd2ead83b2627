#include "metiblt/stats.hpp"

#include <algorithm>
#include <cmath>

namespace metiblt {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double margin =
      z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, center - margin), std::min(1.0, center + margin)};
}

MeanCi mean_interval(std::span<const double> samples, double z) {
  MeanCi out;
  if (samples.empty()) return out;
  const double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  out.mean = sum / n;
  if (samples.size() == 1) {
    out.low = out.high = out.mean;
    return out;
  }
  double ss = 0.0;
  for (double x : samples) ss += (x - out.mean) * (x - out.mean);
  const double sem = std::sqrt(ss / (n - 1)) / std::sqrt(n);
  out.low = out.mean - z * sem;
  out.high = out.mean + z * sem;
  return out;
}

}  // namespace metiblt
