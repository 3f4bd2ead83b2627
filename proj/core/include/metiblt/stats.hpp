#ifndef METIBLT_STATS_HPP
#define METIBLT_STATS_HPP

#include <cstdint>
#include <span>

namespace metiblt {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959964);

struct MeanCi {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// Sample mean with a normal-approximation confidence interval.
MeanCi mean_interval(std::span<const double> samples, double z = 1.959964);

}  // namespace metiblt

#endif
