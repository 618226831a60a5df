#pragma once

#include <cstddef>
#include <span>

namespace tailtau {

/// Boxplot statistics of a set of repetitions. NaN entries (failed
/// repetitions) are excluded and counted separately.
struct BoxStats {
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double lower_whisker = 0.0;  // smallest value >= q25 - 1.5 IQR
  double upper_whisker = 0.0;  // largest value <= q75 + 1.5 IQR
  std::size_t n = 0;
  std::size_t n_failed = 0;
};

BoxStats box_stats(std::span<const double> values);

}  // namespace tailtau
