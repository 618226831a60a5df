#include "tailtau/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tailtau/core_stats.hpp"

namespace tailtau {

BoxStats box_stats(std::span<const double> values) {
  std::vector<double> v;
  v.reserve(values.size());
  BoxStats out;
  for (double x : values) {
    if (std::isnan(x)) {
      ++out.n_failed;
    } else {
      v.push_back(x);
    }
  }
  out.n = v.size();
  if (v.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.q25 = out.median = out.q75 = out.lower_whisker = out.upper_whisker = nan;
    return out;
  }
  std::sort(v.begin(), v.end());
  out.q25 = quantile_sorted(v, 0.25);
  out.median = quantile_sorted(v, 0.5);
  out.q75 = quantile_sorted(v, 0.75);
  const double fence = 1.5 * (out.q75 - out.q25);
  out.lower_whisker = *std::lower_bound(v.begin(), v.end(), out.q25 - fence);
  out.upper_whisker = *(std::upper_bound(v.begin(), v.end(), out.q75 + fence) - 1);
  return out;
}

}  // namespace tailtau
