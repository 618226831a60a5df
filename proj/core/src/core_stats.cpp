#include "tailtau/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "tailtau/error.hpp"

namespace tailtau {

namespace {

bool has_duplicates(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

// Number of unordered pairs within runs of equal keys in an already sorted range.
template <class Eq>
std::int64_t tied_pairs(std::size_t n, Eq&& equal_to_prev) {
  std::int64_t total = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (equal_to_prev(i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  total += run * (run - 1) / 2;
  return total;
}

// Stable merge sort of `v` counting pairs i < j with v[i] > v[j].
std::int64_t count_inversions(std::vector<double>& v) {
  std::vector<double> buf(v.size());
  std::int64_t swaps = 0;
  const std::size_t n = v.size();
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, out = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buf[out++] = v[j++];
        } else {
          buf[out++] = v[i++];
        }
      }
      while (i < mid) buf[out++] = v[i++];
      while (j < hi) buf[out++] = v[j++];
    }
    std::swap(v, buf);
  }
  return swaps;
}

}  // namespace

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y,
                           std::string label_x, std::string label_y)
    : label_x_(std::move(label_x)), label_y_(std::move(label_y)) {
  if (x.size() != y.size()) {
    throw InvalidArgument("paired sample: x has " + std::to_string(x.size()) +
                          " values but y has " + std::to_string(y.size()));
  }
  x_.reserve(x.size());
  y_.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) {
      ++dropped_;
      continue;
    }
    if (std::isinf(x[i]) || std::isinf(y[i])) {
      throw InvalidArgument("paired sample: infinite value at row " + std::to_string(i));
    }
    x_.push_back(x[i]);
    y_.push_back(y[i]);
  }
  if (x_.size() < 2) {
    throw InsufficientData("insufficient data: paired sample needs n >= 2, got " +
                           std::to_string(x_.size()));
  }
}

bool PairedSample::has_ties_x() const { return has_duplicates(x_); }
bool PairedSample::has_ties_y() const { return has_duplicates(y_); }

PairedSample PairedSample::swapped() const {
  PairedSample out = *this;
  std::swap(out.x_, out.y_);
  std::swap(out.label_x_, out.label_y_);
  return out;
}

ThresholdSpec ThresholdSpec::from_q(double q, std::size_t n) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw InvalidArgument("threshold: q must lie in [0, 1), got " + std::to_string(q));
  }
  const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * (1.0 - q)));
  if (k < 2) {
    throw InsufficientData("need at least two exceedances: q=" + std::to_string(q) +
                           " with n=" + std::to_string(n) + " gives k=" + std::to_string(k));
  }
  if (k > n) {
    throw InvalidArgument("threshold: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  }
  return ThresholdSpec(q, k, n);
}

ThresholdSpec ThresholdSpec::from_k(std::size_t k, std::size_t n) {
  if (k < 2) {
    throw InsufficientData("need at least two exceedances, got k=" + std::to_string(k));
  }
  if (k > n) {
    throw InvalidArgument("threshold: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  }
  return ThresholdSpec(1.0 - static_cast<double>(k) / static_cast<double>(n), k, n);
}

RankResult rank_transform(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("empty sample");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  RankResult out;
  out.ranks.resize(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    out.ranks[order[r]] = r + 1;
    if (r > 0 && values[order[r]] == values[order[r - 1]]) ++out.tie_count;
  }
  return out;
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw InvalidArgument("kendall_tau: length mismatch");
  if (n < 2) throw InsufficientData("insufficient data: kendall_tau needs n >= 2");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  const std::int64_t x_ties = tied_pairs(n, [&](std::size_t i) {
    return x[order[i]] == x[order[i - 1]];
  });
  const std::int64_t joint_ties = tied_pairs(n, [&](std::size_t i) {
    return x[order[i]] == x[order[i - 1]] && y[order[i]] == y[order[i - 1]];
  });

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const std::int64_t discordant = count_inversions(ys);  // ys is now sorted
  const std::int64_t y_ties = tied_pairs(n, [&](std::size_t i) { return ys[i] == ys[i - 1]; });

  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t total = nn * (nn - 1) / 2;
  const std::int64_t con_minus_dis = total - x_ties - y_ties + joint_ties - 2 * discordant;
  return static_cast<double>(con_minus_dis) / static_cast<double>(total);
}

double kendall_tau(const PairedSample& sample) { return kendall_tau(sample.x(), sample.y()); }

TopK select_top_k(const PairedSample& sample, const ThresholdSpec& spec, Axis on) {
  const std::size_t n = sample.size();
  const std::size_t k = spec.k();
  if (spec.n() != n) {
    throw InvalidArgument("select_top_k: threshold built for n=" + std::to_string(spec.n()) +
                          " applied to a sample of size " + std::to_string(n));
  }
  if (k > n) throw InvalidArgument("select_top_k: k exceeds n");

  const auto v = sample.axis(on);
  // Descending rank order: larger value first; among equal values the later
  // occurrence carries the higher rank.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto higher_rank = [&](std::size_t a, std::size_t b) {
    return v[a] > v[b] || (v[a] == v[b] && a > b);
  };
  if (k < n) {
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k) - 1,
                     order.end(), higher_rank);
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(chosen.begin(), chosen.end());

  bool tie = false;
  if (k < n) {
    double smallest_kept = v[chosen.front()];
    for (std::size_t i : chosen) smallest_kept = std::min(smallest_kept, v[i]);
    double largest_dropped = v[order[k]];
    for (auto it = order.begin() + static_cast<std::ptrdiff_t>(k); it != order.end(); ++it) {
      largest_dropped = std::max(largest_dropped, v[*it]);
    }
    tie = (smallest_kept == largest_dropped);
  }

  std::vector<double> xs, ys;
  xs.reserve(k);
  ys.reserve(k);
  for (std::size_t i : chosen) {
    xs.push_back(sample.x()[i]);
    ys.push_back(sample.y()[i]);
  }
  TopK out{PairedSample(std::move(xs), std::move(ys), sample.label_x(), sample.label_y()),
           std::move(chosen), tie};
  return out;
}

double order_statistic_threshold(std::span<const double> values, double q) {
  if (values.empty()) throw InvalidArgument("empty sample");
  if (!(q >= 0.0 && q < 1.0)) throw InvalidArgument("quantile level must lie in [0, 1)");
  const std::size_t n = values.size();
  // Guard q*n against representation error (0.98 * 1000 must give 980).
  const double scaled = q * static_cast<double>(n);
  auto m = static_cast<std::size_t>(std::ceil(scaled - 1e-9 * std::max(1.0, scaled)));
  if (m == 0) return -std::numeric_limits<double>::infinity();
  std::vector<double> copy(values.begin(), values.end());
  std::nth_element(copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(m) - 1, copy.end());
  return copy[m - 1];
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InvalidArgument("quantile of empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile level must lie in [0, 1]");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) {
  std::vector<double> copy(values.begin(), values.end());
  std::sort(copy.begin(), copy.end());
  return quantile_sorted(copy, 0.5);
}

}  // namespace tailtau
