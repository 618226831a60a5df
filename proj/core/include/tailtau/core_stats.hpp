#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailtau/sample.hpp"

namespace tailtau {

struct RankResult {
  std::vector<std::size_t> ranks;  // 1..n
  std::size_t tie_count = 0;       // entries equal to an earlier entry
};

/// Ranks 1..n; equal values are ranked by order of first occurrence.
RankResult rank_transform(std::span<const double> values);

/// Kendall's tau-a: (#concordant - #discordant) / C(n,2). Pairs tied in
/// either coordinate contribute zero. O(n log n).
double kendall_tau(std::span<const double> x, std::span<const double> y);
double kendall_tau(const PairedSample& sample);

struct TopK {
  PairedSample sample;
  std::vector<std::size_t> indices;  // rows of the parent sample, ascending
  bool tie_at_threshold = false;
};

/// The k rows with the largest values on `on`. Ties at the threshold are
/// broken by rank (first occurrence ranks lower), so exactly k rows are
/// always returned; `tie_at_threshold` reports when that happened.
TopK select_top_k(const PairedSample& sample, const ThresholdSpec& spec, Axis on);

/// Order-statistic threshold x_(ceil(q n)) (1-based, x_(0) = -inf).
double order_statistic_threshold(std::span<const double> values, double q);

/// Sample quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

/// Median of a copy of the values.
double median(std::span<const double> values);

}  // namespace tailtau
