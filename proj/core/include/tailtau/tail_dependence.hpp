#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailtau/sample.hpp"

namespace tailtau {

enum class Direction {
  XtoY,  // condition on the k largest X
  YtoX,  // condition on the k largest Y
};

/// Directional tail Kendall's tau pair with derived summaries.
struct TailTauPair {
  double tau_xy = 0.0;
  double tau_yx = 0.0;
  double q = 0.0;
  std::size_t k = 0;
  double asymmetry = 0.0;  // |tau_xy - tau_yx|
  double max_tau = 0.0;    // max(tau_xy, tau_yx)
  bool tie_warning = false;

  static TailTauPair make(double tau_xy, double tau_yx, double q, std::size_t k,
                          bool tie_warning = false);
};

struct ChiEstimate {
  double chi = 0.0;
  double q = 0.0;
  std::size_t joint_exceedances = 0;
};

/// Kendall's tau-a of the k rows with the largest conditioning variable,
/// normalised by C(k,2).
double tail_tau(const PairedSample& sample, const ThresholdSpec& spec,
                Direction direction);

TailTauPair tail_tau_pair(const PairedSample& sample, const ThresholdSpec& spec);

/// Classical Kendall's tau on the rows where both coordinates exceed their
/// order-statistic q-thresholds. Throws InsufficientData when fewer than two
/// rows qualify.
double symmetric_tail_tau(const PairedSample& sample, double q);
double symmetric_tail_tau(const PairedSample& sample, const ThresholdSpec& spec);

/// Pearson correlation of the two exceedance indicators at level q.
ChiEstimate chi_hat(const PairedSample& sample, double q);

/// Tail tau pair at each level in `qs`, for stability plots.
std::vector<TailTauPair> tail_tau_sweep(const PairedSample& sample,
                                        std::span<const double> qs);

}  // namespace tailtau
