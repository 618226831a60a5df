#include "tailtau/tail_dependence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailtau/core_stats.hpp"
#include "tailtau/error.hpp"

namespace tailtau {

TailTauPair TailTauPair::make(double tau_xy, double tau_yx, double q, std::size_t k,
                              bool tie_warning) {
  TailTauPair p;
  p.tau_xy = tau_xy;
  p.tau_yx = tau_yx;
  p.q = q;
  p.k = k;
  p.asymmetry = std::abs(tau_xy - tau_yx);
  p.max_tau = std::max(tau_xy, tau_yx);
  p.tie_warning = tie_warning;
  return p;
}

namespace {

struct DirectionalResult {
  double tau;
  bool tie;
};

DirectionalResult tail_tau_impl(const PairedSample& sample, const ThresholdSpec& spec,
                                Direction direction) {
  if (spec.k() < 2) throw InsufficientData("need at least two exceedances");
  const Axis on = direction == Direction::XtoY ? Axis::X : Axis::Y;
  const TopK top = select_top_k(sample, spec, on);
  return {kendall_tau(top.sample), top.tie_at_threshold};
}

}  // namespace

double tail_tau(const PairedSample& sample, const ThresholdSpec& spec, Direction direction) {
  return tail_tau_impl(sample, spec, direction).tau;
}

TailTauPair tail_tau_pair(const PairedSample& sample, const ThresholdSpec& spec) {
  const auto xy = tail_tau_impl(sample, spec, Direction::XtoY);
  const auto yx = tail_tau_impl(sample, spec, Direction::YtoX);
  return TailTauPair::make(xy.tau, yx.tau, spec.q(), spec.k(), xy.tie || yx.tie);
}

double symmetric_tail_tau(const PairedSample& sample, double q) {
  const double tx = order_statistic_threshold(sample.x(), q);
  const double ty = order_statistic_threshold(sample.y(), q);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (sample.x()[i] > tx && sample.y()[i] > ty) {
      xs.push_back(sample.x()[i]);
      ys.push_back(sample.y()[i]);
    }
  }
  if (xs.size() < 2) {
    throw InsufficientData("symmetric tail tau needs at least two joint exceedances, got " +
                           std::to_string(xs.size()));
  }
  return kendall_tau(xs, ys);
}

double symmetric_tail_tau(const PairedSample& sample, const ThresholdSpec& spec) {
  return symmetric_tail_tau(sample, spec.q());
}

ChiEstimate chi_hat(const PairedSample& sample, double q) {
  const std::size_t n = sample.size();
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidArgument("chi_hat: q must lie in (0, 1), got " + std::to_string(q));
  }
  if (static_cast<double>(n) * (1.0 - q) < 1.0 - 1e-9) {
    throw InsufficientData("chi_hat: n(1-q) < 1, no exceedances expected");
  }
  const double tx = order_statistic_threshold(sample.x(), q);
  const double ty = order_statistic_threshold(sample.y(), q);
  std::size_t ex = 0, ey = 0, joint = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = sample.x()[i] > tx;
    const bool b = sample.y()[i] > ty;
    ex += a;
    ey += b;
    joint += (a && b);
  }
  if (ex == 0 || ex == n || ey == 0 || ey == n) {
    throw InsufficientData("degenerate exceedance set");
  }
  const double nn = static_cast<double>(n);
  const double pa = static_cast<double>(ex) / nn;
  const double pb = static_cast<double>(ey) / nn;
  const double pab = static_cast<double>(joint) / nn;
  const double chi = (pab - pa * pb) / std::sqrt(pa * (1.0 - pa) * pb * (1.0 - pb));
  return {std::clamp(chi, -1.0, 1.0), q, joint};
}

std::vector<TailTauPair> tail_tau_sweep(const PairedSample& sample, std::span<const double> qs) {
  std::vector<TailTauPair> out;
  out.reserve(qs.size());
  for (double q : qs) {
    out.push_back(tail_tau_pair(sample, ThresholdSpec::from_q(q, sample.size())));
  }
  return out;
}

}  // namespace tailtau
