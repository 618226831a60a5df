#include "tailtau/copula_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "tailtau/error.hpp"

namespace tailtau {

void AsymLogisticParams::validate() const {
  if (!(inv_alpha > 0.0 && inv_alpha <= 1.0)) {
    throw InvalidArgument("asymmetric logistic: 1/alpha must lie in (0, 1], got " +
                          std::to_string(inv_alpha));
  }
  if (!(beta1 >= 0.0 && beta1 <= 1.0) || !(beta2 >= 0.0 && beta2 <= 1.0)) {
    throw InvalidArgument("asymmetric logistic: beta1 and beta2 must lie in [0, 1]");
  }
}

void HuslerReissParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("Husler-Reiss: gamma must be positive and finite, got " +
                          std::to_string(gamma));
  }
}

void SemConfig::validate() const {
  if (!(noise_dof > 0.0)) throw InvalidArgument("SEM: noise_dof must be positive");
  if (confounded && !(confounder_dof > 0.0)) {
    throw InvalidArgument("SEM: confounder_dof must be positive");
  }
  if (!std::isfinite(beta) || !std::isfinite(confounder_loading)) {
    throw InvalidArgument("SEM: coefficients must be finite");
  }
}

namespace {

void require_size(std::size_t n) {
  if (n < 2) throw InvalidArgument("sampler: n must be at least 2, got " + std::to_string(n));
}

// One draw from the symmetric logistic law on standard Frechet margins,
// r = 1/alpha. S is positive r-stable (Kanter's representation); all
// arithmetic is in logs since S^r and E^-r overflow for small r.
std::pair<double, double> draw_sym_logistic(double r, RngStream& rng) {
  if (r >= 1.0) return {rng.frechet(), rng.frechet()};
  const double u = std::numbers::pi * rng.uniform();
  const double log_e = std::log(rng.exponential());
  const double log_a = (r / (1.0 - r)) * std::log(std::sin(r * u)) +
                       std::log(std::sin((1.0 - r) * u)) -
                       std::log(std::sin(u)) / (1.0 - r);
  const double log_s_r = (1.0 - r) * (log_a - log_e);  // r * log S
  const double z1 = std::exp(log_s_r - r * std::log(rng.exponential()));
  const double z2 = std::exp(log_s_r - r * std::log(rng.exponential()));
  return {z1, z2};
}

}  // namespace

double asym_logistic_copula(const AsymLogisticParams& params, double u, double v) {
  params.validate();
  if (!(u > 0.0 && u <= 1.0 && v > 0.0 && v <= 1.0)) {
    throw InvalidArgument("copula arguments must lie in (0, 1]");
  }
  const double a = params.alpha();
  const double lu = -std::log(u);
  const double lv = -std::log(v);
  const double joint = std::pow(std::pow(params.beta1 * lu, a) + std::pow(params.beta2 * lv, a),
                                1.0 / a);
  return std::exp(-joint - (1.0 - params.beta1) * lu - (1.0 - params.beta2) * lv);
}

PairedSample sample_sym_logistic(double inv_alpha, std::size_t n, RngStream& rng) {
  AsymLogisticParams{inv_alpha, 1.0, 1.0}.validate();
  require_size(n);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::tie(x[i], y[i]) = draw_sym_logistic(inv_alpha, rng);
  }
  return PairedSample(std::move(x), std::move(y));
}

PairedSample sample_asym_logistic(const AsymLogisticParams& params, std::size_t n,
                                  RngStream& rng) {
  params.validate();
  require_size(n);
  const double b1 = params.beta1;
  const double b2 = params.beta2;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [v, w] = draw_sym_logistic(params.inv_alpha, rng);
    const double e1 = rng.frechet();
    const double e2 = rng.frechet();
    x[i] = std::max(b1 * v, (1.0 - b1) * e1);
    y[i] = std::max(b2 * w, (1.0 - b2) * e2);
  }
  return PairedSample(std::move(x), std::move(y));
}

PairedSample sample_husler_reiss(const HuslerReissParams& params, std::size_t n,
                                 RngStream& rng) {
  params.validate();
  require_size(n);
  const double mu = -0.5 * params.gamma;
  const double sd = std::sqrt(params.gamma);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Coordinate 1: the first Poisson point fixes Z1 since its extremal
    // function equals 1 there and later points are smaller.
    const double zeta1 = 1.0 / rng.exponential();
    double z1 = zeta1;
    double z2 = zeta1 * std::exp(rng.normal(mu, sd));
    // Coordinate 2: add functions anchored at 2 that were not already
    // generated from coordinate 1's points.
    double arrival = rng.exponential();
    for (double zeta = 1.0 / arrival; zeta > z2; zeta = 1.0 / arrival) {
      const double other = zeta * std::exp(rng.normal(mu, sd));
      if (other < z1) z2 = zeta;
      arrival += rng.exponential();
    }
    x[i] = z1;
    y[i] = z2;
  }
  return PairedSample(std::move(x), std::move(y));
}

PairedSample sample_sem(const SemConfig& config, std::size_t n, RngStream& rng) {
  config.validate();
  require_size(n);
  const double beta = config.direction == CausalDirection::Independent ? 0.0 : config.beta;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cause = rng.student_t(config.noise_dof);
    const double effect = beta * cause + rng.student_t(config.noise_dof);
    double shared = 0.0;
    if (config.confounded) {
      shared = config.confounder_loading * rng.student_t(config.confounder_dof);
    }
    if (config.direction == CausalDirection::YtoX) {
      x[i] = effect + shared;
      y[i] = cause + shared;
    } else {
      x[i] = cause + shared;
      y[i] = effect + shared;
    }
  }
  return PairedSample(std::move(x), std::move(y));
}

}  // namespace tailtau
