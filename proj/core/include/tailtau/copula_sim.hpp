#pragma once

#include <cstddef>

#include "tailtau/rng.hpp"
#include "tailtau/sample.hpp"

namespace tailtau {

/// Asymmetric logistic copula parameters. Dependence is given as
/// inv_alpha = 1/alpha in (0, 1]; inv_alpha = 1 is independence of the
/// logistic component, inv_alpha -> 0 complete dependence.
struct AsymLogisticParams {
  double inv_alpha = 0.5;
  double beta1 = 1.0;
  double beta2 = 1.0;

  double alpha() const noexcept { return 1.0 / inv_alpha; }
  void validate() const;
};

struct HuslerReissParams {
  double gamma = 1.0;

  void validate() const;
};

enum class CausalDirection { Independent, XtoY, YtoX };

/// Linear structural equation model with Student-t noise:
/// cause = e1, effect = beta * cause + e2, plus loading * C on both variables
/// when confounded (C ~ t(confounder_dof)).
struct SemConfig {
  double beta = 0.3;
  double noise_dof = 3.0;
  CausalDirection direction = CausalDirection::XtoY;
  bool confounded = false;
  double confounder_loading = 0.3;
  double confounder_dof = 3.0;

  void validate() const;
};

/// C_{alpha,beta1,beta2}(u, v) evaluated analytically; u, v in (0, 1].
double asym_logistic_copula(const AsymLogisticParams& params, double u, double v);

/// Max-mixture construction on standard Frechet margins:
/// (max{b1 V, (1-b1) e1}, max{b2 W, (1-b2) e2}) with (V, W) symmetric logistic.
PairedSample sample_asym_logistic(const AsymLogisticParams& params, std::size_t n,
                                  RngStream& rng);

/// Symmetric logistic on standard Frechet margins via a positive-stable
/// frailty: (S/E1)^r, (S/E2)^r with r = inv_alpha and E[exp(-tS)] = exp(-t^r).
PairedSample sample_sym_logistic(double inv_alpha, std::size_t n, RngStream& rng);

/// Exact bivariate Husler-Reiss max-stable sampling on standard Frechet
/// margins (extremal-functions algorithm, no truncation).
PairedSample sample_husler_reiss(const HuslerReissParams& params, std::size_t n,
                                 RngStream& rng);

PairedSample sample_sem(const SemConfig& config, std::size_t n, RngStream& rng);

}  // namespace tailtau
