#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tailtau/rng.hpp"

namespace tailtau {

/// Draws of an extremal function W: a strictly positive variable with unit
/// mean describing one coordinate given that the other is extreme.
class ExtremalFunctionSampler {
 public:
  using DrawFn = std::function<void(std::span<double>, RngStream&)>;

  ExtremalFunctionSampler(std::string model, std::vector<double> params, DrawFn draw);

  /// W = 1 almost surely (complete dependence).
  static ExtremalFunctionSampler constant();

  const std::string& model() const noexcept { return model_; }
  const std::vector<double>& params() const noexcept { return params_; }

  std::vector<double> sample(std::size_t count, RngStream& rng) const;
  void fill(std::span<double> out, RngStream& rng) const { draw_(out, rng); }

 private:
  std::string model_;
  std::vector<double> params_;
  DrawFn draw_;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};

/// Limiting tail tau as an extremal-function expectation:
/// 2 E min(1, W'/W) - 1 with W, W' independent draws.
McEstimate tau_limit_mc(const ExtremalFunctionSampler& sampler, std::size_t n_mc,
                        RngStream& rng);

/// Extremal correlation chi = E min(1, W).
McEstimate chi_limit_mc(const ExtremalFunctionSampler& sampler, std::size_t n_mc,
                        RngStream& rng);

/// 2 exp(gamma) (1 - Phi(sqrt(2 gamma))), evaluated as erfcx(sqrt(gamma)).
double hr_tau_closed(double gamma);
/// 2 (1 - Phi(sqrt(gamma) / 2)).
double hr_chi_closed(double gamma);

/// log W ~ N(-gamma/2, gamma).
ExtremalFunctionSampler hr_extremal_sampler(double gamma);

struct DirichletExtremal {
  ExtremalFunctionSampler w12;  // Y relative to X
  ExtremalFunctionSampler w21;  // X relative to Y
};

/// Extremal Dirichlet model with spectral vector (G1/a1, G2/a2), G_i ~ Gamma(a_i)
/// independent: W12 = (G2/a2) / (G1'/a1) with G1' ~ Gamma(a1 + 1), and
/// symmetrically for W21.
DirichletExtremal dirichlet_extremal_sampler(double alpha1, double alpha2);

/// Law of the reverse extremal function, P(W21 <= x) = E[1{1/W12 <= x} W12],
/// by sampling-importance-resampling: a fresh pool of pool_factor * count
/// draws of W12 is resampled with weights W12 and inverted.
ExtremalFunctionSampler dual_extremal_sampler(const ExtremalFunctionSampler& base,
                                              std::size_t pool_factor = 8);

/// Effective sample size (sum w)^2 / sum w^2 of an importance-weight vector.
double effective_sample_size(std::span<const double> weights);

enum class CurveFamily { HuslerReiss, Dirichlet };

/// Tabulated chi and tail tau over a parameter grid. For Husler-Reiss the grid
/// is gamma and values are closed form (standard errors 0); for Dirichlet the
/// grid is alpha2 with alpha1 fixed and values come from Monte Carlo.
struct DependenceCurve {
  CurveFamily family = CurveFamily::HuslerReiss;
  std::string parameter_name;
  std::vector<double> grid;
  std::vector<double> chi;
  std::vector<double> tau_xy;
  std::vector<double> tau_yx;
  std::vector<double> se_xy;
  std::vector<double> se_yx;
};

struct CurveRequest {
  CurveFamily family = CurveFamily::HuslerReiss;
  std::vector<double> grid;
  double alpha1 = 2.0;  // Dirichlet only
  std::size_t n_mc = 100000;
  std::uint64_t seed = 1;
};

DependenceCurve dependence_curves(const CurveRequest& request);

/// Delimited text: header "parameter,chi,tau_xy,tau_yx,se_xy,se_yx" then one
/// row per grid point.
std::string format_curve_csv(const DependenceCurve& curve);

}  // namespace tailtau
