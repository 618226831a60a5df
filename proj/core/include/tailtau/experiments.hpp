#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tailtau/copula_sim.hpp"
#include "tailtau/summary.hpp"

namespace tailtau {

enum class Profile {
  Desk,   // 100 repetitions per configuration
  Paper,  // 1000 repetitions per configuration
};

std::size_t reps_for(Profile profile);

/// Asymmetric logistic grid study: every (beta1, beta2, 1/alpha) combination.
struct GridConfig {
  std::vector<double> beta_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> inv_alpha_grid{0.005, 0.2, 0.4, 0.6, 0.8, 0.98};
  std::size_t n_per_sample = 1000;
  std::size_t n_reps = 1000;
  double q = 0.98;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: hardware concurrency; does not affect results

  static GridConfig with_profile(Profile profile);
  std::size_t combinations() const {
    return beta_grid.size() * beta_grid.size() * inv_alpha_grid.size();
  }
  void validate() const;
};

struct GridRow {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double inv_alpha = 0.0;
  BoxStats tau_xy;
  BoxStats tau_yx;
  BoxStats asymmetry;   // per-repetition |tau_xy - tau_yx|
  BoxStats max_tau;     // per-repetition max(tau_xy, tau_yx)
  double median_gap = 0.0;  // median over repetitions of tau_xy - tau_yx
  /// |median tau_xy - median tau_yx|: the asymmetry of the plotted point.
  double asymmetry_of_medians() const { return std::abs(tau_xy.median - tau_yx.median); }
};

/// Orientation of one off-diagonal grid row by the smaller beta: the
/// "downstream" variable is the one with the smaller beta, and its
/// conditioned coefficient is expected to be the smaller of the two.
struct DirectionRow {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double inv_alpha = 0.0;
  double beta_diff = 0.0;          // |beta1 - beta2|
  bool direction_defined = false;  // false on the diagonal beta1 == beta2
  double median_tau_down = 0.0;    // conditioned on the smaller-beta variable
  double median_tau_up = 0.0;
  double median_asymmetry = 0.0;
  std::size_t down_smaller = 0;    // repetitions with tau_down < tau_up
  std::size_t n_reps = 0;
  double fraction_down_smaller() const {
    return n_reps == 0 ? 0.0 : static_cast<double>(down_smaller) / static_cast<double>(n_reps);
  }
};

struct GridResult {
  std::vector<GridRow> rows;
  std::vector<DirectionRow> direction;
};

/// Runs every repetition once and summarises it both ways.
GridResult run_grid_full(const GridConfig& config);
std::vector<GridRow> run_grid(const GridConfig& config);
std::vector<DirectionRow> run_directionality(const GridConfig& config);

struct CausalScenario {
  std::string label;  // a..f in the usual six-panel layout
  CausalDirection direction = CausalDirection::Independent;
  bool confounded = false;
};

/// The six models: independent, X->Y, Y->X, each without and with a confounder.
std::vector<CausalScenario> default_causal_scenarios();

struct CausalExpConfig {
  std::size_t n_per_sample = 4000;
  std::size_t n_reps = 1000;
  double q = 0.98;
  double beta = 0.3;
  double noise_dof = 3.0;
  double confounder_loading = 0.3;
  double confounder_dof = 3.0;
  std::vector<CausalScenario> scenarios = default_causal_scenarios();
  std::uint64_t seed = 1;
  std::size_t threads = 0;

  static CausalExpConfig with_profile(Profile profile);
  void validate() const;
};

enum class Coefficient { TauXY, TauYX, TauSym };

std::string to_string(Coefficient c);
std::string to_string(CausalDirection d);

struct CausalRow {
  CausalScenario scenario;
  Coefficient coefficient = Coefficient::TauXY;
  BoxStats stats;  // tau_sym repetitions without two joint exceedances count as failed
};

std::vector<CausalRow> run_causality(const CausalExpConfig& config);

/// Median of a coefficient in one scenario of a causality result.
double causal_median(const std::vector<CausalRow>& rows, const std::string& label,
                     Coefficient coefficient);

/// Canonical text of a configuration, used for hashing and run metadata.
std::string canonical_string(const GridConfig& config);
std::string canonical_string(const CausalExpConfig& config);
/// 16 hex digits of FNV-1a over the canonical string.
std::string config_hash(const std::string& canonical);

std::string format_grid_csv(const std::vector<GridRow>& rows);
std::string format_direction_csv(const std::vector<DirectionRow>& rows);
std::string format_causal_csv(const std::vector<CausalRow>& rows);

}  // namespace tailtau
