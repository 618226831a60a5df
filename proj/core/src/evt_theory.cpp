#include "tailtau/evt_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "tailtau/csv.hpp"
#include "tailtau/error.hpp"
#include "tailtau/special_functions.hpp"

namespace tailtau {

namespace {

constexpr std::size_t kChunk = 1 << 16;

void require_positive(std::span<const double> draws) {
  for (double w : draws) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw NumericalError("extremal function must be positive");
    }
  }
}

// Running mean and variance (Welford).
struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  double std_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

}  // namespace

ExtremalFunctionSampler::ExtremalFunctionSampler(std::string model, std::vector<double> params,
                                                 DrawFn draw)
    : model_(std::move(model)), params_(std::move(params)), draw_(std::move(draw)) {
  if (!draw_) throw InvalidArgument("extremal function sampler needs a draw procedure");
}

ExtremalFunctionSampler ExtremalFunctionSampler::constant() {
  return ExtremalFunctionSampler("constant", {}, [](std::span<double> out, RngStream&) {
    std::fill(out.begin(), out.end(), 1.0);
  });
}

std::vector<double> ExtremalFunctionSampler::sample(std::size_t count, RngStream& rng) const {
  std::vector<double> out(count);
  draw_(out, rng);
  return out;
}

McEstimate tau_limit_mc(const ExtremalFunctionSampler& sampler, std::size_t n_mc,
                        RngStream& rng) {
  if (n_mc < 2) throw InvalidArgument("tau_limit_mc: n_mc must be at least 2");
  Moments acc;
  std::vector<double> w, w_other;
  for (std::size_t done = 0; done < n_mc;) {
    const std::size_t m = std::min(kChunk, n_mc - done);
    w.resize(m);
    w_other.resize(m);
    sampler.fill(w, rng);
    sampler.fill(w_other, rng);
    require_positive(w);
    require_positive(w_other);
    for (std::size_t i = 0; i < m; ++i) acc.add(std::min(1.0, w_other[i] / w[i]));
    done += m;
  }
  return {2.0 * acc.mean - 1.0, 2.0 * acc.std_error(), n_mc};
}

McEstimate chi_limit_mc(const ExtremalFunctionSampler& sampler, std::size_t n_mc,
                        RngStream& rng) {
  if (n_mc < 2) throw InvalidArgument("chi_limit_mc: n_mc must be at least 2");
  Moments acc;
  std::vector<double> w;
  for (std::size_t done = 0; done < n_mc;) {
    const std::size_t m = std::min(kChunk, n_mc - done);
    w.resize(m);
    sampler.fill(w, rng);
    require_positive(w);
    for (double v : w) acc.add(std::min(1.0, v));
    done += m;
  }
  return {acc.mean, acc.std_error(), n_mc};
}

double hr_tau_closed(double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("hr_tau_closed: gamma must be positive");
  // 2 e^G (1 - Phi(sqrt(2G))) = e^G erfc(sqrt(G)) = erfcx(sqrt(G)).
  return erfcx(std::sqrt(gamma));
}

double hr_chi_closed(double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("hr_chi_closed: gamma must be positive");
  return 2.0 * normal_sf(0.5 * std::sqrt(gamma));
}

ExtremalFunctionSampler hr_extremal_sampler(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("hr_extremal_sampler: gamma must be positive");
  }
  const double mu = -0.5 * gamma;
  const double sd = std::sqrt(gamma);
  return ExtremalFunctionSampler("husler_reiss", {gamma},
                                 [mu, sd](std::span<double> out, RngStream& rng) {
                                   for (double& v : out) v = std::exp(rng.normal(mu, sd));
                                 });
}

DirichletExtremal dirichlet_extremal_sampler(double alpha1, double alpha2) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw InvalidArgument("dirichlet_extremal_sampler: parameters must be positive");
  }
  // Relative to the conditioning coordinate c, the spectral vector is tilted
  // by its c-th component, which turns G_c ~ Gamma(a_c) into Gamma(a_c + 1).
  auto make = [](double a_cond, double a_other, std::string model) {
    return ExtremalFunctionSampler(
        std::move(model), {a_cond, a_other},
        [a_cond, a_other](std::span<double> out, RngStream& rng) {
          for (double& v : out) {
            const double num = rng.gamma(a_other) / a_other;
            const double den = rng.gamma(a_cond + 1.0) / a_cond;
            v = num / den;
          }
        });
  };
  return {make(alpha1, alpha2, "dirichlet_w12"), make(alpha2, alpha1, "dirichlet_w21")};
}

double effective_sample_size(std::span<const double> weights) {
  double s = 0.0, s2 = 0.0;
  for (double w : weights) {
    s += w;
    s2 += w * w;
  }
  return s2 > 0.0 ? s * s / s2 : 0.0;
}

ExtremalFunctionSampler dual_extremal_sampler(const ExtremalFunctionSampler& base,
                                              std::size_t pool_factor) {
  if (pool_factor == 0) throw InvalidArgument("dual_extremal_sampler: pool_factor must be >= 1");
  auto params = base.params();
  return ExtremalFunctionSampler(
      "dual_of_" + base.model(), std::move(params),
      [base, pool_factor](std::span<double> out, RngStream& rng) {
        if (out.empty()) return;
        const std::size_t pool_size = std::max<std::size_t>(pool_factor * out.size(), 1024);
        std::vector<double> pool(pool_size);
        base.fill(pool, rng);
        std::vector<double> cumulative(pool_size);
        double total = 0.0;
        for (std::size_t i = 0; i < pool_size; ++i) {
          if (!(pool[i] >= 0.0) || !std::isfinite(pool[i])) {
            throw NumericalError("dual extremal sampler: base draw is not a finite non-negative value");
          }
          total += pool[i];
          cumulative[i] = total;
        }
        if (!(total > 0.0)) throw NumericalError("dual extremal sampler: degenerate weights");
        for (double& v : out) {
          const double target = rng.uniform() * total;
          auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
          if (it == cumulative.end()) --it;
          v = 1.0 / pool[static_cast<std::size_t>(it - cumulative.begin())];
        }
      });
}

DependenceCurve dependence_curves(const CurveRequest& request) {
  if (request.grid.empty()) throw InvalidArgument("dependence_curves: grid is empty");
  if (!std::is_sorted(request.grid.begin(), request.grid.end()) ||
      std::adjacent_find(request.grid.begin(), request.grid.end()) != request.grid.end()) {
    throw InvalidArgument("dependence_curves: grid must be strictly increasing");
  }
  DependenceCurve curve;
  curve.family = request.family;
  curve.grid = request.grid;
  const std::size_t m = request.grid.size();
  curve.chi.resize(m);
  curve.tau_xy.resize(m);
  curve.tau_yx.resize(m);
  curve.se_xy.assign(m, 0.0);
  curve.se_yx.assign(m, 0.0);

  if (request.family == CurveFamily::HuslerReiss) {
    curve.parameter_name = "gamma";
    for (std::size_t i = 0; i < m; ++i) {
      curve.chi[i] = hr_chi_closed(request.grid[i]);
      curve.tau_xy[i] = curve.tau_yx[i] = hr_tau_closed(request.grid[i]);
    }
    return curve;
  }

  curve.parameter_name = "alpha2";
  for (std::size_t i = 0; i < m; ++i) {
    const auto samplers = dirichlet_extremal_sampler(request.alpha1, request.grid[i]);
    RngStream rng_xy(request.seed, stream_id_for(i, 0));
    RngStream rng_yx(request.seed, stream_id_for(i, 1));
    RngStream rng_chi(request.seed, stream_id_for(i, 2));
    const auto xy = tau_limit_mc(samplers.w12, request.n_mc, rng_xy);
    const auto yx = tau_limit_mc(samplers.w21, request.n_mc, rng_yx);
    curve.tau_xy[i] = xy.value;
    curve.tau_yx[i] = yx.value;
    curve.se_xy[i] = xy.std_error;
    curve.se_yx[i] = yx.std_error;
    curve.chi[i] = chi_limit_mc(samplers.w12, request.n_mc, rng_chi).value;
  }
  return curve;
}

std::string format_curve_csv(const DependenceCurve& curve) {
  std::ostringstream os;
  os << "parameter,chi,tau_xy,tau_yx,se_xy,se_yx\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    os << csv::format_double(curve.grid[i]) << ',' << csv::format_double(curve.chi[i]) << ','
       << csv::format_double(curve.tau_xy[i]) << ',' << csv::format_double(curve.tau_yx[i])
       << ',' << csv::format_double(curve.se_xy[i]) << ',' << csv::format_double(curve.se_yx[i])
       << '\n';
  }
  return os.str();
}

}  // namespace tailtau
