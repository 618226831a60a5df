#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tailtau/error.hpp"
#include "tailtau/evt_theory.hpp"
#include "tailtau/special_functions.hpp"

namespace tailtau {
namespace {

struct HrReference {
  double gamma;
  double tau;
  double chi;
};

// 50-digit evaluations of exp(g) erfc(sqrt(g)) and erfc(sqrt(g) / (2 sqrt 2)).
constexpr HrReference kHr[] = {
    {0.01, 0.89645697996912664193, 0.96012238832325507681},
    {0.25, 0.61569034419292587487, 0.80258734863415255152},
    {0.5, 0.52315658373024674336, 0.72367360983176306701},
    {1.0, 0.42758357615580700441, 0.61707507745197379272},
    {2.0, 0.33620400244634121285, 0.47950012218695346232},
    {4.0, 0.25539567631050574387, 0.31731050786291410283},
    {50.0, 0.079013388202772005889, 0.00040695201744495893956},
    {1000.0, 0.017832333888542050408, 2.5968070393401858569e-56},
};

TEST(HrClosedForm, ReferenceValues) {
  for (const auto& r : kHr) {
    EXPECT_NEAR(hr_tau_closed(r.gamma), r.tau, 1e-12 * r.tau) << r.gamma;
    EXPECT_NEAR(hr_chi_closed(r.gamma), r.chi, 1e-10 * r.chi) << r.gamma;
  }
}

TEST(HrClosedForm, MonotoneWithLimits) {
  double prev_tau = 1.0, prev_chi = 1.0;
  for (double g = 1e-6; g < 1e4; g *= 1.5) {
    const double t = hr_tau_closed(g), c = hr_chi_closed(g);
    EXPECT_LT(t, prev_tau);
    EXPECT_LE(c, prev_chi);
    EXPECT_GT(t, 0.0);
    prev_tau = t;
    prev_chi = c;
  }
  EXPECT_NEAR(hr_tau_closed(1e-10), 1.0, 1e-4);
  EXPECT_LT(hr_tau_closed(1e6), 1e-3);
  EXPECT_THROW(hr_tau_closed(0.0), InvalidArgument);
  EXPECT_THROW(hr_chi_closed(-1.0), InvalidArgument);
}

TEST(Erfcx, ReferenceValuesAcrossBranchPoint) {
  const std::pair<double, double> ref[] = {
      {0.0, 1.0},
      {0.5, 0.61569034419292587487},
      {3.9, 0.14031418160068973267},
      {4.0, 0.13699945762506138989},
      {4.1, 0.13383411641865198274},
      {10.0, 0.056140992743822585858},
      {30.0, 0.018795888861416751497},
      {1000.0, 0.0005641893014533876542},
  };
  for (auto [x, v] : ref) EXPECT_NEAR(erfcx(x), v, 1e-12 * v) << x;
}

TEST(HrExtremalSampler, LogNormalMoments) {
  RngStream rng(1, 0);
  const auto w = hr_extremal_sampler(2.0).sample(400000, rng);
  double s = 0.0, sl = 0.0, sl2 = 0.0;
  for (double v : w) {
    s += v;
    sl += std::log(v);
    sl2 += std::log(v) * std::log(v);
  }
  const double n = static_cast<double>(w.size());
  EXPECT_NEAR(s / n, 1.0, 0.02);
  EXPECT_NEAR(sl / n, -1.0, 0.01);
  EXPECT_NEAR(sl2 / n - (sl / n) * (sl / n), 2.0, 0.02);
}

TEST(TauLimitMc, AgreesWithClosedForm) {
  for (double g : {0.25, 1.0, 4.0}) {
    RngStream rng(2, static_cast<std::uint64_t>(g * 100));
    const auto est = tau_limit_mc(hr_extremal_sampler(g), 200000, rng);
    EXPECT_EQ(est.draws, 200000u);
    EXPECT_GT(est.std_error, 0.0);
    EXPECT_NEAR(est.value, hr_tau_closed(g), 4.0 * est.std_error) << g;
    const auto chi = chi_limit_mc(hr_extremal_sampler(g), 200000, rng);
    EXPECT_NEAR(chi.value, hr_chi_closed(g), 4.0 * chi.std_error) << g;
  }
}

TEST(TauLimitMc, CompleteDependence) {
  RngStream rng(3, 0);
  const auto t = tau_limit_mc(ExtremalFunctionSampler::constant(), 1000, rng);
  EXPECT_EQ(t.value, 1.0);
  EXPECT_EQ(t.std_error, 0.0);
  EXPECT_EQ(chi_limit_mc(ExtremalFunctionSampler::constant(), 1000, rng).value, 1.0);
}

TEST(TauLimitMc, RejectsNonPositiveDraws) {
  ExtremalFunctionSampler bad("bad", {}, [](std::span<double> out, RngStream&) {
    for (double& v : out) v = 0.0;
  });
  RngStream rng(3, 1);
  EXPECT_THROW(tau_limit_mc(bad, 100, rng), NumericalError);
}

TEST(DirichletExtremal, UnitMeanAndSymmetry) {
  const auto d = dirichlet_extremal_sampler(2.0, 2.0);
  RngStream r1(4, 0), r2(4, 1);
  const auto w = d.w12.sample(400000, r1);
  double s = 0.0;
  for (double v : w) s += v;
  EXPECT_NEAR(s / static_cast<double>(w.size()), 1.0, 0.01);
  const auto t12 = tau_limit_mc(d.w12, 200000, r1);
  const auto t21 = tau_limit_mc(d.w21, 200000, r2);
  EXPECT_NEAR(t12.value, t21.value,
              4.0 * std::hypot(t12.std_error, t21.std_error));
}

TEST(DirichletExtremal, ChiIsDirectionFree) {
  const auto d = dirichlet_extremal_sampler(1.0, 5.0);
  RngStream r1(5, 0), r2(5, 1);
  const auto c12 = chi_limit_mc(d.w12, 400000, r1);
  const auto c21 = chi_limit_mc(d.w21, 400000, r2);
  EXPECT_NEAR(c12.value, c21.value, 4.0 * std::hypot(c12.std_error, c21.std_error));
}

TEST(DirichletExtremal, AsymmetryChangesSignAcrossEqualParameters) {
  CurveRequest req{CurveFamily::Dirichlet, {0.5, 2.0, 8.0}, 2.0, 100000, 1};
  const auto c = dependence_curves(req);
  const double lo = c.tau_xy[0] - c.tau_yx[0];
  const double hi = c.tau_xy[2] - c.tau_yx[2];
  EXPECT_LT(lo * hi, 0.0);
  EXPECT_LT(std::abs(c.tau_xy[1] - c.tau_yx[1]), 4.0 * std::hypot(c.se_xy[1], c.se_yx[1]));
}

TEST(DualSampler, RecoversReverseDirichletLaw) {
  const auto d = dirichlet_extremal_sampler(1.5, 4.0);
  const auto dual = dual_extremal_sampler(d.w12, 8);
  RngStream r1(6, 0), r2(6, 1), r3(6, 2);
  const std::size_t n = 100000;
  const auto a = dual.sample(n, r1);
  const auto b = d.w21.sample(n, r2);
  // Resampling reduces the information in `a` to the pool's effective size.
  const auto pool = d.w12.sample(8 * n, r3);
  const double ess = effective_sample_size(pool);
  const double n_eff = 1.0 / (1.0 / static_cast<double>(n) + 1.0 / std::min(ess, double(n)));
  EXPECT_LT(testing::ks_two_sample(a, b), testing::ks_critical_001(n_eff));
}

TEST(DualSampler, HuslerReissIsSelfDual) {
  const auto base = hr_extremal_sampler(1.0);
  const auto dual = dual_extremal_sampler(base);
  RngStream r1(7, 0), r2(7, 1);
  const auto a = dual.sample(50000, r1);
  const auto b = base.sample(50000, r2);
  EXPECT_LT(testing::ks_two_sample(a, b), testing::ks_critical_001(25000.0));
}

TEST(EffectiveSampleSize, Extremes) {
  EXPECT_DOUBLE_EQ(effective_sample_size(std::vector<double>(10, 2.0)), 10.0);
  EXPECT_DOUBLE_EQ(effective_sample_size(std::vector<double>{0, 0, 3, 0}), 1.0);
}

TEST(DependenceCurves, HuslerReissIsClosedForm) {
  CurveRequest req{CurveFamily::HuslerReiss, {0.25, 1.0, 4.0}};
  const auto c = dependence_curves(req);
  ASSERT_EQ(c.grid.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(c.tau_xy[i], hr_tau_closed(c.grid[i]));
    EXPECT_EQ(c.tau_yx[i], c.tau_xy[i]);
    EXPECT_EQ(c.chi[i], hr_chi_closed(c.grid[i]));
    EXPECT_EQ(c.se_xy[i], 0.0);
  }
  const auto csv = format_curve_csv(c);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "parameter,chi,tau_xy,tau_yx,se_xy,se_yx");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(DependenceCurves, DeterministicAndValidated) {
  CurveRequest req{CurveFamily::Dirichlet, {1.0, 3.0}, 2.0, 5000, 9};
  const auto a = dependence_curves(req);
  const auto b = dependence_curves(req);
  EXPECT_EQ(a.tau_xy, b.tau_xy);
  EXPECT_EQ(a.chi, b.chi);
  req.grid = {3.0, 1.0};
  EXPECT_THROW(dependence_curves(req), InvalidArgument);
  req.grid = {};
  EXPECT_THROW(dependence_curves(req), InvalidArgument);
}

}  // namespace
}  // namespace tailtau
