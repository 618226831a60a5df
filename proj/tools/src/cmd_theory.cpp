#include <cmath>
#include <iostream>

#include "common.hpp"
#include "tailtau/error.hpp"
#include "tailtau/evt_theory.hpp"

namespace tailtau::cli {
namespace {

struct TheoryOptions {
  std::vector<double> gammas{1.0};
  double alpha1 = 2.0;
  double alpha2 = 2.0;
  std::size_t n_mc = 100000;
  std::uint64_t seed = 1;
  std::string family = "hr";
  std::vector<double> grid;
  std::string model = "hr";
  double gamma = 1.0;
  std::string direction = "xy";
  bool dual = false;
  std::string out = "-";
};

std::vector<double> default_grid(const std::string& family) {
  // Log-spaced: Gamma in [0.01, 100] or alpha2 in [0.25, 8].
  const double lo = family == "hr" ? 0.01 : 0.25;
  const double hi = family == "hr" ? 100.0 : 8.0;
  const std::size_t steps = 41;
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return g;
}

void run_hr(const Context& ctx, const TheoryOptions& o) {
  for (double g : o.gammas) {
    std::cout << "gamma=" << fmt(ctx, g) << " tau=" << fmt(ctx, hr_tau_closed(g))
              << " chi=" << fmt(ctx, hr_chi_closed(g)) << "\n";
  }
}

std::string with_se(const Context& ctx, const McEstimate& e) {
  return fmt(ctx, e.value) + " (se " + fmt(ctx, e.std_error) + ")";
}

void run_dirichlet(const Context& ctx, const TheoryOptions& o) {
  const auto d = dirichlet_extremal_sampler(o.alpha1, o.alpha2);
  RngStream r_xy(o.seed, 0), r_yx(o.seed, 1), r_chi(o.seed, 2);
  std::cout << "alpha1=" << fmt(ctx, o.alpha1) << " alpha2=" << fmt(ctx, o.alpha2) << "\n"
            << "tau_xy=" << with_se(ctx, tau_limit_mc(d.w12, o.n_mc, r_xy)) << "\n"
            << "tau_yx=" << with_se(ctx, tau_limit_mc(d.w21, o.n_mc, r_yx)) << "\n"
            << "chi=" << with_se(ctx, chi_limit_mc(d.w12, o.n_mc, r_chi)) << "\n";
}

void run_curves(const Context& ctx, const TheoryOptions& o) {
  CurveRequest req;
  req.family = o.family == "hr" ? CurveFamily::HuslerReiss : CurveFamily::Dirichlet;
  req.grid = o.grid.empty() ? default_grid(o.family) : o.grid;
  req.alpha1 = o.alpha1;
  req.n_mc = o.n_mc;
  req.seed = o.seed;
  write_output(o.out, format_curve_csv(dependence_curves(req)));
  write_metadata_for(ctx, o.out, o.seed);
}

void run_tau_mc(const Context& ctx, const TheoryOptions& o) {
  std::optional<ExtremalFunctionSampler> sampler;
  if (o.model == "hr") {
    sampler = hr_extremal_sampler(o.gamma);
  } else {
    const auto d = dirichlet_extremal_sampler(o.alpha1, o.alpha2);
    sampler = o.direction == "xy" ? d.w12 : d.w21;
  }
  if (o.dual) sampler = dual_extremal_sampler(*sampler);
  RngStream r_tau(o.seed, 0), r_chi(o.seed, 1);
  const auto tau = tau_limit_mc(*sampler, o.n_mc, r_tau);
  const auto chi = chi_limit_mc(*sampler, o.n_mc, r_chi);
  std::cout << "model=" << sampler->model() << " n_mc=" << o.n_mc << "\n"
            << "tau=" << with_se(ctx, tau) << "\n"
            << "chi=" << with_se(ctx, chi) << "\n";
  if (o.model == "hr") {
    const double closed = hr_tau_closed(o.gamma);
    std::cout << "tau_closed=" << fmt(ctx, closed) << " z="
              << fmt(ctx, (tau.value - closed) / tau.std_error) << "\n"
              << "chi_closed=" << fmt(ctx, hr_chi_closed(o.gamma)) << "\n";
  }
}

}  // namespace

void add_theory(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<TheoryOptions>();
  auto* th = app.add_subcommand("theory", "Limiting tail tau and chi of max-stable models");
  th->configurable();
  th->require_subcommand(1);

  auto* hr = th->add_subcommand("hr", "Closed-form Husler-Reiss tail tau and chi");
  hr->configurable();
  hr->add_option("--gamma", o->gammas, "One or more Gamma values")->check(CLI::PositiveNumber);
  hr->callback([&ctx, hr, o] { select(ctx, *hr, [&ctx, o] { run_hr(ctx, *o); }); });

  auto* dir = th->add_subcommand("dirichlet", "Monte Carlo tail tau of the extremal Dirichlet model");
  dir->configurable();
  dir->add_option("--alpha1", o->alpha1, "Parameter of X");
  dir->add_option("--alpha2", o->alpha2, "Parameter of Y");
  dir->add_option("--n-mc", o->n_mc, "Monte Carlo draws");
  dir->add_option("--seed", o->seed, "Random seed");
  dir->callback([&ctx, dir, o] { select(ctx, *dir, [&ctx, o] { run_dirichlet(ctx, *o); }); });

  auto* curves = th->add_subcommand("curves", "Tabulate chi and tail tau over a parameter grid");
  curves->configurable();
  curves->add_option("--family", o->family, "hr (grid over Gamma) or dirichlet (grid over alpha2)")
      ->check(CLI::IsMember({"hr", "dirichlet"}));
  curves->add_option("--grid", o->grid, "Increasing parameter values (default: log-spaced)");
  curves->add_option("--alpha1", o->alpha1, "Dirichlet alpha1");
  curves->add_option("--n-mc", o->n_mc, "Monte Carlo draws per point (Dirichlet)");
  curves->add_option("--seed", o->seed, "Random seed");
  curves->add_option("--out", o->out, "Output CSV; '-' for stdout");
  curves->callback([&ctx, curves, o] { select(ctx, *curves, [&ctx, o] { run_curves(ctx, *o); }); });

  auto* mc = th->add_subcommand("tau-mc", "Monte Carlo limit from an extremal-function sampler");
  mc->configurable();
  mc->add_option("--model", o->model, "hr or dirichlet")->check(CLI::IsMember({"hr", "dirichlet"}));
  mc->add_option("--gamma", o->gamma, "Husler-Reiss Gamma");
  mc->add_option("--alpha1", o->alpha1, "Dirichlet alpha1");
  mc->add_option("--alpha2", o->alpha2, "Dirichlet alpha2");
  mc->add_option("--direction", o->direction, "Dirichlet conditioning: xy or yx")
      ->check(CLI::IsMember({"xy", "yx"}));
  mc->add_flag("--dual", o->dual, "Use the dual (reverse) extremal function");
  mc->add_option("--n-mc", o->n_mc, "Monte Carlo draws");
  mc->add_option("--seed", o->seed, "Random seed");
  mc->callback([&ctx, mc, o] { select(ctx, *mc, [&ctx, o] { run_tau_mc(ctx, *o); }); });
}

}  // namespace tailtau::cli
