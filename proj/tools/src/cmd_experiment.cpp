#include <iostream>

#include "common.hpp"
#include "tailtau/error.hpp"
#include "tailtau/experiments.hpp"

namespace tailtau::cli {
namespace {

struct ExperimentOptions {
  std::string profile = "desk";
  std::size_t reps = 0;
  std::size_t n = 0;
  double q = 0.98;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::vector<double> beta_grid;
  std::vector<double> inv_alpha_grid;
  double beta = 0.3;
  std::string out_dir = ".";
};

Profile profile_of(const std::string& s) { return s == "paper" ? Profile::Paper : Profile::Desk; }

GridConfig grid_config(const ExperimentOptions& o) {
  auto c = GridConfig::with_profile(profile_of(o.profile));
  if (o.reps > 0) c.n_reps = o.reps;
  if (o.n > 0) c.n_per_sample = o.n;
  if (!o.beta_grid.empty()) c.beta_grid = o.beta_grid;
  if (!o.inv_alpha_grid.empty()) c.inv_alpha_grid = o.inv_alpha_grid;
  c.q = o.q;
  c.seed = o.seed;
  c.threads = o.threads;
  c.validate();
  return c;
}

std::filesystem::path write_result(const Context& ctx, const ExperimentOptions& o,
                                   const std::string& kind, const std::string& canonical,
                                   const std::string& csv) {
  const auto hash = config_hash(canonical);
  const auto base = std::filesystem::path(o.out_dir) / (kind + "_" + hash);
  auto csv_path = base;
  csv_path += ".csv";
  auto meta_path = base;
  meta_path += ".meta";
  write_output(csv_path, csv);
  write_metadata(ctx, meta_path, o.seed, hash);
  std::cout << "wrote " << csv_path.string() << "\n";
  return csv_path;
}

void run_grid_cmd(const Context& ctx, const ExperimentOptions& o) {
  const auto c = grid_config(o);
  const auto rows = run_grid(c);
  write_result(ctx, o, "grid", canonical_string(c), format_grid_csv(rows));
  std::cout << rows.size() << " configurations x " << c.n_reps << " repetitions\n";
}

void run_direction_cmd(const Context& ctx, const ExperimentOptions& o) {
  const auto c = grid_config(o);
  const auto rows = run_directionality(c);
  write_result(ctx, o, "direction", canonical_string(c), format_direction_csv(rows));
  std::size_t down = 0, total = 0;
  for (const auto& r : rows) {
    if (!r.direction_defined || r.inv_alpha > 0.4 || r.beta_diff < 0.4 - 1e-12) continue;
    down += r.down_smaller;
    total += r.n_reps;
  }
  if (total > 0) {
    std::cout << "strong dependence, |beta1-beta2| >= 0.4: downstream-conditioned smaller in "
              << fmt(ctx, static_cast<double>(down) / static_cast<double>(total))
              << " of repetitions\n";
  }
}

void run_causal_cmd(const Context& ctx, const ExperimentOptions& o) {
  auto c = CausalExpConfig::with_profile(profile_of(o.profile));
  if (o.reps > 0) c.n_reps = o.reps;
  if (o.n > 0) c.n_per_sample = o.n;
  c.q = o.q;
  c.beta = o.beta;
  c.seed = o.seed;
  c.threads = o.threads;
  c.validate();
  const auto rows = run_causality(c);
  write_result(ctx, o, "causal", canonical_string(c), format_causal_csv(rows));
  std::cout << "scenario  median tau_xy  median tau_yx  median tau_sym\n";
  for (const auto& s : c.scenarios) {
    std::cout << s.label << "  " << fmt(ctx, causal_median(rows, s.label, Coefficient::TauXY))
              << "  " << fmt(ctx, causal_median(rows, s.label, Coefficient::TauYX)) << "  "
              << fmt(ctx, causal_median(rows, s.label, Coefficient::TauSym)) << "\n";
  }
}

void add_common(CLI::App* sub, ExperimentOptions& o) {
  sub->add_option("--profile", o.profile, "desk (100 repetitions) or paper (1000)")
      ->check(CLI::IsMember({"desk", "paper"}));
  sub->add_option("--reps", o.reps, "Repetitions per configuration (0: from profile)");
  sub->add_option("--n", o.n, "Observations per sample (0: default)");
  sub->add_option("--q", o.q, "Probability level")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--threads", o.threads, "Worker threads (0: all cores); results do not depend on it");
  sub->add_option("--out-dir", o.out_dir, "Directory for <kind>_<hash>.csv and .meta");
}

}  // namespace

void add_experiment(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<ExperimentOptions>();
  auto* ex = app.add_subcommand("experiment", "Simulation studies");
  ex->configurable();
  ex->require_subcommand(1);

  auto* grid = ex->add_subcommand("grid", "Asymmetric logistic grid over (beta1, beta2, 1/alpha)");
  auto* dir = ex->add_subcommand("direction", "Grid study oriented by the smaller beta");
  for (auto* sub : {grid, dir}) {
    sub->configurable();
    add_common(sub, *o);
    sub->add_option("--beta-grid", o->beta_grid, "beta values (default 0.1..0.9)");
    sub->add_option("--inv-alpha-grid", o->inv_alpha_grid,
                    "1/alpha values (default 0.005 0.2 0.4 0.6 0.8 0.98)");
  }
  grid->callback([&ctx, grid, o] { select(ctx, *grid, [&ctx, o] { run_grid_cmd(ctx, *o); }); });
  dir->callback([&ctx, dir, o] { select(ctx, *dir, [&ctx, o] { run_direction_cmd(ctx, *o); }); });

  auto* causal = ex->add_subcommand("causal", "Heavy-tailed SEM scenarios with and without confounding");
  causal->configurable();
  add_common(causal, *o);
  causal->add_option("--beta", o->beta, "Causal coefficient");
  causal->callback([&ctx, causal, o] { select(ctx, *causal, [&ctx, o] { run_causal_cmd(ctx, *o); }); });
}

}  // namespace tailtau::cli
