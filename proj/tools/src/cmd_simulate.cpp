#include <iostream>
#include <sstream>

#include "common.hpp"
#include "tailtau/copula_sim.hpp"
#include "tailtau/csv.hpp"
#include "tailtau/error.hpp"
#include "tailtau/hydro.hpp"

namespace tailtau::cli {
namespace {

struct SampleOptions {
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::string out = "-";
};

struct ModelOptions {
  AsymLogisticParams asym;
  double sym_inv_alpha = 0.5;
  double gamma = 1.0;
  SemConfig sem;
  std::string sem_direction = "x_to_y";
};

struct RiverOptions {
  bool fixture = false;
  std::size_t basins = 3;
  std::size_t per_basin = 6;
  int first_year = 1981;
  int years = 30;
  std::uint64_t seed = 1;
  std::string out_dir = "river";
};

std::string pairs_csv(const PairedSample& s) {
  std::ostringstream os;
  os << "x,y\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << csv::format_double(s.x()[i]) << ',' << csv::format_double(s.y()[i]) << '\n';
  }
  return os.str();
}

CausalDirection parse_direction(const std::string& s) {
  if (s == "independent") return CausalDirection::Independent;
  if (s == "x_to_y") return CausalDirection::XtoY;
  if (s == "y_to_x") return CausalDirection::YtoX;
  throw InvalidArgument("unknown direction " + s);
}

void add_sample_options(CLI::App* sub, SampleOptions& o) {
  sub->add_option("--n", o.n, "Sample size");
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--stream", o.stream, "Stream id within the seed");
  sub->add_option("--out", o.out, "Output CSV (x,y); '-' for stdout");
}

template <typename Draw>
void emit(const Context& ctx, const SampleOptions& o, Draw draw) {
  RngStream rng(o.seed, o.stream);
  write_output(o.out, pairs_csv(draw(rng)));
  write_metadata_for(ctx, o.out, o.seed);
}

void run_river(const Context& ctx, const RiverOptions& o) {
  auto config = o.fixture ? hydro::SyntheticRiverConfig::five_station_fixture()
                          : hydro::SyntheticRiverConfig::network(o.basins, o.per_basin);
  config.first_year = o.first_year;
  config.years = o.years;
  RngStream rng(o.seed, 0);
  const auto river = hydro::make_synthetic_river(config, rng);
  const std::filesystem::path dir = o.out_dir;
  write_output(dir / "discharge.csv", hydro::format_discharge_csv(river.records));
  write_output(dir / "stations.csv", hydro::format_station_csv(river.meta));
  write_output(dir / "relations.csv", hydro::format_relations_csv(river.relation_rows));
  write_metadata(ctx, dir / "river.meta", o.seed, effective_config_hash(ctx));
  std::cout << "wrote " << river.records.size() << " stations, " << river.relation_rows.size()
            << " relations to " << dir.string() << "\n";
}

}  // namespace

void add_simulate(CLI::App& app, Context& ctx) {
  auto so = std::make_shared<SampleOptions>();
  auto mo = std::make_shared<ModelOptions>();
  auto ro = std::make_shared<RiverOptions>();
  auto* sim = app.add_subcommand("simulate", "Draw samples from the bivariate models");
  sim->configurable();
  sim->require_subcommand(1);

  auto* asym = sim->add_subcommand("asym-logistic", "Asymmetric logistic max-mixture");
  asym->configurable();
  asym->add_option("--inv-alpha", mo->asym.inv_alpha, "Dependence 1/alpha in (0, 1]");
  asym->add_option("--beta1", mo->asym.beta1, "Weight of the logistic part in X");
  asym->add_option("--beta2", mo->asym.beta2, "Weight of the logistic part in Y");
  add_sample_options(asym, *so);
  asym->callback([&ctx, asym, so, mo] {
    select(ctx, *asym, [&ctx, so, mo] {
      emit(ctx, *so, [&](RngStream& r) { return sample_asym_logistic(mo->asym, so->n, r); });
    });
  });

  auto* sym = sim->add_subcommand("sym-logistic", "Symmetric logistic");
  sym->configurable();
  sym->add_option("--inv-alpha", mo->sym_inv_alpha, "Dependence 1/alpha in (0, 1]");
  add_sample_options(sym, *so);
  sym->callback([&ctx, sym, so, mo] {
    select(ctx, *sym, [&ctx, so, mo] {
      emit(ctx, *so, [&](RngStream& r) { return sample_sym_logistic(mo->sym_inv_alpha, so->n, r); });
    });
  });

  auto* hr = sim->add_subcommand("hr", "Husler-Reiss max-stable");
  hr->configurable();
  hr->add_option("--gamma", mo->gamma, "Variogram value Gamma > 0");
  add_sample_options(hr, *so);
  hr->callback([&ctx, hr, so, mo] {
    select(ctx, *hr, [&ctx, so, mo] {
      emit(ctx, *so, [&](RngStream& r) { return sample_husler_reiss({mo->gamma}, so->n, r); });
    });
  });

  auto* sem = sim->add_subcommand("sem", "Linear SEM with Student-t noise");
  sem->configurable();
  sem->add_option("--beta", mo->sem.beta, "Causal coefficient");
  sem->add_option("--noise-dof", mo->sem.noise_dof, "Degrees of freedom of the noise");
  sem->add_option("--direction", mo->sem_direction, "Causal direction")
      ->check(CLI::IsMember({"independent", "x_to_y", "y_to_x"}));
  sem->add_flag("--confounded", mo->sem.confounded, "Add a common heavy-tailed confounder");
  sem->add_option("--confounder-loading", mo->sem.confounder_loading, "Confounder loading");
  sem->add_option("--confounder-dof", mo->sem.confounder_dof, "Confounder degrees of freedom");
  add_sample_options(sem, *so);
  sem->callback([&ctx, sem, so, mo] {
    select(ctx, *sem, [&ctx, so, mo] {
      mo->sem.direction = parse_direction(mo->sem_direction);
      emit(ctx, *so, [&](RngStream& r) { return sample_sem(mo->sem, so->n, r); });
    });
  });

  auto* river = sim->add_subcommand(
      "river", "Synthetic river network: discharge, station and relation CSVs");
  river->configurable();
  river->add_flag("--fixture", ro->fixture, "Five-station fixture instead of a generated network");
  river->add_option("--basins", ro->basins, "Number of basins");
  river->add_option("--per-basin", ro->per_basin, "Stations per basin");
  river->add_option("--first-year", ro->first_year, "First calendar year");
  river->add_option("--years", ro->years, "Record length in years");
  river->add_option("--seed", ro->seed, "Random seed");
  river->add_option("--out-dir", ro->out_dir, "Output directory");
  river->callback([&ctx, river, ro] { select(ctx, *river, [&ctx, ro] { run_river(ctx, *ro); }); });
}

}  // namespace tailtau::cli
