#include <iostream>

#include "common.hpp"
#include "tailtau/error.hpp"
#include "tailtau/hydro.hpp"

namespace tailtau::cli {
namespace {

struct HydroOptions {
  std::vector<std::string> discharge;
  std::string stations;
  std::string relations;
  double q = 0.98;
  std::size_t min_overlap = 1095;
  std::size_t threads = 0;
  std::string out_dir = ".";
};

void report_warnings(const std::vector<std::string>& warnings) {
  constexpr std::size_t shown = 20;
  for (std::size_t i = 0; i < warnings.size() && i < shown; ++i) {
    std::cerr << "warning: " << warnings[i] << "\n";
  }
  if (warnings.size() > shown) {
    std::cerr << "warning: " << warnings.size() - shown << " more warnings not shown\n";
  }
}

void run(const Context& ctx, const HydroOptions& o) {
  std::vector<std::filesystem::path> files(o.discharge.begin(), o.discharge.end());
  if (files.empty()) {
    files.push_back(std::filesystem::path(o.stations).parent_path() / "discharge.csv");
  }
  auto load = hydro::load_discharge(files);
  report_warnings(load.warnings);
  report_warnings(hydro::attach_metadata(load.records, hydro::load_station_metadata(o.stations)));
  const auto relations = hydro::load_relations(o.relations);
  if (load.records.size() < 2) {
    throw InsufficientData("hydro: need at least two stations, found " +
                           std::to_string(load.records.size()));
  }

  hydro::PipelineOptions opt;
  opt.q = o.q;
  opt.min_overlap_days = o.min_overlap;
  opt.threads = o.threads;
  const auto res = hydro::analyze_all_pairs(load.records, relations, opt);

  const std::filesystem::path dir = o.out_dir;
  write_output(dir / "pairs.csv", hydro::format_results_csv(res.results));
  write_output(dir / "pair_errors.csv", hydro::format_errors_csv(res.errors));
  write_output(dir / "scatter.csv", hydro::format_scatter_csv(res.results));
  std::optional<hydro::GroupSummary> summary;
  if (!res.results.empty()) {
    summary = hydro::group_summary(res.results);
    write_output(dir / "groups.csv", hydro::format_groups_csv(*summary));
    write_output(dir / "connected.csv", hydro::format_connected_csv(*summary));
  }
  write_metadata(ctx, dir / "hydro.meta", std::nullopt, effective_config_hash(ctx));

  std::cout << load.records.size() << " stations, " << res.attempted << " pairs attempted, "
            << res.results.size() << " estimated, " << res.errors.size() << " failed\n";
  if (summary) {
    for (const auto& g : summary->groups) {
      std::cout << to_string(g.group) << ": " << g.count << " pairs, median max_tau "
                << fmt(ctx, g.median_max_tau) << "\n";
    }
    if (!summary->connected.empty()) {
      std::cout << "connected pairs with tau_down < tau_up: "
                << fmt(ctx, summary->fraction_above_diagonal) << "\n";
    }
  }
  std::cout << "results in " << dir.string() << "\n";
}

}  // namespace

void add_hydro(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<HydroOptions>();
  auto* sub = app.add_subcommand("hydro", "Pairwise tail tau for river gauging stations");
  sub->configurable();
  sub->add_option("--discharge", o->discharge,
                  "Discharge CSV(s) station_id,date,flow_m3s (default: discharge.csv next to --stations)")
      ->check(CLI::ExistingFile);
  sub->add_option("--stations", o->stations, "Station CSV station_id,basin_id,name")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--relations", o->relations, "Relation CSV station_a,station_b,relation")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--q", o->q, "Probability level")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--min-overlap", o->min_overlap, "Minimum common days per pair");
  sub->add_option("--threads", o->threads, "Worker threads (0: all cores)");
  sub->add_option("--out-dir", o->out_dir, "Output directory");
  sub->callback([&ctx, sub, o] { select(ctx, *sub, [&ctx, o] { run(ctx, *o); }); });
}

}  // namespace tailtau::cli
