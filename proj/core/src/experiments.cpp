#include "tailtau/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "tailtau/core_stats.hpp"
#include "tailtau/csv.hpp"
#include "tailtau/error.hpp"
#include "tailtau/tail_dependence.hpp"

namespace tailtau {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_q(double q, std::size_t n) {
  // Throws if k = round(n(1-q)) is not in [2, n].
  (void)ThresholdSpec::from_q(q, n);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += csv::format_double(v[i]);
  }
  return out;
}

void append_box(std::ostringstream& os, const BoxStats& b) {
  os << ',' << csv::format_double(b.q25) << ',' << csv::format_double(b.median) << ','
     << csv::format_double(b.q75);
}

}  // namespace

std::size_t reps_for(Profile profile) { return profile == Profile::Paper ? 1000 : 100; }

GridConfig GridConfig::with_profile(Profile profile) {
  GridConfig c;
  c.n_reps = reps_for(profile);
  return c;
}

void GridConfig::validate() const {
  if (beta_grid.empty() || inv_alpha_grid.empty()) {
    throw InvalidArgument("grid experiment: parameter grids must be non-empty");
  }
  for (double b : beta_grid) AsymLogisticParams{0.5, b, b}.validate();
  for (double a : inv_alpha_grid) AsymLogisticParams{a, 1.0, 1.0}.validate();
  if (n_reps == 0) throw InvalidArgument("grid experiment: n_reps must be positive");
  check_q(q, n_per_sample);
}

GridResult run_grid_full(const GridConfig& config) {
  config.validate();
  struct Combo {
    double b1, b2, a;
  };
  std::vector<Combo> combos;
  combos.reserve(config.combinations());
  for (double a : config.inv_alpha_grid) {
    for (double b1 : config.beta_grid) {
      for (double b2 : config.beta_grid) combos.push_back({b1, b2, a});
    }
  }
  const std::size_t reps = config.n_reps;
  const auto spec = ThresholdSpec::from_q(config.q, config.n_per_sample);
  std::vector<double> tau_xy(combos.size() * reps), tau_yx(combos.size() * reps);

  detail::parallel_for(combos.size() * reps, config.threads, [&](std::size_t task) {
    const std::size_t row = task / reps;
    const std::size_t rep = task % reps;
    RngStream rng(config.seed, stream_id_for(row, rep));
    const auto sample = sample_asym_logistic({combos[row].a, combos[row].b1, combos[row].b2},
                                             config.n_per_sample, rng);
    const auto pair = tail_tau_pair(sample, spec);
    tau_xy[task] = pair.tau_xy;
    tau_yx[task] = pair.tau_yx;
  });

  GridResult result;
  result.rows.reserve(combos.size());
  result.direction.reserve(combos.size());
  std::vector<double> xy(reps), yx(reps), asym(reps), mx(reps), gap(reps);
  for (std::size_t row = 0; row < combos.size(); ++row) {
    const auto& c = combos[row];
    std::size_t down_smaller = 0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      xy[rep] = tau_xy[row * reps + rep];
      yx[rep] = tau_yx[row * reps + rep];
      asym[rep] = std::abs(xy[rep] - yx[rep]);
      mx[rep] = std::max(xy[rep], yx[rep]);
      gap[rep] = xy[rep] - yx[rep];
      const bool x_down = c.b1 < c.b2;
      const double down = x_down ? xy[rep] : yx[rep];
      const double up = x_down ? yx[rep] : xy[rep];
      down_smaller += down < up;
    }
    GridRow g;
    g.beta1 = c.b1;
    g.beta2 = c.b2;
    g.inv_alpha = c.a;
    g.tau_xy = box_stats(xy);
    g.tau_yx = box_stats(yx);
    g.asymmetry = box_stats(asym);
    g.max_tau = box_stats(mx);
    g.median_gap = median(gap);
    result.rows.push_back(g);

    DirectionRow d;
    d.beta1 = c.b1;
    d.beta2 = c.b2;
    d.inv_alpha = c.a;
    d.beta_diff = std::abs(c.b1 - c.b2);
    d.direction_defined = c.b1 != c.b2;
    d.median_asymmetry = g.asymmetry.median;
    d.n_reps = reps;
    if (d.direction_defined) {
      const bool x_down = c.b1 < c.b2;
      d.median_tau_down = x_down ? g.tau_xy.median : g.tau_yx.median;
      d.median_tau_up = x_down ? g.tau_yx.median : g.tau_xy.median;
      d.down_smaller = down_smaller;
    } else {
      d.median_tau_down = g.tau_xy.median;
      d.median_tau_up = g.tau_yx.median;
      d.down_smaller = 0;
    }
    result.direction.push_back(d);
  }
  return result;
}

std::vector<GridRow> run_grid(const GridConfig& config) { return run_grid_full(config).rows; }

std::vector<DirectionRow> run_directionality(const GridConfig& config) {
  return run_grid_full(config).direction;
}

std::vector<CausalScenario> default_causal_scenarios() {
  return {{"a", CausalDirection::Independent, false}, {"b", CausalDirection::XtoY, false},
          {"c", CausalDirection::YtoX, false},        {"d", CausalDirection::Independent, true},
          {"e", CausalDirection::XtoY, true},         {"f", CausalDirection::YtoX, true}};
}

CausalExpConfig CausalExpConfig::with_profile(Profile profile) {
  CausalExpConfig c;
  c.n_reps = reps_for(profile);
  return c;
}

void CausalExpConfig::validate() const {
  if (scenarios.empty()) throw InvalidArgument("causal experiment: no scenarios");
  if (n_reps == 0) throw InvalidArgument("causal experiment: n_reps must be positive");
  SemConfig{beta, noise_dof, CausalDirection::XtoY, true, confounder_loading, confounder_dof}
      .validate();
  check_q(q, n_per_sample);
}

std::string to_string(Coefficient c) {
  switch (c) {
    case Coefficient::TauXY:
      return "tau_xy";
    case Coefficient::TauYX:
      return "tau_yx";
    case Coefficient::TauSym:
      return "tau_sym";
  }
  return "unknown";
}

std::string to_string(CausalDirection d) {
  switch (d) {
    case CausalDirection::Independent:
      return "independent";
    case CausalDirection::XtoY:
      return "x_to_y";
    case CausalDirection::YtoX:
      return "y_to_x";
  }
  return "unknown";
}

std::vector<CausalRow> run_causality(const CausalExpConfig& config) {
  config.validate();
  const std::size_t reps = config.n_reps;
  const std::size_t m = config.scenarios.size();
  const auto spec = ThresholdSpec::from_q(config.q, config.n_per_sample);
  std::vector<double> xy(m * reps), yx(m * reps), sym(m * reps);

  detail::parallel_for(m * reps, config.threads, [&](std::size_t task) {
    const std::size_t s = task / reps;
    const std::size_t rep = task % reps;
    const auto& scenario = config.scenarios[s];
    SemConfig sem{config.beta,         config.noise_dof,          scenario.direction,
                  scenario.confounded, config.confounder_loading, config.confounder_dof};
    RngStream rng(config.seed, stream_id_for(s, rep));
    const auto sample = sample_sem(sem, config.n_per_sample, rng);
    const auto pair = tail_tau_pair(sample, spec);
    xy[task] = pair.tau_xy;
    yx[task] = pair.tau_yx;
    try {
      sym[task] = symmetric_tail_tau(sample, spec);
    } catch (const InsufficientData&) {
      sym[task] = kNaN;
    }
  });

  std::vector<CausalRow> rows;
  rows.reserve(3 * m);
  for (std::size_t s = 0; s < m; ++s) {
    const auto slice = [&](const std::vector<double>& v) {
      return std::span<const double>(v.data() + s * reps, reps);
    };
    rows.push_back({config.scenarios[s], Coefficient::TauXY, box_stats(slice(xy))});
    rows.push_back({config.scenarios[s], Coefficient::TauYX, box_stats(slice(yx))});
    rows.push_back({config.scenarios[s], Coefficient::TauSym, box_stats(slice(sym))});
  }
  return rows;
}

double causal_median(const std::vector<CausalRow>& rows, const std::string& label,
                     Coefficient coefficient) {
  for (const auto& r : rows) {
    if (r.scenario.label == label && r.coefficient == coefficient) return r.stats.median;
  }
  throw InvalidArgument("causal result has no scenario '" + label + "'");
}

std::string canonical_string(const GridConfig& c) {
  std::ostringstream os;
  os << "experiment=grid;beta_grid=" << join(c.beta_grid)
     << ";inv_alpha_grid=" << join(c.inv_alpha_grid) << ";n_per_sample=" << c.n_per_sample
     << ";n_reps=" << c.n_reps << ";q=" << csv::format_double(c.q) << ";seed=" << c.seed;
  return os.str();
}

std::string canonical_string(const CausalExpConfig& c) {
  std::ostringstream os;
  os << "experiment=causal;n_per_sample=" << c.n_per_sample << ";n_reps=" << c.n_reps
     << ";q=" << csv::format_double(c.q) << ";beta=" << csv::format_double(c.beta)
     << ";noise_dof=" << csv::format_double(c.noise_dof)
     << ";confounder_loading=" << csv::format_double(c.confounder_loading)
     << ";confounder_dof=" << csv::format_double(c.confounder_dof) << ";scenarios=";
  for (std::size_t i = 0; i < c.scenarios.size(); ++i) {
    if (i) os << '|';
    os << c.scenarios[i].label << ':' << to_string(c.scenarios[i].direction) << ':'
       << (c.scenarios[i].confounded ? 1 : 0);
  }
  os << ";seed=" << c.seed;
  return os.str();
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_grid_csv(const std::vector<GridRow>& rows) {
  std::ostringstream os;
  os << "beta1,beta2,inv_alpha,n_reps,tau_xy_q25,tau_xy_median,tau_xy_q75,"
        "tau_yx_q25,tau_yx_median,tau_yx_q75,asymmetry_q25,asymmetry_median,asymmetry_q75,"
        "max_tau_q25,max_tau_median,max_tau_q75,median_gap,asymmetry_of_medians\n";
  for (const auto& r : rows) {
    os << csv::format_double(r.beta1) << ',' << csv::format_double(r.beta2) << ','
       << csv::format_double(r.inv_alpha) << ',' << r.tau_xy.n;
    append_box(os, r.tau_xy);
    append_box(os, r.tau_yx);
    append_box(os, r.asymmetry);
    append_box(os, r.max_tau);
    os << ',' << csv::format_double(r.median_gap) << ','
       << csv::format_double(r.asymmetry_of_medians()) << '\n';
  }
  return os.str();
}

std::string format_direction_csv(const std::vector<DirectionRow>& rows) {
  std::ostringstream os;
  os << "beta1,beta2,inv_alpha,beta_diff,direction_defined,median_tau_down,median_tau_up,"
        "median_asymmetry,fraction_down_smaller,n_reps\n";
  for (const auto& r : rows) {
    os << csv::format_double(r.beta1) << ',' << csv::format_double(r.beta2) << ','
       << csv::format_double(r.inv_alpha) << ',' << csv::format_double(r.beta_diff) << ','
       << (r.direction_defined ? 1 : 0) << ',' << csv::format_double(r.median_tau_down) << ','
       << csv::format_double(r.median_tau_up) << ',' << csv::format_double(r.median_asymmetry)
       << ','
       << (r.direction_defined ? csv::format_double(r.fraction_down_smaller()) : std::string("nan"))
       << ',' << r.n_reps << '\n';
  }
  return os.str();
}

std::string format_causal_csv(const std::vector<CausalRow>& rows) {
  std::ostringstream os;
  os << "scenario,direction,confounded,coefficient,n,n_failed,lower_whisker,q25,median,q75,"
        "upper_whisker\n";
  for (const auto& r : rows) {
    os << r.scenario.label << ',' << to_string(r.scenario.direction) << ','
       << (r.scenario.confounded ? 1 : 0) << ',' << to_string(r.coefficient) << ','
       << r.stats.n << ',' << r.stats.n_failed << ','
       << csv::format_double(r.stats.lower_whisker);
    append_box(os, r.stats);
    os << ',' << csv::format_double(r.stats.upper_whisker) << '\n';
  }
  return os.str();
}

}  // namespace tailtau
