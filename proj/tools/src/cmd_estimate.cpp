#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "common.hpp"
#include "tailtau/csv.hpp"
#include "tailtau/error.hpp"
#include "tailtau/tail_dependence.hpp"

namespace tailtau::cli {
namespace {

struct EstimateOptions {
  std::string input;
  double q = 0.98;
  std::size_t k = 0;
  std::string out;
};

bool is_missing(std::string_view f) {
  f = csv::trim(f);
  return f.empty() || f == "NA" || f == "nan" || f == "NaN";
}

PairedSample read_two_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<double> x, y;
  std::string label_x = "X", label_y = "Y";
  std::string line;
  std::size_t line_no = 0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    if (f.size() != 2) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                       std::to_string(f.size()));
    }
    auto a = csv::parse_double(f[0]);
    auto b = csv::parse_double(f[1]);
    if (x.empty() && line_no == 1 && !a && !b && !is_missing(f[0]) && !is_missing(f[1])) {
      label_x = std::string(csv::trim(f[0]));
      label_y = std::string(csv::trim(f[1]));
      continue;
    }
    if ((!a && !is_missing(f[0])) || (!b && !is_missing(f[1]))) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": not a number");
    }
    x.push_back(a ? *a : nan);
    y.push_back(b ? *b : nan);
  }
  return PairedSample(std::move(x), std::move(y), label_x, label_y);
}

void run(const Context& ctx, const EstimateOptions& o) {
  const auto sample = read_two_columns(o.input);
  const auto spec = o.k > 0 ? ThresholdSpec::from_k(o.k, sample.size())
                            : ThresholdSpec::from_q(o.q, sample.size());
  const auto pair = tail_tau_pair(sample, spec);

  std::optional<ChiEstimate> chi;
  std::string chi_note;
  try {
    chi = chi_hat(sample, spec.q());
  } catch (const std::exception& e) {
    chi_note = e.what();
  }

  std::cout << "x = " << sample.label_x() << ", y = " << sample.label_y() << "\n"
            << "n = " << sample.size();
  if (sample.dropped_rows() > 0) std::cout << " (" << sample.dropped_rows() << " rows dropped)";
  std::cout << "\nq = " << fmt(ctx, spec.q()) << "\nk = " << spec.k() << "\n"
            << "tau_xy = " << fmt(ctx, pair.tau_xy) << "\n"
            << "tau_yx = " << fmt(ctx, pair.tau_yx) << "\n"
            << "asymmetry = " << fmt(ctx, pair.asymmetry) << "\n"
            << "max_tau = " << fmt(ctx, pair.max_tau) << "\n";
  if (chi) {
    std::cout << "chi = " << fmt(ctx, chi->chi) << " (" << chi->joint_exceedances
              << " joint exceedances)\n";
  } else {
    std::cout << "chi = nan\n";
    std::cerr << "warning: chi not available: " << chi_note << "\n";
  }
  if (pair.tie_warning) std::cerr << "warning: ties at the exceedance threshold\n";
  if (sample.has_ties_x() || sample.has_ties_y()) {
    std::cerr << "warning: tied values; the estimator assumes continuous margins\n";
  }

  if (!o.out.empty()) {
    std::ostringstream os;
    os << "n,q,k,tau_xy,tau_yx,asymmetry,max_tau,chi\n"
       << sample.size() << ',' << csv::format_double(spec.q()) << ',' << spec.k() << ','
       << csv::format_double(pair.tau_xy) << ',' << csv::format_double(pair.tau_yx) << ','
       << csv::format_double(pair.asymmetry) << ',' << csv::format_double(pair.max_tau) << ','
       << csv::format_double(chi ? chi->chi : std::numeric_limits<double>::quiet_NaN()) << '\n';
    write_output(o.out, os.str());
    write_metadata_for(ctx, o.out, std::nullopt);
  }
}

}  // namespace

void add_estimate(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<EstimateOptions>();
  auto* sub = app.add_subcommand("estimate", "Directional tail tau and chi of a two-column CSV");
  sub->configurable();
  sub->add_option("input", o->input, "CSV with two numeric columns, optional header")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--q", o->q, "Probability level; k = round(n(1-q))")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--k", o->k, "Number of exceedances (overrides --q)");
  sub->add_option("--out", o->out, "Also write the result as CSV");
  sub->callback([&ctx, sub, o] { select(ctx, *sub, [&ctx, o] { run(ctx, *o); }); });
}

}  // namespace tailtau::cli
