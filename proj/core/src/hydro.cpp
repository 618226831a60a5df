#include "tailtau/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "parallel.hpp"
#include "tailtau/core_stats.hpp"
#include "tailtau/csv.hpp"
#include "tailtau/error.hpp"

namespace tailtau::hydro {

namespace {

using namespace std::chrono;

std::vector<std::string> read_header(std::istream& in, const std::string& source,
                                     const std::vector<std::string>& expected) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source + ": empty file, expected a header");
  auto fields = csv::split_line(line);
  for (auto& f : fields) f = std::string(csv::trim(f));
  if (!fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
  if (fields.size() < expected.size()) {
    throw ParseError(source + ": header has " + std::to_string(fields.size()) +
                     " columns, missing field '" + expected[fields.size()] + "'");
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    // Allow a unit or format suffix, e.g. "date(YYYY-MM-DD)".
    if (fields[i] != expected[i] && fields[i].rfind(expected[i] + "(", 0) != 0) {
      throw ParseError(source + ": header field " + std::to_string(i + 1) + " is '" + fields[i] +
                       "', expected '" + expected[i] + "'");
    }
  }
  return fields;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

int year_of(Date d) { return static_cast<int>(year_month_day(d).year()); }

std::vector<int> observed_years(const StationRecord& r) {
  std::vector<int> years;
  for (const auto& v : r.series) {
    if (!v.flow) continue;
    const int y = year_of(v.date);
    if (years.empty() || years.back() != y) years.push_back(y);
  }
  return years;
}

CommonPeriod common_period_impl(const StationRecord& a, const StationRecord& b,
                                const std::vector<int>& years_a, const std::vector<int>& years_b,
                                std::size_t min_overlap_days) {
  std::vector<int> years;
  std::set_intersection(years_a.begin(), years_a.end(), years_b.begin(), years_b.end(),
                        std::back_inserter(years));
  std::vector<double> xs, ys;
  auto ia = a.series.begin();
  auto ib = b.series.begin();
  while (ia != a.series.end() && ib != b.series.end()) {
    if (ia->date < ib->date) {
      ++ia;
    } else if (ib->date < ia->date) {
      ++ib;
    } else {
      if (ia->flow && ib->flow &&
          std::binary_search(years.begin(), years.end(), year_of(ia->date))) {
        xs.push_back(*ia->flow);
        ys.push_back(*ib->flow);
      }
      ++ia;
      ++ib;
    }
  }
  if (xs.size() < std::max<std::size_t>(min_overlap_days, 2)) {
    throw InsufficientData("insufficient overlap: " + std::to_string(xs.size()) +
                           " common days between " + a.station_id + " and " + b.station_id +
                           " (minimum " + std::to_string(min_overlap_days) + ")");
  }
  const std::size_t days = xs.size();
  return {PairedSample(std::move(xs), std::move(ys), a.station_id, b.station_id), days,
          std::move(years)};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  text = csv::trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  const auto y = digits(0, 4), m = digits(5, 2), d = digits(8, 2);
  if (!y || !m || !d) return std::nullopt;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)},
                           day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days(ymd);
}

std::string format_date(Date d) {
  const year_month_day ymd(d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::size_t StationRecord::observed_days() const {
  return static_cast<std::size_t>(
      std::count_if(series.begin(), series.end(), [](const DailyValue& v) { return v.flow; }));
}

LoadReport load_discharge(std::istream& in, const std::string& source) {
  read_header(in, source, {"station_id", "date", "flow_m3s"});
  LoadReport report;
  std::map<std::string, StationRecord> by_id;
  std::string line;
  std::size_t line_no = 1;
  auto warn = [&](const std::string& what) {
    report.warnings.push_back(source + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto fields = csv::split_line(line);
    if (fields.size() != 3) {
      warn("expected 3 fields, got " + std::to_string(fields.size()));
      continue;
    }
    const std::string id(csv::trim(fields[0]));
    if (id.empty()) {
      warn("empty station_id");
      continue;
    }
    const auto date = parse_date(fields[1]);
    if (!date) {
      warn("invalid date '" + fields[1] + "'");
      continue;
    }
    std::optional<double> flow;
    if (!csv::trim(fields[2]).empty()) {
      flow = csv::parse_double(fields[2]);
      if (!flow || !std::isfinite(*flow)) {
        warn("invalid flow '" + fields[2] + "'");
        continue;
      }
      if (*flow < 0.0) {
        warn("negative discharge " + fields[2] + " rejected");
        continue;
      }
    }
    auto& rec = by_id[id];
    rec.station_id = id;
    if (!rec.series.empty() && !(rec.series.back().date < *date)) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": non-monotone dates for station " +
                       id + " at " + format_date(*date));
    }
    rec.series.push_back({*date, flow});
  }
  for (auto& [id, rec] : by_id) report.records.push_back(std::move(rec));
  return report;
}

LoadReport load_discharge(const std::vector<std::filesystem::path>& paths) {
  LoadReport merged;
  std::map<std::string, StationRecord> by_id;
  for (const auto& p : paths) {
    auto in = open_or_throw(p);
    auto part = load_discharge(in, p.string());
    for (auto& rec : part.records) {
      if (by_id.count(rec.station_id)) {
        throw ParseError(p.string() + ": station " + rec.station_id +
                         " also appears in another discharge file");
      }
      by_id.emplace(rec.station_id, std::move(rec));
    }
    merged.warnings.insert(merged.warnings.end(), part.warnings.begin(), part.warnings.end());
  }
  for (auto& [id, rec] : by_id) merged.records.push_back(std::move(rec));
  return merged;
}

std::vector<StationMeta> load_station_metadata(std::istream& in, const std::string& source) {
  read_header(in, source, {"station_id", "basin_id", "name"});
  std::vector<StationMeta> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    if (f.size() < 2) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected station_id,basin_id,name");
    }
    StationMeta m{std::string(csv::trim(f[0])), std::string(csv::trim(f[1])),
                  f.size() > 2 ? std::string(csv::trim(f[2])) : std::string()};
    if (!seen.insert(m.station_id).second) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": duplicate station " + m.station_id);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<StationMeta> load_station_metadata(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return load_station_metadata(in, path.string());
}

std::vector<std::string> attach_metadata(std::vector<StationRecord>& records,
                                         const std::vector<StationMeta>& meta) {
  std::unordered_map<std::string, const StationMeta*> index;
  for (const auto& m : meta) index[m.station_id] = &m;
  std::vector<std::string> missing;
  for (auto& r : records) {
    auto it = index.find(r.station_id);
    if (it == index.end()) {
      missing.push_back(r.station_id);
      continue;
    }
    r.basin_id = it->second->basin_id;
    r.name = it->second->name;
  }
  return missing;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::DifferentBasin:
      return "diff_basin";
    case Relation::SameBasinUnconnected:
      return "same_basin_unconnected";
    case Relation::AUpstreamOfB:
      return "a_upstream_of_b";
    case Relation::BUpstreamOfA:
      return "b_upstream_of_a";
    case Relation::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<Relation> parse_relation(std::string_view text) {
  text = csv::trim(text);
  if (text == "diff_basin") return Relation::DifferentBasin;
  if (text == "same_basin_unconnected") return Relation::SameBasinUnconnected;
  if (text == "a_upstream_of_b") return Relation::AUpstreamOfB;
  if (text == "b_upstream_of_a") return Relation::BUpstreamOfA;
  return std::nullopt;
}

Relation flip(Relation r) {
  if (r == Relation::AUpstreamOfB) return Relation::BUpstreamOfA;
  if (r == Relation::BUpstreamOfA) return Relation::AUpstreamOfB;
  return r;
}

bool is_connected(Relation r) {
  return r == Relation::AUpstreamOfB || r == Relation::BUpstreamOfA;
}

void RelationTable::add(const std::string& a, const std::string& b, Relation r) {
  if (a == b) throw InvalidArgument("relation table: station " + a + " related to itself");
  const bool ordered = a < b;
  auto key = ordered ? std::make_pair(a, b) : std::make_pair(b, a);
  const Relation stored = ordered ? r : flip(r);
  auto [it, inserted] = table_.emplace(std::move(key), stored);
  if (!inserted && it->second != stored) {
    throw InvalidArgument("relation table: inconsistent relations for " + a + " and " + b);
  }
}

std::optional<Relation> RelationTable::lookup(const std::string& a, const std::string& b) const {
  const bool ordered = a < b;
  auto it = table_.find(ordered ? std::make_pair(a, b) : std::make_pair(b, a));
  if (it == table_.end()) return std::nullopt;
  return ordered ? it->second : flip(it->second);
}

RelationTable load_relations(std::istream& in, const std::string& source) {
  read_header(in, source, {"station_a", "station_b", "relation"});
  RelationTable table;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (f.size() != 3) throw ParseError(where + "expected station_a,station_b,relation");
    const auto rel = parse_relation(f[2]);
    if (!rel) throw ParseError(where + "unknown relation '" + f[2] + "'");
    try {
      table.add(std::string(csv::trim(f[0])), std::string(csv::trim(f[1])), *rel);
    } catch (const InvalidArgument& e) {
      throw ParseError(where + e.what());
    }
  }
  return table;
}

RelationTable load_relations(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return load_relations(in, path.string());
}

CommonPeriod pair_common_period(const StationRecord& a, const StationRecord& b,
                                std::size_t min_overlap_days) {
  if (a.series.empty() || b.series.empty()) {
    throw InsufficientData("insufficient overlap: station " +
                           (a.series.empty() ? a.station_id : b.station_id) + " has no records");
  }
  return common_period_impl(a, b, observed_years(a), observed_years(b), min_overlap_days);
}

std::string to_string(Arrow a) {
  switch (a) {
    case Arrow::AtoB:
      return "a_to_b";
    case Arrow::BtoA:
      return "b_to_a";
    case Arrow::None:
      return "none";
  }
  return "none";
}

Arrow derive_arrow(const TailTauPair& pair) {
  const double k = static_cast<double>(pair.k);
  const double quantum = k >= 2 ? 2.0 / (k * (k - 1) / 2.0) : 0.0;
  const double diff = pair.tau_xy - pair.tau_yx;
  // Slack absorbs rounding in differences that equal one quantum exactly.
  if (std::abs(diff) < quantum * (1.0 - 1e-9)) return Arrow::None;
  if (diff == 0.0) return Arrow::None;
  return diff < 0.0 ? Arrow::BtoA : Arrow::AtoB;
}

Arrow derive_arrow(const PairResult& result) { return derive_arrow(result.tau); }

PipelineResult analyze_all_pairs(const std::vector<StationRecord>& stations,
                                 const RelationTable& relations, const PipelineOptions& options) {
  if (stations.size() < 2) throw InvalidArgument("hydro pipeline needs at least two stations");
  std::vector<const StationRecord*> sorted;
  for (const auto& s : stations) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* l, auto* r) { return l->station_id < r->station_id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->station_id == sorted[i - 1]->station_id) {
      throw InvalidArgument("duplicate station " + sorted[i]->station_id);
    }
  }
  std::vector<std::vector<int>> years(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) years[i] = observed_years(*sorted[i]);

  const std::size_t m = sorted.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }

  std::vector<std::optional<PairResult>> results(pairs.size());
  std::vector<std::optional<PairError>> errors(pairs.size());
  detail::parallel_for(pairs.size(), options.threads, [&](std::size_t t) {
    const auto& a = *sorted[pairs[t].first];
    const auto& b = *sorted[pairs[t].second];
    try {
      PairResult r;
      r.station_a = a.station_id;
      r.station_b = b.station_id;
      if (auto rel = relations.lookup(a.station_id, b.station_id)) {
        r.relation = *rel;
      } else if (!a.basin_id.empty() && !b.basin_id.empty() && a.basin_id != b.basin_id) {
        r.relation = Relation::DifferentBasin;
      } else {
        r.relation = Relation::Unknown;
        r.warnings.push_back("relation_missing");
      }
      const auto period = common_period_impl(a, b, years[pairs[t].first], years[pairs[t].second],
                                             options.min_overlap_days);
      r.overlap_days = period.overlap_days;
      const auto spec = ThresholdSpec::from_q(options.q, period.sample.size());
      r.tau = tail_tau_pair(period.sample, spec);
      if (r.tau.tie_warning) r.warnings.push_back("threshold_ties");
      r.arrow = derive_arrow(r.tau);
      results[t] = std::move(r);
    } catch (const std::exception& e) {
      errors[t] = PairError{a.station_id, b.station_id, e.what()};
    }
  });

  PipelineResult out;
  out.attempted = pairs.size();
  for (auto& r : results) {
    if (r) out.results.push_back(std::move(*r));
  }
  for (auto& e : errors) {
    if (e) out.errors.push_back(std::move(*e));
  }
  return out;
}

std::string format_results_csv(const std::vector<PairResult>& results) {
  std::ostringstream os;
  os << "station_a,station_b,relation,overlap_days,q,k,tau_ab,tau_ba,asymmetry,max_tau,arrow,"
        "warnings\n";
  for (const auto& r : results) {
    std::string warnings;
    for (std::size_t i = 0; i < r.warnings.size(); ++i) {
      if (i) warnings += ';';
      warnings += r.warnings[i];
    }
    os << csv::escape(r.station_a) << ',' << csv::escape(r.station_b) << ','
       << to_string(r.relation) << ',' << r.overlap_days << ',' << csv::format_double(r.tau.q)
       << ',' << r.tau.k << ',' << csv::format_double(r.tau.tau_xy) << ','
       << csv::format_double(r.tau.tau_yx) << ',' << csv::format_double(r.tau.asymmetry) << ','
       << csv::format_double(r.tau.max_tau) << ',' << to_string(r.arrow) << ','
       << csv::escape(warnings) << '\n';
  }
  return os.str();
}

std::string format_errors_csv(const std::vector<PairError>& errors) {
  std::ostringstream os;
  os << "station_a,station_b,error\n";
  for (const auto& e : errors) {
    os << csv::escape(e.station_a) << ',' << csv::escape(e.station_b) << ','
       << csv::escape(e.message) << '\n';
  }
  return os.str();
}

std::string to_string(RelationGroup g) {
  switch (g) {
    case RelationGroup::DifferentBasin:
      return "different_basin";
    case RelationGroup::SameBasinUnconnected:
      return "same_basin_unconnected";
    case RelationGroup::Connected:
      return "connected";
    case RelationGroup::Unknown:
      return "unknown";
  }
  return "unknown";
}

RelationGroup group_of(Relation r) {
  switch (r) {
    case Relation::DifferentBasin:
      return RelationGroup::DifferentBasin;
    case Relation::SameBasinUnconnected:
      return RelationGroup::SameBasinUnconnected;
    case Relation::AUpstreamOfB:
    case Relation::BUpstreamOfA:
      return RelationGroup::Connected;
    case Relation::Unknown:
      return RelationGroup::Unknown;
  }
  return RelationGroup::Unknown;
}

GroupSummary group_summary(const std::vector<PairResult>& results) {
  if (results.empty()) throw InvalidArgument("group_summary: no results");
  std::map<RelationGroup, std::vector<double>> max_tau;
  GroupSummary out;
  std::size_t above = 0;
  for (const auto& r : results) {
    max_tau[group_of(r.relation)].push_back(r.tau.max_tau);
    if (r.relation == Relation::AUpstreamOfB) {
      out.connected.push_back({r.station_a, r.station_b, r.tau.tau_yx, r.tau.tau_xy});
    } else if (r.relation == Relation::BUpstreamOfA) {
      out.connected.push_back({r.station_b, r.station_a, r.tau.tau_xy, r.tau.tau_yx});
    }
  }
  for (const auto& [g, v] : max_tau) out.groups.push_back({g, v.size(), median(v)});
  for (const auto& c : out.connected) above += c.tau_down < c.tau_up;
  out.fraction_above_diagonal =
      out.connected.empty() ? 0.0
                            : static_cast<double>(above) / static_cast<double>(out.connected.size());
  return out;
}

std::string format_scatter_csv(const std::vector<PairResult>& results) {
  std::ostringstream os;
  os << "station_a,station_b,tau_ab,tau_ba,relation,group\n";
  for (const auto& r : results) {
    os << csv::escape(r.station_a) << ',' << csv::escape(r.station_b) << ','
       << csv::format_double(r.tau.tau_xy) << ',' << csv::format_double(r.tau.tau_yx) << ','
       << to_string(r.relation) << ',' << to_string(group_of(r.relation)) << '\n';
  }
  return os.str();
}

std::string format_groups_csv(const GroupSummary& summary) {
  std::ostringstream os;
  os << "group,count,median_max_tau\n";
  for (const auto& g : summary.groups) {
    os << to_string(g.group) << ',' << g.count << ',' << csv::format_double(g.median_max_tau)
       << '\n';
  }
  return os.str();
}

std::string format_connected_csv(const GroupSummary& summary) {
  std::ostringstream os;
  os << "upstream,downstream,tau_down,tau_up\n";
  for (const auto& c : summary.connected) {
    os << csv::escape(c.upstream) << ',' << csv::escape(c.downstream) << ','
       << csv::format_double(c.tau_down) << ',' << csv::format_double(c.tau_up) << '\n';
  }
  return os.str();
}

SyntheticRiverConfig SyntheticRiverConfig::five_station_fixture() {
  SyntheticRiverConfig c;
  c.stations = {
      {"A1", "A", {}, 1.0},
      {"A2", "A", {{0, 0.6}}, 0.4},
      {"A4", "A", {}, 1.0},
      {"A3", "A", {{1, 0.5}, {2, 0.3}}, 0.2},
      {"B1", "B", {}, 1.0},
  };
  return c;
}

SyntheticRiverConfig SyntheticRiverConfig::network(std::size_t basins, std::size_t per_basin) {
  SyntheticRiverConfig c;
  for (std::size_t b = 0; b < basins; ++b) {
    const std::string basin = "B" + std::to_string(b + 1);
    std::optional<std::size_t> previous_main;
    std::optional<std::size_t> pending_tributary;
    for (std::size_t j = 0; j < per_basin; ++j) {
      char id[32];
      std::snprintf(id, sizeof(id), "%s_%03zu", basin.c_str(), j + 1);
      SyntheticStation s{id, basin, {}, 1.0};
      if (j % 3 == 2) {
        pending_tributary = c.stations.size();
        c.stations.push_back(std::move(s));
        continue;
      }
      double used = 0.0;
      if (previous_main) {
        s.parents.emplace_back(*previous_main, 0.6);
        used += 0.6;
      }
      if (pending_tributary) {
        s.parents.emplace_back(*pending_tributary, 0.25);
        used += 0.25;
        pending_tributary.reset();
      }
      s.local_weight = 1.0 - used;
      previous_main = c.stations.size();
      c.stations.push_back(std::move(s));
    }
  }
  return c;
}

SyntheticRiver make_synthetic_river(const SyntheticRiverConfig& config, RngStream& rng,
                                    const std::vector<int>& record_span_years) {
  const auto& st = config.stations;
  const std::size_t m = st.size();
  if (m < 2) throw InvalidArgument("synthetic river needs at least two stations");
  if (config.years < 1) throw InvalidArgument("synthetic river needs at least one year");
  const double rest = 1.0 - config.national_share - config.basin_share;
  if (config.national_share < 0.0 || config.basin_share < 0.0 || rest < 0.0) {
    throw InvalidArgument("synthetic river: driver shares must be non-negative and sum to <= 1");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [p, w] : st[i].parents) {
      if (p >= i) throw InvalidArgument("synthetic river: parents must precede their children");
      if (st[p].basin_id != st[i].basin_id) {
        throw InvalidArgument("synthetic river: parent in another basin");
      }
    }
  }

  std::vector<std::string> basin_names;
  std::vector<std::size_t> basin_of(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto it = std::find(basin_names.begin(), basin_names.end(), st[i].basin_id);
    basin_of[i] = static_cast<std::size_t>(it - basin_names.begin());
    if (it == basin_names.end()) basin_names.push_back(st[i].basin_id);
  }

  // ancestors[i][j]: j flows into i.
  std::vector<std::vector<bool>> ancestor(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [p, w] : st[i].parents) {
      ancestor[i][p] = true;
      for (std::size_t j = 0; j < m; ++j) {
        if (ancestor[p][j]) ancestor[i][j] = true;
      }
    }
  }

  SyntheticRiver river;
  river.records.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    river.records[i].station_id = st[i].station_id;
    river.records[i].basin_id = st[i].basin_id;
    river.records[i].name = "Synthetic " + st[i].station_id;
    river.meta.push_back({st[i].station_id, st[i].basin_id, river.records[i].name});
  }
  const Date first = sys_days(year{config.first_year} / January / 1);
  const Date end = sys_days(year{config.first_year + config.years} / January / 1);
  std::vector<double> z(m), basin_driver(basin_names.size());
  for (Date d = first; d < end; d += days{1}) {
    const double national = rng.frechet();
    for (double& r : basin_driver) r = rng.frechet();
    for (std::size_t i = 0; i < m; ++i) {
      const double local = std::max({config.national_share * national,
                                     config.basin_share * basin_driver[basin_of[i]],
                                     rest * rng.frechet()});
      double v = st[i].local_weight * local;
      for (const auto& [p, w] : st[i].parents) v = std::max(v, w * z[p]);
      z[i] = v;
      river.records[i].series.push_back({d, config.flow_scale * v});
    }
  }
  for (std::size_t i = 0; i < m && i < record_span_years.size(); ++i) {
    const int span = record_span_years[i];
    if (span <= 0 || span >= config.years) continue;
    const Date cut = sys_days(year{config.first_year + config.years - span} / January / 1);
    auto& s = river.records[i].series;
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), [&](const DailyValue& v) {
              return !(v.date < cut);
            }));
  }

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Relation r;
      if (basin_of[i] != basin_of[j]) {
        r = Relation::DifferentBasin;
      } else if (ancestor[j][i]) {
        r = Relation::AUpstreamOfB;
      } else if (ancestor[i][j]) {
        r = Relation::BUpstreamOfA;
      } else {
        r = Relation::SameBasinUnconnected;
      }
      river.relations.add(st[i].station_id, st[j].station_id, r);
      river.relation_rows.emplace_back(st[i].station_id, st[j].station_id, r);
    }
  }
  std::sort(river.records.begin(), river.records.end(),
            [](const auto& l, const auto& r) { return l.station_id < r.station_id; });
  return river;
}

std::string format_discharge_csv(const std::vector<StationRecord>& records) {
  std::ostringstream os;
  os << "station_id,date,flow_m3s\n";
  for (const auto& r : records) {
    for (const auto& v : r.series) {
      os << csv::escape(r.station_id) << ',' << format_date(v.date) << ',';
      if (v.flow) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", *v.flow);
        os << buf;
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string format_station_csv(const std::vector<StationMeta>& meta) {
  std::ostringstream os;
  os << "station_id,basin_id,name\n";
  for (const auto& m : meta) {
    os << csv::escape(m.station_id) << ',' << csv::escape(m.basin_id) << ','
       << csv::escape(m.name) << '\n';
  }
  return os.str();
}

std::string format_relations_csv(
    const std::vector<std::tuple<std::string, std::string, Relation>>& rows) {
  std::ostringstream os;
  os << "station_a,station_b,relation\n";
  for (const auto& [a, b, r] : rows) {
    os << csv::escape(a) << ',' << csv::escape(b) << ',' << to_string(r) << '\n';
  }
  return os.str();
}

}  // namespace tailtau::hydro
