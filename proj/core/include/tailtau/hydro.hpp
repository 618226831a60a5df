#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tailtau/rng.hpp"
#include "tailtau/sample.hpp"
#include "tailtau/tail_dependence.hpp"

namespace tailtau::hydro {

using Date = std::chrono::sys_days;

/// Parses YYYY-MM-DD; nullopt on any deviation or an invalid calendar date.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

struct DailyValue {
  Date date;
  std::optional<double> flow;  // m3/s; nullopt marks a gap
};

struct StationRecord {
  std::string station_id;
  std::string basin_id;
  std::string name;
  std::vector<DailyValue> series;  // strictly increasing dates

  std::size_t observed_days() const;
};

struct LoadReport {
  std::vector<StationRecord> records;  // sorted by station_id
  std::vector<std::string> warnings;   // "<source>:<line>: <reason>"
};

/// Discharge CSV with header `station_id,date,flow_m3s`. Empty flow is a gap.
/// Malformed or negative rows are skipped with a warning; a repeated or
/// decreasing date within a station is an error.
LoadReport load_discharge(std::istream& in, const std::string& source = "<stream>");
LoadReport load_discharge(const std::vector<std::filesystem::path>& paths);

struct StationMeta {
  std::string station_id;
  std::string basin_id;
  std::string name;
};

/// Station metadata CSV with header `station_id,basin_id,name`.
std::vector<StationMeta> load_station_metadata(std::istream& in,
                                               const std::string& source = "<stream>");
std::vector<StationMeta> load_station_metadata(const std::filesystem::path& path);

/// Fills basin_id and name of records from metadata. Records without
/// metadata are kept with empty basin ids and reported in the return value.
std::vector<std::string> attach_metadata(std::vector<StationRecord>& records,
                                         const std::vector<StationMeta>& meta);

/// Hydraulic relation of station a relative to station b.
enum class Relation {
  DifferentBasin,
  SameBasinUnconnected,
  AUpstreamOfB,
  BUpstreamOfA,
  Unknown,
};

std::string to_string(Relation r);  // diff_basin, same_basin_unconnected, ...
std::optional<Relation> parse_relation(std::string_view text);
/// Relation of (b, a) given the relation of (a, b).
Relation flip(Relation r);
bool is_connected(Relation r);

class RelationTable {
 public:
  /// Throws InvalidArgument when (a, b) or (b, a) is already present with an
  /// inconsistent relation.
  void add(const std::string& a, const std::string& b, Relation r);
  /// Relation of a relative to b, or nullopt when the pair is not listed.
  std::optional<Relation> lookup(const std::string& a, const std::string& b) const;
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, Relation> table_;  // key: (min, max) ids
};

/// Relation CSV with header `station_a,station_b,relation`.
RelationTable load_relations(std::istream& in, const std::string& source = "<stream>");
RelationTable load_relations(const std::filesystem::path& path);

struct CommonPeriod {
  PairedSample sample;        // x from station a, y from station b
  std::size_t overlap_days;   // == sample.size()
  std::vector<int> years;     // calendar years observed at both stations
};

/// Days observed at both stations within the calendar years in which both
/// stations have observations. Throws InsufficientData("insufficient overlap")
/// below `min_overlap_days`.
CommonPeriod pair_common_period(const StationRecord& a, const StationRecord& b,
                                std::size_t min_overlap_days = 1095);

enum class Arrow {
  AtoB,  // a is upstream of b
  BtoA,
  None,
};

std::string to_string(Arrow a);  // a_to_b, b_to_a, none

/// Arrow from Y to X iff tau_xy < tau_yx (X = station a). Differences below
/// one estimator quantum, 2 / C(k,2), give no arrow.
Arrow derive_arrow(const TailTauPair& pair);

struct PairResult {
  std::string station_a;
  std::string station_b;
  Relation relation = Relation::Unknown;
  std::size_t overlap_days = 0;
  TailTauPair tau;
  Arrow arrow = Arrow::None;
  std::vector<std::string> warnings;
};

Arrow derive_arrow(const PairResult& result);

struct PairError {
  std::string station_a;
  std::string station_b;
  std::string message;
};

struct PipelineOptions {
  double q = 0.98;
  std::size_t min_overlap_days = 1095;
  std::size_t threads = 0;
};

struct PipelineResult {
  std::vector<PairResult> results;  // ordered by (station_a, station_b)
  std::vector<PairError> errors;
  std::size_t attempted = 0;        // C(#stations, 2)
};

/// Every unordered station pair, a < b by station id. Pairs missing from the
/// relation table are classed diff_basin when both basin ids are known and
/// differ, otherwise unknown (with a warning). Per-pair failures are collected
/// in `errors` and never abort the run.
PipelineResult analyze_all_pairs(const std::vector<StationRecord>& stations,
                                 const RelationTable& relations, const PipelineOptions& options);

/// Header: station_a,station_b,relation,overlap_days,q,k,tau_ab,tau_ba,
/// asymmetry,max_tau,arrow,warnings (warnings joined with ';').
std::string format_results_csv(const std::vector<PairResult>& results);
std::string format_errors_csv(const std::vector<PairError>& errors);

enum class RelationGroup { DifferentBasin, SameBasinUnconnected, Connected, Unknown };
std::string to_string(RelationGroup g);
RelationGroup group_of(Relation r);

struct GroupStats {
  RelationGroup group = RelationGroup::Unknown;
  std::size_t count = 0;
  double median_max_tau = 0.0;
};

/// A connected pair oriented upstream -> downstream.
struct ConnectedPoint {
  std::string upstream;
  std::string downstream;
  double tau_down = 0.0;  // conditioned on the downstream station
  double tau_up = 0.0;    // conditioned on the upstream station
};

struct GroupSummary {
  std::vector<GroupStats> groups;         // only groups that occur, in enum order
  std::vector<ConnectedPoint> connected;
  double fraction_above_diagonal = 0.0;   // share of connected with tau_down < tau_up
};

GroupSummary group_summary(const std::vector<PairResult>& results);

/// tau_ab,tau_ba,relation rows for scatter plots.
std::string format_scatter_csv(const std::vector<PairResult>& results);
std::string format_groups_csv(const GroupSummary& summary);
std::string format_connected_csv(const GroupSummary& summary);

/// Synthetic river network with known topology for validation.
///
/// Each station's daily value is max over its parents p of w_p * Z_p and
/// w_local * L, where L = max(c_nat * N, c_basin * R_basin, rest * eta) mixes
/// a national driver, a basin driver and station noise (all standard Frechet).
struct SyntheticStation {
  std::string station_id;
  std::string basin_id;
  std::vector<std::pair<std::size_t, double>> parents;  // (index, weight), parents first
  double local_weight = 1.0;
};

struct SyntheticRiverConfig {
  std::vector<SyntheticStation> stations;
  int first_year = 1981;
  int years = 30;
  double national_share = 0.05;
  double basin_share = 0.25;
  double flow_scale = 10.0;

  /// Five stations: basin A has the main stem A1 -> A2 -> A3 and tributary
  /// A4 joining at A3; basin B holds the single station B1.
  static SyntheticRiverConfig five_station_fixture();
  /// `basins` basins with `per_basin` stations each, main stem chains with
  /// every third station a tributary.
  static SyntheticRiverConfig network(std::size_t basins, std::size_t per_basin);
};

struct SyntheticRiver {
  std::vector<StationRecord> records;
  std::vector<StationMeta> meta;
  RelationTable relations;
  std::vector<std::tuple<std::string, std::string, Relation>> relation_rows;
};

/// `record_span_years[i]`, when given, truncates station i's record to its
/// last that many years.
SyntheticRiver make_synthetic_river(const SyntheticRiverConfig& config, RngStream& rng,
                                    const std::vector<int>& record_span_years = {});

std::string format_discharge_csv(const std::vector<StationRecord>& records);
std::string format_station_csv(const std::vector<StationMeta>& meta);
std::string format_relations_csv(
    const std::vector<std::tuple<std::string, std::string, Relation>>& rows);

}  // namespace tailtau::hydro
