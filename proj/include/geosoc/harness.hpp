#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geosoc/core.hpp"
#include "geosoc/ssgq.hpp"

namespace geosoc {

// Bad flags or parameter combinations; the CLI maps these to exit status 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  SocialGraph graph;
  SpatialDataset data;
  std::vector<std::string> warnings;
  std::string source;  // "files" or "generated"
  std::optional<std::uint64_t> seed;
};

// Headerless CSV: members "id,x,y", edges "u,v", venues "id,x,y". Members are
// indexed internally in ascending id order.
Instance load_dataset(const std::string& members_path, const std::string& edges_path, const std::string& venues_path);

struct GeneratorParams {
  int n = 12;
  int q = 3;
  double edge_prob = 0.5;
  std::string graph_model = "er";  // "er" or "powerlaw"
  double power_exponent = 2.5;
  double box = 100.0;
  std::uint64_t seed = 0;
};

Instance generate_instance(const GeneratorParams& gp);

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"ssgs", "ssgmerge", "ssp", "sfgp", "mags-srdo", "mags-apdo", "oracle"};
  return names;
}
bool single_venue_algorithm(std::string_view algo);
FamiliarityMode default_mode(std::string_view algo);
FamiliarityMode parse_mode(std::string_view s);
std::string_view mode_name(FamiliarityMode m);
// Comma list of rule names; "all"/"none" reset, "-rule" disables. A list of only
// positive names enables exactly those.
PruneConfig parse_prune_list(std::string_view s);
std::vector<std::string> prune_names(const PruneConfig& c);

struct RunConfig {
  std::string algo = "mags-apdo";
  int p = 3;
  int k = 1;
  double t = 50.0;
  std::optional<FamiliarityMode> mode;
  PruneConfig prune = PruneConfig::all();
  std::vector<long long> venues;  // venue ids to use; empty means all
  MergeParams merge;
  bool deterministic = false;
  bool check_apdo = false;
};

struct RunReport {
  std::string algorithm;
  int p = 0, k = 0;
  double t = 0.0;
  FamiliarityMode mode = FamiliarityMode::PerVertex;
  std::vector<long long> venue_labels;
  PruneConfig prune;
  std::optional<std::uint64_t> seed;
  std::string source;
  std::size_t members = 0, edges = 0, venues = 0;
  bool answer = false;
  std::vector<long long> group;
  long long venue = 0;
  double total_distance = 0.0;
  SearchStats stats;
  std::vector<std::string> warnings;
};

Query build_query(const RunConfig& cfg, const Instance& inst);
RunReport run_query(const RunConfig& cfg, const Instance& inst);
std::string report_json(const RunReport& r);
inline int exit_status(const RunReport& r) { return r.answer ? 0 : 2; }

// Writes the single-venue model for ssgs/ssgmerge, the venue-set model otherwise.
// Returns a small JSON summary.
std::string export_lp(const RunConfig& cfg, const Instance& inst, const std::string& path);

struct BenchConfig {
  GeneratorParams gen;
  int seeds = 30;
  std::vector<std::string> algos = {"ssgs", "ssgmerge", "ssp", "sfgp", "mags-srdo", "mags-apdo"};
  std::optional<int> p, k;
  std::optional<double> t;
  std::optional<FamiliarityMode> mode;
  PruneConfig prune = PruneConfig::all();
  bool ablate = false;  // add one row per single-rule-disabled config
  bool check_oracle = false;
  bool deterministic = false;
  MergeParams merge;
};

void bench(const BenchConfig& cfg, std::ostream& out);

}  // namespace geosoc
