#include <fstream>
#include <map>

#include "geosoc/harness.hpp"
#include "geosoc/ilp.hpp"
#include "geosoc/mrgq.hpp"
#include "geosoc/oracle.hpp"
#include "json.hpp"

namespace geosoc {

using ojson = nlohmann::ordered_json;

bool single_venue_algorithm(std::string_view algo) { return algo == "ssgs" || algo == "ssgmerge"; }

FamiliarityMode default_mode(std::string_view algo) {
  return single_venue_algorithm(algo) ? FamiliarityMode::Average : FamiliarityMode::PerVertex;
}

FamiliarityMode parse_mode(std::string_view s) {
  if (s == "per-vertex") return FamiliarityMode::PerVertex;
  if (s == "average") return FamiliarityMode::Average;
  throw UsageError("mode must be per-vertex or average, got '" + std::string(s) + "'");
}

std::string_view mode_name(FamiliarityMode m) { return m == FamiliarityMode::PerVertex ? "per-vertex" : "average"; }

PruneConfig parse_prune_list(std::string_view s) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) toks.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  bool only_positive = !toks.empty();
  for (const auto& t : toks)
    if (t == "all" || t == "none" || t[0] == '-') only_positive = false;
  PruneConfig c = only_positive ? PruneConfig::none() : PruneConfig::all();
  for (const auto& t : toks) {
    if (t == "all") {
      c = PruneConfig::all();
      continue;
    }
    if (t == "none") {
      c = PruneConfig::none();
      continue;
    }
    const bool off = t[0] == '-';
    auto r = parse_rule(off ? std::string_view(t).substr(1) : std::string_view(t));
    if (!r) throw UsageError("unknown pruning rule '" + t + "'");
    c.set(*r, !off);
  }
  return c;
}

std::vector<std::string> prune_names(const PruneConfig& c) {
  std::vector<std::string> out;
  for (Rule r : kAllRules)
    if (c.enabled(r)) out.emplace_back(rule_name(r));
  return out;
}

Query build_query(const RunConfig& cfg, const Instance& inst) {
  if (std::find(algorithm_names().begin(), algorithm_names().end(), cfg.algo) == algorithm_names().end())
    throw UsageError("unknown algorithm '" + cfg.algo + "'");
  const auto& d = inst.data;
  std::vector<int> venues;
  if (cfg.venues.empty()) {
    for (int j = 0; j < static_cast<int>(d.venue_count()); ++j) venues.push_back(j);
  } else {
    for (long long label : cfg.venues) {
      int found = -1;
      for (int j = 0; j < static_cast<int>(d.venue_count()); ++j)
        if (d.venue_label(j) == label) found = j;
      if (found < 0) throw UsageError("unknown venue id " + std::to_string(label));
      venues.push_back(found);
    }
  }
  if (venues.empty()) throw UsageError("instance has no venues");
  if (single_venue_algorithm(cfg.algo) && venues.size() != 1)
    throw UsageError(cfg.algo + " needs exactly one venue; select one with --venue");
  try {
    return Query(cfg.p, cfg.k, cfg.t, venues, cfg.mode.value_or(default_mode(cfg.algo)));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

RunReport run_query(const RunConfig& cfg, const Instance& inst) {
  const Query q = build_query(cfg, inst);
  const auto& g = inst.graph;
  const auto& d = inst.data;
  SearchOptions opt;
  opt.prune = cfg.prune;
  opt.check_apdo = cfg.check_apdo;
  SearchStats stats;
  opt.stats_out = &stats;

  std::optional<Solution> sol;
  if (cfg.algo == "ssgs") {
    sol = ssgs_solve(q, g, d, opt);
  } else if (cfg.algo == "ssgmerge") {
    sol = ssgmerge_solve(q, g, d, cfg.merge, opt);
  } else if (cfg.algo == "ssp") {
    sol = ssp_solve(q, g, d, opt);
  } else if (cfg.algo == "sfgp") {
    sol = sfgp_solve(q, g, d, opt);
  } else if (cfg.algo == "mags-srdo") {
    sol = mags_solve(q, g, d, MagsOrdering::Srdo, opt);
  } else if (cfg.algo == "mags-apdo") {
    sol = mags_solve(q, g, d, MagsOrdering::Apdo, opt);
  } else {
    {
      ScopedTimer timer(stats.elapsed_ms);
      auto res = brute_force(q, g, d);
      sol = res.best;
      stats.generated = res.combinations;
    }
    if (sol) sol->stats = stats;
  }

  RunReport r;
  r.algorithm = cfg.algo;
  r.p = q.p;
  r.k = q.k;
  r.t = q.t;
  r.mode = q.mode;
  for (int v : q.venues) r.venue_labels.push_back(d.venue_label(v));
  r.prune = cfg.prune;
  r.seed = inst.seed;
  r.source = inst.source;
  r.members = d.member_count();
  r.edges = g.edge_count();
  r.venues = d.venue_count();
  r.warnings = inst.warnings;
  r.stats = stats;
  if (cfg.deterministic) r.stats.elapsed_ms = 0.0;
  if (sol) {
    r.answer = true;
    for (int v : sol->group) r.group.push_back(d.member_label(v));
    std::sort(r.group.begin(), r.group.end());
    r.venue = d.venue_label(sol->venue);
    r.total_distance = sol->total_distance;
  }
  return r;
}

std::string report_json(const RunReport& r) {
  ojson j;
  j["schema"] = 1;
  j["algorithm"] = r.algorithm;
  j["query"] = {{"p", r.p}, {"k", r.k}, {"t", r.t}, {"mode", mode_name(r.mode)}, {"venues", r.venue_labels}};
  j["prune"] = prune_names(r.prune);
  j["seed"] = r.seed ? ojson(*r.seed) : ojson(nullptr);
  j["instance"] = {{"source", r.source}, {"members", r.members}, {"edges", r.edges}, {"venues", r.venues}};
  j["answer"] = r.answer;
  if (r.answer) {
    j["solution"] = {{"group", r.group}, {"venue", r.venue}, {"total_distance", r.total_distance}};
    j["total_distance"] = r.total_distance;
  } else {
    j["solution"] = nullptr;
    j["total_distance"] = nullptr;
  }
  ojson pruned;
  for (Rule rule : kAllRules) pruned[std::string(rule_name(rule))] = r.stats.pruned_by(rule);
  j["stats"] = {{"explored", r.stats.explored},
                {"generated", r.stats.generated},
                {"pruned", pruned},
                {"elapsed_ms", r.stats.elapsed_ms}};
  j["warnings"] = r.warnings;
  return j.dump(2);
}

std::string export_lp(const RunConfig& cfg, const Instance& inst, const std::string& path) {
  const Query q = build_query(cfg, inst);
  const bool single = single_venue_algorithm(cfg.algo);
  IlpModel m = single ? export_ssgq_model(q, inst.graph, inst.data) : export_mrgq_model(q, inst.graph, inst.data);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << m.to_lp();
  if (!out) throw std::runtime_error("write failed for " + path);
  ojson j;
  j["schema"] = 1;
  j["exported"] = path;
  j["model"] = single ? "ssgq" : "mrgq";
  j["variables"] = m.variables().size();
  j["constraints"] = m.constraints().size();
  return j.dump(2);
}

}  // namespace geosoc
