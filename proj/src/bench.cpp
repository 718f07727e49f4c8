#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>

#include "geosoc/harness.hpp"
#include "geosoc/oracle.hpp"

namespace geosoc {

namespace {

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct Cell {
  std::string label;
  PruneConfig prune;
};

}  // namespace

void bench(const BenchConfig& cfg, std::ostream& out) {
  if (cfg.seeds < 1) throw UsageError("--seeds must be at least 1");
  if (cfg.algos.empty()) throw UsageError("no algorithms selected");
  for (const auto& a : cfg.algos)
    if (std::find(algorithm_names().begin(), algorithm_names().end(), a) == algorithm_names().end())
      throw UsageError("unknown algorithm '" + a + "'");
  if (cfg.p && (*cfg.p < 1 || *cfg.p > cfg.gen.n)) throw UsageError("--p must lie in [1, n]");

  std::vector<Cell> cells{{"base", cfg.prune}};
  if (cfg.ablate)
    for (Rule r : kAllRules)
      if (cfg.prune.enabled(r)) cells.push_back({"no-" + std::string(rule_name(r)), cfg.prune.without(r)});

  out << "seed,n,q,graph,edge_prob,p,k,t,mode,algo,prune,answer,distance,explored,generated,time_ms";
  if (cfg.check_oracle) out << ",oracle_distance,matches_oracle,optimality_ratio";
  out << "\n";

  std::map<std::string, std::vector<double>> ratios;
  for (int s = 0; s < cfg.seeds; ++s) {
    GeneratorParams gp = cfg.gen;
    gp.seed = cfg.gen.seed + static_cast<std::uint64_t>(s);
    const Instance inst = generate_instance(gp);
    std::mt19937_64 rng(gp.seed * 0x9E3779B97F4A7C15ULL + 1);
    const int p = cfg.p.value_or(std::min(gp.n, std::uniform_int_distribution<int>(3, 6)(rng)));
    const int k = cfg.k.value_or(std::uniform_int_distribution<int>(0, p - 1)(rng));
    const double t = cfg.t.value_or(std::uniform_real_distribution<double>(0.15, 0.7)(rng) * gp.box);

    std::map<std::pair<bool, FamiliarityMode>, std::optional<double>> oracle_cache;
    for (const auto& algo : cfg.algos) {
      RunConfig rc;
      rc.algo = algo;
      rc.p = p;
      rc.k = k;
      rc.t = t;
      rc.mode = cfg.mode.value_or(default_mode(algo));
      rc.merge = cfg.merge;
      rc.deterministic = cfg.deterministic;
      const bool single = single_venue_algorithm(algo);
      if (single) rc.venues = {inst.data.venue_label(0)};

      std::optional<double> oracle;
      if (cfg.check_oracle) {
        auto key = std::make_pair(single, *rc.mode);
        auto it = oracle_cache.find(key);
        if (it == oracle_cache.end()) {
          auto res = brute_force(build_query(rc, inst), inst.graph, inst.data);
          it = oracle_cache.emplace(key, res.best ? std::optional<double>(res.best->total_distance) : std::nullopt)
                   .first;
        }
        oracle = it->second;
      }

      const bool prunes = algo != "oracle";
      for (const auto& cell : cells) {
        if (!prunes && cell.label != "base") continue;
        rc.prune = cell.prune;
        const RunReport r = run_query(rc, inst);
        out << gp.seed << ',' << gp.n << ',' << gp.q << ',' << gp.graph_model << ',' << fmt(gp.edge_prob) << ','
            << p << ',' << k << ',' << fmt(t) << ',' << mode_name(*rc.mode) << ',' << algo << ',' << cell.label
            << ',' << (r.answer ? "true" : "false") << ',' << (r.answer ? fmt(r.total_distance) : "") << ','
            << r.stats.explored << ',' << r.stats.generated << ','
            << fmt(cfg.deterministic ? 0.0 : r.stats.elapsed_ms, "%.3f");
        if (cfg.check_oracle) {
          const bool match = r.answer == oracle.has_value() &&
                             (!r.answer || std::abs(r.total_distance - *oracle) <= 1e-9);
          std::string ratio;
          if (r.answer && oracle) {
            const double q = *oracle > 0.0 ? r.total_distance / *oracle : (r.total_distance == 0.0 ? 1.0 : kInf);
            ratio = fmt(q);
            if (cell.label == "base") ratios[algo].push_back(q);
          }
          out << ',' << (oracle ? fmt(*oracle) : "") << ',' << (match ? "true" : "false") << ',' << ratio;
        }
        out << "\n";
      }
    }
  }
  if (cfg.check_oracle) {
    for (const auto& algo : cfg.algos) {
      auto& v = ratios[algo];
      if (v.empty()) continue;
      std::sort(v.begin(), v.end());
      const std::size_t n = v.size();
      const double med = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
      out << "# median_optimality_ratio[" << algo << "]=" << fmt(med) << "\n";
    }
  }
}

}  // namespace geosoc
