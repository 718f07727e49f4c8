#include <iostream>

#include "CLI11.hpp"
#include "geosoc/harness.hpp"

using namespace geosoc;

int main(int argc, char** argv) {
  CLI::App app{"Geo-social group queries: pick p acquainted members and a venue minimizing total distance."};

  std::string members, edges, venues, algo = "mags-apdo", mode, prune = "all", export_path, algos;
  int p = 3, k = 1, seeds = 30;
  double t = 50.0;
  std::uint64_t seed = 0;
  std::vector<long long> venue_ids;
  GeneratorParams gen;
  MergeParams merge;
  bool bench_mode = false, check_oracle = false, deterministic = false, ablate = false, check_apdo = false;

  app.add_option("--members", members, "members CSV (id,x,y)");
  app.add_option("--edges", edges, "edges CSV (u,v)");
  app.add_option("--venues", venues, "venues CSV (id,x,y)");
  app.add_option("--algo", algo, "ssgs | ssgmerge | ssp | sfgp | mags-srdo | mags-apdo | oracle")->capture_default_str();
  auto* p_opt = app.add_option("--p", p, "group size")->capture_default_str();
  auto* k_opt = app.add_option("--k", k, "familiarity bound")->capture_default_str();
  auto* t_opt = app.add_option("--t", t, "radius")->capture_default_str();
  app.add_option("--mode", mode, "per-vertex | average (default depends on the algorithm)");
  app.add_option("--prune", prune, "comma list of rules: eq2,eq3,eq4,eq5,otdp,itdp,aldp; all; none; -rule")
      ->capture_default_str();
  app.add_option("--venue", venue_ids, "restrict the query to these venue ids (repeatable)");
  app.add_option("--seed", seed, "generator seed")->capture_default_str();
  app.add_option("--n", gen.n, "generated members")->capture_default_str();
  app.add_option("--q", gen.q, "generated venues")->capture_default_str();
  app.add_option("--edge-prob", gen.edge_prob, "edge probability (er graphs)")->capture_default_str();
  app.add_option("--graph", gen.graph_model, "er | powerlaw")->capture_default_str();
  app.add_option("--box", gen.box, "side of the coordinate box")->capture_default_str();
  app.add_option("--w", merge.w, "ssgmerge state budget")->capture_default_str();
  app.add_option("--lambda", merge.lambda, "ssgmerge queue capacity")->capture_default_str();
  app.add_option("--export-lp", export_path, "write the ILP model to this path instead of solving");
  app.add_flag("--bench", bench_mode, "emit benchmark CSV over generated instances");
  app.add_option("--seeds", seeds, "bench: number of seeds")->capture_default_str();
  app.add_option("--algos", algos, "bench: comma list of algorithms");
  app.add_flag("--ablate", ablate, "bench: add one row per disabled rule");
  app.add_flag("--check-oracle", check_oracle, "bench: compare against brute force");
  app.add_flag("--check-apdo", check_apdo, "verify every all-pair choice against a scan");
  app.add_flag("--deterministic", deterministic, "zero all timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const PruneConfig prune_cfg = parse_prune_list(prune);
    std::optional<FamiliarityMode> mode_cfg;
    if (!mode.empty()) mode_cfg = parse_mode(mode);

    if (bench_mode) {
      BenchConfig bc;
      bc.gen = gen;
      bc.gen.seed = seed;
      bc.seeds = seeds;
      if (!algos.empty()) {
        bc.algos.clear();
        std::stringstream ss(algos);
        std::string a;
        while (std::getline(ss, a, ','))
          if (!a.empty()) bc.algos.push_back(a);
      }
      if (p_opt->count()) bc.p = p;
      if (k_opt->count()) bc.k = k;
      if (t_opt->count()) bc.t = t;
      bc.mode = mode_cfg;
      bc.prune = prune_cfg;
      bc.ablate = ablate;
      bc.check_oracle = check_oracle;
      bc.deterministic = deterministic;
      bc.merge = merge;
      bench(bc, std::cout);
      return 0;
    }

    const bool any_file = !members.empty() || !edges.empty() || !venues.empty();
    if (any_file && (members.empty() || edges.empty() || venues.empty()))
      throw UsageError("--members, --edges and --venues must be given together");
    Instance inst;
    if (any_file) {
      inst = load_dataset(members, edges, venues);
    } else {
      gen.seed = seed;
      inst = generate_instance(gen);
    }
    for (const auto& w : inst.warnings) std::cerr << "warning: " << w << "\n";

    RunConfig rc;
    rc.algo = algo;
    rc.p = p;
    rc.k = k;
    rc.t = t;
    rc.mode = mode_cfg;
    rc.prune = prune_cfg;
    rc.venues = venue_ids;
    rc.merge = merge;
    rc.deterministic = deterministic;
    rc.check_apdo = check_apdo;

    if (!export_path.empty()) {
      std::cout << export_lp(rc, inst, export_path) << "\n";
      return 0;
    }
    const RunReport r = run_query(rc, inst);
    std::cout << report_json(r) << "\n";
    return exit_status(r);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
