#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "geosoc/harness.hpp"

namespace geosoc {

namespace {

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

std::vector<Row> read_rows(const std::string& path, std::size_t arity) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::vector<Row> rows;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    Row r{no, {}};
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) r.fields.push_back(trim(f));
    if (r.fields.size() != arity)
      throw LoadError(path + ":" + std::to_string(no) + ": expected " + std::to_string(arity) + " fields, got " +
                      std::to_string(r.fields.size()));
    rows.push_back(std::move(r));
  }
  return rows;
}

long long parse_id(const std::string& s, const std::string& path, std::size_t line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw LoadError(path + ":" + std::to_string(line) + ": bad id '" + s + "'");
  return v;
}

double parse_coord(const std::string& s, const std::string& path, std::size_t line) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw LoadError(path + ":" + std::to_string(line) + ": bad coordinate '" + s + "'");
  return v;
}

struct Table {
  std::vector<long long> labels;
  std::vector<Location> locs;
};

Table read_points(const std::string& path) {
  std::map<long long, Location> pts;
  for (const auto& r : read_rows(path, 3)) {
    long long id = parse_id(r.fields[0], path, r.line);
    Location l{parse_coord(r.fields[1], path, r.line), parse_coord(r.fields[2], path, r.line)};
    if (!pts.emplace(id, l).second)
      throw LoadError(path + ":" + std::to_string(r.line) + ": duplicate id " + std::to_string(id));
  }
  Table t;
  for (auto& [id, l] : pts) {
    t.labels.push_back(id);
    t.locs.push_back(l);
  }
  return t;
}

}  // namespace

Instance load_dataset(const std::string& members_path, const std::string& edges_path,
                      const std::string& venues_path) {
  Table mem = read_points(members_path);
  Table ven = read_points(venues_path);
  std::map<long long, int> index;
  for (std::size_t i = 0; i < mem.labels.size(); ++i) index[mem.labels[i]] = static_cast<int>(i);

  Instance inst;
  std::set<std::pair<int, int>> directed;
  for (const auto& r : read_rows(edges_path, 2)) {
    int ends[2];
    for (int j = 0; j < 2; ++j) {
      long long id = parse_id(r.fields[j], edges_path, r.line);
      auto it = index.find(id);
      if (it == index.end())
        throw LoadError(edges_path + ":" + std::to_string(r.line) + ": vertex " + std::to_string(id) +
                        " has no coordinate row in " + members_path);
      ends[j] = it->second;
    }
    if (ends[0] == ends[1])
      throw LoadError(edges_path + ":" + std::to_string(r.line) + ": self-loop on vertex " + r.fields[0]);
    directed.emplace(ends[0], ends[1]);
  }
  std::vector<std::pair<int, int>> edges;
  std::size_t one_way = 0, both_ways = 0;
  for (auto [u, v] : directed) {
    const bool rev = directed.count({v, u}) != 0;
    if (rev) ++both_ways;
    else ++one_way;
    if (u < v || !rev) edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (both_ways > 0 && one_way > 0)
    inst.warnings.push_back("edge list is not symmetric: " + std::to_string(one_way) +
                            " pairs appear in one direction only; all edges treated as undirected");

  try {
    inst.graph = SocialGraph(mem.locs.size(), edges);
    inst.data = SpatialDataset(std::move(mem.locs), std::move(ven.locs), std::move(mem.labels), std::move(ven.labels));
  } catch (const std::exception& e) {
    throw LoadError(e.what());
  }
  inst.source = "files";
  return inst;
}

Instance generate_instance(const GeneratorParams& gp) {
  if (gp.n < 1) throw UsageError("--n must be at least 1");
  if (gp.q < 1) throw UsageError("--q must be at least 1");
  if (!(gp.edge_prob >= 0.0 && gp.edge_prob <= 1.0)) throw UsageError("--edge-prob must lie in [0, 1]");
  if (!(gp.box > 0.0) || !std::isfinite(gp.box)) throw UsageError("--box must be positive");
  if (gp.graph_model != "er" && gp.graph_model != "powerlaw") throw UsageError("--graph must be er or powerlaw");
  if (gp.graph_model == "powerlaw" && !(gp.power_exponent > 1.0)) throw UsageError("power-law exponent must exceed 1");

  std::mt19937_64 rng(gp.seed);
  std::uniform_real_distribution<double> coord(0.0, gp.box);
  std::vector<Location> members(gp.n), venues(gp.q);
  for (auto& l : members) l = {coord(rng), coord(rng)};
  for (auto& l : venues) l = {coord(rng), coord(rng)};

  SocialGraph g(gp.n);
  if (gp.graph_model == "er") {
    std::bernoulli_distribution coin(gp.edge_prob);
    for (int u = 0; u < gp.n; ++u)
      for (int v = u + 1; v < gp.n; ++v)
        if (coin(rng)) g.add_edge(u, v);
  } else {
    // configuration model: power-law stub counts, self-loops and repeats dropped
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<int> stubs;
    for (int v = 0; v < gp.n; ++v) {
      double x = std::pow(1.0 - unit(rng), -1.0 / (gp.power_exponent - 1.0));
      int deg = std::min(gp.n - 1, static_cast<int>(x));
      stubs.insert(stubs.end(), deg, v);
    }
    std::shuffle(stubs.begin(), stubs.end(), rng);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
      if (stubs[i] != stubs[i + 1]) g.add_edge(stubs[i], stubs[i + 1]);
  }

  Instance inst;
  inst.graph = std::move(g);
  inst.data = SpatialDataset(std::move(members), std::move(venues));
  inst.source = "generated";
  inst.seed = gp.seed;
  return inst;
}

}  // namespace geosoc
