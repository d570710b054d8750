#include "hybridbench/instance_gen.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <stdexcept>

#include "hybridbench/mps.hpp"
#include "hybridbench/simplex.hpp"

namespace hybridbench {
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

LinearProgram box_lp(std::size_t n, Sense sense, const std::string& name) {
  LinearProgram lp;
  lp.name = name;
  lp.sense = sense;
  lp.objective.assign(n, 1.0);
  lp.bounds.assign(n, VariableBounds{0.0, 1.0});
  for (std::size_t v = 0; v < n; ++v) lp.column_names.push_back("x" + std::to_string(v));
  return lp;
}

void add_pair_rows(LinearProgram& lp, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                   RowType type) {
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    t.push_back({r, pairs[r].first, 1.0});
    t.push_back({r, pairs[r].second, 1.0});
    lp.rhs.push_back(1.0);
    lp.row_types.push_back(type);
    lp.row_names.push_back("e" + std::to_string(pairs[r].first) + "_" +
                           std::to_string(pairs[r].second));
  }
  lp.matrix = SparseMatrix(pairs.size(), lp.objective.size(), std::move(t));
}

std::vector<std::pair<std::size_t, std::size_t>> edge_pairs(const Graph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Edge& e : g.edges) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must be in [0, 1]");
  Graph g;
  g.vertices = n;
  g.seed = seed;
  g.p = p;
  std::mt19937_64 rng(seed);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) g.edges.push_back({u, v, 1.0});
    }
  }
  return g;
}

Graph random_digraph(std::size_t n, double p, std::uint64_t seed, int cap_lo, int cap_hi) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("arc probability must be in [0, 1]");
  if (cap_lo < 1 || cap_hi < cap_lo) throw std::invalid_argument("capacity range must be >= 1");
  Graph g;
  g.vertices = n;
  g.directed = true;
  g.seed = seed;
  g.p = p;
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::size_t>(cap_hi - cap_lo + 1);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      if (uniform01(rng) < p) {
        const double cap = static_cast<double>(cap_lo) +
                           static_cast<double>(uniform_index(rng, span));
        g.edges.push_back({u, v, cap});
      }
    }
  }
  return g;
}

bool valid_graph(const Graph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : g.edges) {
    if (e.u == e.v || e.u >= g.vertices || e.v >= g.vertices) return false;
    if (!(e.capacity > 0.0)) return false;
    auto key = g.directed ? std::make_pair(e.u, e.v)
                          : std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
    if (!seen.insert(key).second) return false;
  }
  return true;
}

LinearProgram lp_vertex_cover(const Graph& g) {
  LinearProgram lp = box_lp(g.vertices, Sense::Minimize, "vertex_cover");
  add_pair_rows(lp, edge_pairs(g), RowType::GreaterEqual);
  return lp;
}

LinearProgram lp_independent_set(const Graph& g) {
  LinearProgram lp = box_lp(g.vertices, Sense::Maximize, "independent_set");
  add_pair_rows(lp, edge_pairs(g), RowType::LessEqual);
  return lp;
}

LinearProgram lp_max_clique(const Graph& g) {
  LinearProgram lp = box_lp(g.vertices, Sense::Maximize, "max_clique");
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const Edge& e : g.edges) edges.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  std::vector<std::pair<std::size_t, std::size_t>> non_edges;
  for (std::size_t u = 0; u < g.vertices; ++u) {
    for (std::size_t v = u + 1; v < g.vertices; ++v) {
      if (!edges.count({u, v})) non_edges.emplace_back(u, v);
    }
  }
  add_pair_rows(lp, non_edges, RowType::LessEqual);
  return lp;
}

LinearProgram lp_max_flow(const Graph& g, std::size_t s, std::size_t t) {
  if (s == t || s >= g.vertices || t >= g.vertices) {
    throw std::invalid_argument("max flow needs distinct source and sink in range");
  }
  LinearProgram lp;
  lp.name = "max_flow";
  lp.sense = Sense::Maximize;
  const std::size_t arcs = g.edges.size();
  lp.objective.assign(arcs, 0.0);
  lp.bounds.assign(arcs, VariableBounds{0.0, kInfinity});
  std::vector<std::size_t> degree(g.vertices, 0);
  for (std::size_t a = 0; a < arcs; ++a) {
    const Edge& e = g.edges[a];
    lp.column_names.push_back("f" + std::to_string(e.u) + "_" + std::to_string(e.v));
    if (e.v == t) lp.objective[a] += 1.0;
    if (e.u == t) lp.objective[a] -= 1.0;
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<Triplet> trips;
  std::size_t row = 0;
  // Conservation: inflow - outflow = 0.
  for (std::size_t v = 0; v < g.vertices; ++v) {
    if (v == s || v == t || degree[v] == 0) continue;
    for (std::size_t a = 0; a < arcs; ++a) {
      if (g.edges[a].v == v) trips.push_back({row, a, 1.0});
      if (g.edges[a].u == v) trips.push_back({row, a, -1.0});
    }
    lp.rhs.push_back(0.0);
    lp.row_types.push_back(RowType::Equal);
    lp.row_names.push_back("c" + std::to_string(v));
    ++row;
  }
  // Capacity rows.
  for (std::size_t a = 0; a < arcs; ++a) {
    trips.push_back({row, a, 1.0});
    lp.rhs.push_back(g.edges[a].capacity);
    lp.row_types.push_back(RowType::LessEqual);
    lp.row_names.push_back("u" + std::to_string(a));
    ++row;
  }
  lp.matrix = SparseMatrix(row, arcs, std::move(trips));
  return lp;
}

const char* to_string(Family f) {
  switch (f) {
    case Family::VertexCover: return "vertex_cover";
    case Family::IndependentSet: return "independent_set";
    case Family::MaxClique: return "max_clique";
    case Family::MaxFlow: return "max_flow";
  }
  return "?";
}

bool parse_family(const std::string& name, Family& out) {
  for (Family f : {Family::VertexCover, Family::IndependentSet, Family::MaxClique,
                   Family::MaxFlow}) {
    if (name == to_string(f)) {
      out = f;
      return true;
    }
  }
  return false;
}

GeneratedInstance generate(Family family, std::size_t n, double p, std::uint64_t seed) {
  GeneratedInstance inst;
  inst.family = family;
  inst.n = n;
  inst.p = p;
  inst.seed = seed;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s_n%zu_p%.3g_s%llu", to_string(family), n, p,
                static_cast<unsigned long long>(seed));
  inst.id = buf;
  switch (family) {
    case Family::VertexCover: inst.lp = lp_vertex_cover(erdos_renyi(n, p, seed)); break;
    case Family::IndependentSet: inst.lp = lp_independent_set(erdos_renyi(n, p, seed)); break;
    case Family::MaxClique: inst.lp = lp_max_clique(erdos_renyi(n, p, seed)); break;
    case Family::MaxFlow:
      if (n < 2) throw std::invalid_argument("max flow needs at least 2 vertices");
      inst.lp = lp_max_flow(random_digraph(n, p, seed), 0, n - 1);
      break;
  }
  inst.lp.name = inst.id;
  return inst;
}

void write_instance(const GeneratedInstance& inst, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / (inst.id + ".mps"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / (inst.id + ".mps")).string());
    out << write_mps(inst.lp);
  }
  nlohmann::ordered_json side;
  side["family"] = to_string(inst.family);
  side["n"] = inst.n;
  side["p"] = inst.p;
  side["seed"] = inst.seed;
  std::ofstream out(dir / (inst.id + ".json"), std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / (inst.id + ".json")).string());
  out << side.dump(2) << "\n";
}

double brute_force_min_cut(const Graph& g, std::size_t s, std::size_t t) {
  if (g.vertices > 20) throw std::invalid_argument("brute-force min cut limited to 20 vertices");
  double best = std::numeric_limits<double>::infinity();
  const std::size_t others = g.vertices;
  for (std::uint64_t mask = 0; mask < (1ULL << others); ++mask) {
    if (!(mask >> s & 1ULL) || (mask >> t & 1ULL)) continue;
    double cut = 0.0;
    for (const Edge& e : g.edges) {
      if ((mask >> e.u & 1ULL) && !(mask >> e.v & 1ULL)) cut += e.capacity;
    }
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace hybridbench
