#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hybridbench/lp_core.hpp"

namespace hybridbench {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double capacity = 1.0;  // used by directed graphs only
};

/// Undirected graphs keep u < v; directed graphs store arcs u -> v.
struct Graph {
  std::size_t vertices = 0;
  bool directed = false;
  std::vector<Edge> edges;
  std::uint64_t seed = 0;
  double p = 0.0;
};

/// G(n, p): pairs (u, v), u < v, visited in lexicographic order, each kept when a
/// std::mt19937_64 draw (53-bit uniform) falls below p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Random directed graph: each ordered pair u != v becomes an arc with
/// probability p, integer capacity uniform in [cap_lo, cap_hi].
Graph random_digraph(std::size_t n, double p, std::uint64_t seed, int cap_lo = 1,
                     int cap_hi = 10);

bool valid_graph(const Graph& g);

/// min sum x_v s.t. x_u + x_v >= 1 per edge, 0 <= x <= 1.
LinearProgram lp_vertex_cover(const Graph& g);
/// max sum x_v s.t. x_u + x_v <= 1 per edge, 0 <= x <= 1.
LinearProgram lp_independent_set(const Graph& g);
/// max sum x_v s.t. x_u + x_v <= 1 per non-edge, 0 <= x <= 1.
LinearProgram lp_max_clique(const Graph& g);
/// max net flow into t. One variable per arc with 0 <= f_a <= cap_a (capacity
/// rows), conservation rows for every vertex except s, t and vertices without arcs.
LinearProgram lp_max_flow(const Graph& g, std::size_t s, std::size_t t);

enum class Family { VertexCover, IndependentSet, MaxClique, MaxFlow };
const char* to_string(Family f);
bool parse_family(const std::string& name, Family& out);

struct GeneratedInstance {
  std::string id;
  Family family;
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  LinearProgram lp;
};

GeneratedInstance generate(Family family, std::size_t n, double p, std::uint64_t seed);

/// Writes <dir>/<id>.mps and <dir>/<id>.json {family, n, p, seed}.
void write_instance(const GeneratedInstance& inst, const std::filesystem::path& dir);

/// Min s-t cut by enumerating all vertex subsets containing s but not t (n <= 20).
double brute_force_min_cut(const Graph& g, std::size_t s, std::size_t t);

}  // namespace hybridbench
