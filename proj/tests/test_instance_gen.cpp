#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "hybridbench/instance_gen.hpp"
#include "hybridbench/mps.hpp"
#include "hybridbench/simplex.hpp"
#include "support.hpp"

using namespace hybridbench;

TEST(ErdosRenyi, Extremes) {
  EXPECT_TRUE(erdos_renyi(10, 0.0, 1).edges.empty());
  const auto k4 = erdos_renyi(4, 1.0, 1);
  EXPECT_EQ(k4.edges.size(), 6u);
  EXPECT_TRUE(valid_graph(k4));
}

TEST(ErdosRenyi, BinomialEdgeCount) {
  const auto g = erdos_renyi(100, 0.1, 12345);
  const double mean = 4950 * 0.1, sd = std::sqrt(4950 * 0.1 * 0.9);
  EXPECT_LE(std::abs(static_cast<double>(g.edges.size()) - mean), 4 * sd);
  const auto again = erdos_renyi(100, 0.1, 12345);
  ASSERT_EQ(again.edges.size(), g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    EXPECT_EQ(g.edges[i].u, again.edges[i].u);
    EXPECT_EQ(g.edges[i].v, again.edges[i].v);
  }
}

TEST(Relaxations, Shapes) {
  const auto g = erdos_renyi(9, 0.4, 3);
  const auto vc = lp_vertex_cover(g);
  EXPECT_EQ(vc.num_rows(), g.edges.size());
  EXPECT_EQ(vc.num_cols(), 9u);
  EXPECT_EQ(vc.sense, Sense::Minimize);
  EXPECT_EQ(sparsity(vc.matrix).max_row_nnz, 2u);
  const auto is = lp_independent_set(g);
  EXPECT_EQ(is.sense, Sense::Maximize);
  // clique LP on G is the independent-set LP on the complement
  const auto mc = lp_max_clique(g);
  EXPECT_EQ(mc.num_rows() + is.num_rows(), 36u);
  for (const auto& lp : {vc, is, mc}) {
    for (const auto& b : lp.bounds) {
      EXPECT_EQ(b.lower, 0.0);
      EXPECT_EQ(b.upper, 1.0);
    }
  }
  // column nnz of the vertex-cover matrix is the vertex degree
  std::vector<std::size_t> deg(9, 0);
  for (const auto& e : g.edges) ++deg[e.u], ++deg[e.v];
  for (std::size_t v = 0; v < 9; ++v) EXPECT_EQ(vc.matrix.column_nnz(v), deg[v]);
}

TEST(Relaxations, EmptyGraphClique) {
  const auto lp = lp_max_clique(erdos_renyi(5, 0.0, 1));
  EXPECT_EQ(lp.num_rows(), 10u);
  const auto out = solve_lp(lp, {});
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_NEAR(out.objective, 2.5, 1e-9);
}

TEST(MaxFlow, SingleArcAndDiamond) {
  Graph arc;
  arc.vertices = 2;
  arc.directed = true;
  arc.edges = {{0, 1, 7}};
  EXPECT_NEAR(solve_lp(lp_max_flow(arc, 0, 1), {}).objective, 7.0, 1e-9);
  Graph diamond;
  diamond.vertices = 4;
  diamond.directed = true;
  diamond.edges = {{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1}};
  EXPECT_NEAR(solve_lp(lp_max_flow(diamond, 0, 3), {}).objective, 2.0, 1e-9);
  EXPECT_NEAR(brute_force_min_cut(diamond, 0, 3), 2.0, 1e-12);
}

TEST(MaxFlow, Unreachable) {
  Graph g;
  g.vertices = 3;
  g.directed = true;
  g.edges = {{1, 0, 4}, {2, 1, 3}};
  const auto out = solve_lp(lp_max_flow(g, 0, 2), {});
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_NEAR(out.objective, 0.0, 1e-12);
}

TEST(MaxFlow, MatchesMinCut) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto g = random_digraph(6, 0.4, seed);
    const auto out = solve_lp(lp_max_flow(g, 0, 5), {});
    ASSERT_EQ(out.status, SolveStatus::Optimal);
    EXPECT_NEAR(out.objective, brute_force_min_cut(g, 0, 5), 1e-8) << "seed " << seed;
  }
}

TEST(Generate, WritesMpsAndSidecar) {
  const auto dir = std::filesystem::temp_directory_path() / "hb_gen_test";
  std::filesystem::remove_all(dir);
  const auto inst = generate(Family::IndependentSet, 10, 0.3, 4);
  write_instance(inst, dir);
  const auto lp = to_lp(read_mps_file(dir / (inst.id + ".mps")));
  EXPECT_EQ(lp.num_rows(), inst.lp.num_rows());
  EXPECT_EQ(lp.num_cols(), 10u);
  const auto meta = nlohmann::json::parse(hbtest::slurp(dir / (inst.id + ".json")));
  EXPECT_EQ(meta["family"], "independent_set");
  EXPECT_EQ(meta["n"], 10);
  EXPECT_EQ(meta["seed"], 4);
  std::filesystem::remove_all(dir);
  Family f;
  EXPECT_TRUE(parse_family("max_flow", f));
  EXPECT_EQ(f, Family::MaxFlow);
  EXPECT_FALSE(parse_family("tsp", f));
}
