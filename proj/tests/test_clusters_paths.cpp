#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "cyclepart/clusters.hpp"
#include "cyclepart/generators.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/pairpaths.hpp"
#include "cyclepart/rng.hpp"

using namespace cyclepart;

namespace {

// Dense two-colour blow-up on four clusters: (1,2) and (3,4) in colour 1,
// (2,3) and (1,4) in colour 2.
ColouredGraph four_cluster_host(long long w, double density, uint64_t seed) {
  std::vector<BlowupPair> pairs{
      {1, 2, 1, density}, {3, 4, 1, density}, {2, 3, 2, density},
      {1, 4, 2, density}};
  return blowup_host(4, w, 2, pairs, seed);
}

struct TempPath {
  std::string path;
  explicit TempPath(const std::string& p) : path(p) {}
  ~TempPath() { std::remove(path.c_str()); }
};

bool is_path_in(const Graph& g, const std::vector<int>& p) {
  std::set<int> seen(p.begin(), p.end());
  if (seen.size() != p.size()) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.has_edge(p[i], p[i + 1])) return false;
  return true;
}

}  // namespace

TEST_CASE("partition finalize fills masks and rejects malformed input") {
  ColouredGraph g = four_cluster_host(50, 1.0, 1);
  ClusterPartition cp = make_partition(g, consecutive_clusters(4, 50), {},
                                       Frac::parse("0.05"), Frac::parse("0.8"));
  CHECK(cp.m() == 4);
  CHECK(cp.cluster_size() == 50);
  CHECK(cp.mask(0).none());
  CHECK(cp.mask(2).count() == 50);
  CHECK(cp.cluster_of[0] == 1);
  CHECK(cp.cluster_of[199] == 4);
  CHECK(cp.sizes_within_eps() == false);  // 50 > 0.05 * 200

  ClusterPartition overlap;
  overlap.host = &g;
  overlap.clusters = {{0, 1}, {1, 2}};
  overlap.eps = Frac::parse("0.05");
  overlap.d = Frac::parse("0.8");
  CHECK_THROWS(overlap.finalize());

  ClusterPartition uneven;
  uneven.host = &g;
  uneven.clusters = {{0, 1}, {2}};
  uneven.eps = Frac::parse("0.05");
  uneven.d = Frac::parse("0.8");
  CHECK_THROWS(uneven.finalize());

  ClusterPartition gap;  // vertex 3 unclaimed
  gap.host = &g;
  gap.clusters = {{0, 1}, {2, 4}};
  gap.eps = Frac::parse("0.05");
  gap.d = Frac::parse("0.8");
  CHECK_THROWS(gap.finalize());
}

TEST_CASE("partition json round-trip") {
  ColouredGraph g = four_cluster_host(10, 1.0, 2);
  std::vector<std::vector<int>> clusters = consecutive_clusters(4, 9);
  std::vector<int> v0{36, 37, 38, 39};
  ClusterPartition cp = make_partition(g, clusters, v0, Frac::parse("1/7"),
                                       Frac::parse("0.8"));
  TempPath tmp("/tmp/cp_roundtrip_test.json");
  write_cluster_partition(tmp.path, cp);
  ClusterPartition back = read_cluster_partition(tmp.path, g);
  CHECK(back.m() == 4);
  CHECK(back.v0 == v0);
  CHECK(back.clusters == clusters);
  CHECK(cmp(back.eps, Frac::parse("1/7")) == 0);
  CHECK(cmp(back.d, Frac::parse("0.8")) == 0);
  CHECK_THROWS(read_cluster_partition("/tmp/definitely-missing.json", g));
}

TEST_CASE("pair density is exact") {
  // 3 of 4 possible edges across two 2-clusters.
  ColouredGraph g(4, 1, {{0, 2, 1}, {0, 3, 1}, {1, 2, 1}});
  std::vector<int> u{0, 1};
  DynBitset wmask = DynBitset::from_vector(4, {2, 3});
  CHECK(cmp(pair_density(g, u, wmask, 2, 1), Frac::ratio(3, 4)) == 0);
  CHECK(cmp(pair_density(g, u, wmask, 2, 0), Frac::ratio(3, 4)) == 0);
}

TEST_CASE("reduced graph keeps dense pairs and prefers the lowest colour") {
  ColouredGraph g = four_cluster_host(40, 1.0, 3);
  ClusterPartition cp = make_partition(g, consecutive_clusters(4, 40), {},
                                       Frac::parse("0.05"), Frac::parse("0.8"));
  ReducedGraph rg = build_reduced(cp);
  CHECK(rg.m == 4);
  CHECK(rg.edge_colour(1, 2) == 1);
  CHECK(rg.edge_colour(3, 4) == 1);
  CHECK(rg.edge_colour(2, 3) == 2);
  CHECK(rg.edge_colour(1, 4) == 2);
  CHECK(rg.edge_colour(1, 3) == 0);
  CHECK(rg.deg(1) == 2);
  CHECK(rg.edges().size() == 4);
  CHECK(cmp(rg.density[1][2], Frac(1)) == 0);
  Graph skel = rg.skeleton();
  CHECK(skel.n() == 4);
  CHECK(skel.num_edges() == 4);  // a 4-cycle over the clusters
  ColouredGraph col = rg.coloured(2);
  CHECK(col.colour_of(0, 1) == 1);
  CHECK(col.colour_of(1, 2) == 2);

  // Same pair dense in both colours: the lower colour id wins.
  long long w = 30;
  std::vector<ColouredGraph::Edge> edges;
  Rng rng(9);
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b)
      edges.push_back({a, static_cast<int>(w) + b, rng.bernoulli(0.5) ? 1 : 2});
  ColouredGraph both(2 * w, 2, edges);
  ClusterPartition cp2 = make_partition(both, consecutive_clusters(2, w), {},
                                        Frac::parse("0.05"), Frac::parse("0.3"));
  ReducedGraph rg2 = build_reduced(cp2);
  CHECK(rg2.edge_colour(1, 2) == 1);
}

TEST_CASE("regularity refuter finds a planted irregular pair") {
  // Left half of V1 fully joined to W, right half empty: density 1/2 but a
  // half-sized witness pair has density 1.
  long long w = 40;
  std::vector<ColouredGraph::Edge> edges;
  for (int a = 0; a < w / 2; ++a)
    for (int b = 0; b < w; ++b) edges.push_back({a, static_cast<int>(w) + b, 1});
  ColouredGraph g(2 * w, 1, edges);
  std::vector<int> u, vv;
  for (int i = 0; i < w; ++i) u.push_back(i), vv.push_back(static_cast<int>(w) + i);
  RefuterResult res =
      eps_regular_refuter(g, u, vv, Frac::parse("0.1"), 1, 100, 5);
  CHECK(res.refuted);
  CHECK(!res.x.empty());
  CHECK(cmp(res.pair_density, Frac::ratio(1, 2)) == 0);

  // A genuinely uniform pair survives the same number of samples.
  Rng rng(17);
  std::vector<ColouredGraph::Edge> uni;
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b)
      if (rng.bernoulli(0.5)) uni.push_back({a, static_cast<int>(w) + b, 1});
  ColouredGraph gu(2 * w, 1, uni);
  CHECK_FALSE(eps_regular_refuter(gu, u, vv, Frac::parse("0.2"), 1, 100, 5)
                  .refuted);
}

TEST_CASE("typical vertices see the pair density") {
  // Vertex 0 sees all of V2, vertex 1 sees nothing.
  long long w = 20;
  std::vector<ColouredGraph::Edge> edges;
  for (int a = 0; a < w; ++a)
    if (a != 1)
      for (int b = 0; b < w; ++b)
        edges.push_back({a, static_cast<int>(w) + b, 1});
  ColouredGraph g(2 * w, 1, edges);
  ClusterPartition cp = make_partition(g, consecutive_clusters(2, w), {},
                                       Frac::parse("0.1"), Frac::parse("0.5"));
  DynBitset typ = typical_vertices(cp, 1, 2, 1);
  CHECK(typ.test(0));
  CHECK_FALSE(typ.test(1));
  CHECK(typ.count() == static_cast<std::size_t>(w - 1));
  CHECK(is_typical(cp, 0, 1, 2, 1));
  CHECK_FALSE(is_typical(cp, 1, 1, 2, 1));
}

TEST_CASE("inheritance checks hold on a clean blow-up") {
  ColouredGraph g = four_cluster_host(60, 0.95, 21);
  ClusterPartition cp = make_partition(g, consecutive_clusters(4, 60), {},
                                       Frac::parse("0.05"), Frac::parse("0.8"));
  ReducedGraph rg = build_reduced(cp);
  InheritanceReport rep = reduced_inheritance_checks(cp, rg, 20, 4);
  CHECK(rep.ok);
  for (const auto& row : rep.rows) CHECK(row.satisfied);
}

TEST_CASE("pair path search spans dense pairs") {
  ColouredGraph g = four_cluster_host(30, 0.9, 5);
  Graph mono = g.mono_subgraph(1);
  ClusterPartition cp = make_partition(g, consecutive_clusters(4, 30), {},
                                       Frac::parse("0.05"), Frac::parse("0.8"));
  std::string why;
  auto path = pair_even_path(mono, cp.mask(1), cp.mask(2), 50, 3, &why);
  REQUIRE(path.has_value());
  CHECK(path->size() >= 50);
  CHECK(path->size() % 2 == 0);
  CHECK(is_path_in(mono, *path));

  auto cyc = pair_spanning_cycle(mono, cp.mask(1), cp.mask(2), 3, &why);
  REQUIRE(cyc.has_value());
  CHECK(cyc->size() == 60);
  CHECK(is_path_in(mono, *cyc));
  CHECK(mono.has_edge(cyc->front(), cyc->back()));
  // alternates between the sides
  for (std::size_t i = 0; i < cyc->size(); ++i)
    CHECK(cp.mask(1 + (i + (cp.mask(2).test((*cyc)[0]) ? 1 : 0)) % 2)
              .test((*cyc)[i]));
}

TEST_CASE("exact-order path between fixed endpoints") {
  ColouredGraph g = four_cluster_host(120, 0.95, 6);
  Graph mono = g.mono_subgraph(1);
  ClusterPartition cp = make_partition(g, consecutive_clusters(4, 120), {},
                                       Frac::parse("1/30"), Frac::parse("0.8"));
  int v1 = 0, v2 = 125;  // v1 in V1, v2 in V2; the path alternates sides
  DynBitset u1 = cp.mask(1), u2 = cp.mask(2);
  for (int k : {2, 5, 11}) {
    PathResult res = path_in_pair(mono, cp.mask(1), cp.mask(2), v1, v2, u1, u2,
                                  k, Frac::parse("1/30"), 9);
    REQUIRE(res.success);
    CHECK(static_cast<int>(res.path.size()) == 2 * k);
    CHECK(res.path.front() == v1);
    CHECK(res.path.back() == v2);
    CHECK(is_path_in(mono, res.path));
    for (std::size_t i = 1; i + 1 < res.path.size(); ++i)
      CHECK((u1.test(res.path[i]) || u2.test(res.path[i])));
  }
  // Requests beyond the pools are refused, not fudged.
  PathResult big = path_in_pair(mono, cp.mask(1), cp.mask(2), v1, v2, u1, u2,
                                130, Frac::parse("1/30"), 9);
  CHECK_FALSE(big.success);
  // Shrinking the internal pools is respected: block most of V2.
  DynBitset tight = u2;
  for (int v = 120; v < 230; ++v) tight.reset(v);
  PathResult res = path_in_pair(mono, cp.mask(1), cp.mask(2), v1, v2, u1,
                                tight, 3, Frac::parse("1/30"), 9);
  if (res.success)
    for (std::size_t i = 1; i + 1 < res.path.size(); ++i)
      CHECK_FALSE((res.path[i] >= 120 && res.path[i] < 230));
}

TEST_CASE("connecting path walks the reduced graph") {
  // Colour 1 forms the reduced path 1-2-3-4, so its anchor edges connect.
  std::vector<BlowupPair> pairs{{1, 2, 1, 1.0}, {2, 3, 1, 1.0}, {3, 4, 1, 1.0},
                                {1, 4, 2, 1.0}, {1, 3, 2, 1.0}, {2, 4, 2, 1.0}};
  ColouredGraph g = blowup_host(4, 40, 2, pairs, 7);
  ClusterPartition cp = make_partition(g, consecutive_clusters(4, 40), {},
                                       Frac::parse("0.05"), Frac::parse("0.8"));
  ReducedGraph rg = build_reduced(cp);
  DynBitset forbidden(g.n());
  int v = 0;    // in V1, on edge (1,2)
  int w = 125;  // in V4, on edge (3,4)
  PathResult res = connecting_path(cp, rg, 1, v, {1, 2}, w, {3, 4}, forbidden);
  REQUIRE(res.success);
  CHECK(res.path.front() == v);
  CHECK(res.path.back() == w);
  CHECK(res.path.size() <= 4 + 2);  // m + 2
  Graph mono = g.mono_subgraph(1);
  CHECK(is_path_in(mono, res.path));

  // An anchor edge absent from the requested colour class is refused.
  PathResult cross = connecting_path(cp, rg, 2, v, {1, 4}, w, {2, 3}, forbidden);
  CHECK_FALSE(cross.success);

  // Forbidden interiors are avoided (endpoints may be forbidden).
  DynBitset heavy(g.n());
  for (int x = 40; x < 55; ++x) heavy.set(x);  // part of V2
  PathResult res2 = connecting_path(cp, rg, 1, v, {1, 2}, w, {3, 4}, heavy);
  REQUIRE(res2.success);
  for (std::size_t i = 1; i + 1 < res2.path.size(); ++i)
    CHECK_FALSE(heavy.test(res2.path[i]));
}
