#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <vector>

#include "cyclepart/cycles.hpp"
#include "cyclepart/generators.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/oracles.hpp"
#include "cyclepart/rng.hpp"

using namespace cyclepart;

namespace {

ColouredGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_coloured_graph(in);
}

// Independent-set maximum by subset enumeration; n <= 20.
int alpha_brute(const Graph& g) {
  int n = g.n(), best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      if (mask >> u & 1)
        for (int v = u + 1; v < n && ok; ++v)
          if ((mask >> v & 1) && g.has_edge(u, v)) ok = false;
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

}  // namespace

TEST_CASE("graph text round-trip with comments") {
  ColouredGraph g = parse("# header\n5 3\n0 1 1\n\n1 2 2\n# mid\n3 4 3\n");
  CHECK(g.n() == 5);
  CHECK(g.r() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.colour_of(1, 0) == 1);
  CHECK(g.colour_of(2, 1) == 2);
  CHECK(g.colour_of(0, 2) == 0);
  std::ostringstream out;
  write_coloured_graph(out, g);
  ColouredGraph back = parse(out.str());
  CHECK(back.n() == g.n());
  CHECK(back.edge_list().size() == g.edge_list().size());
  for (const auto& e : g.edge_list()) CHECK(back.colour_of(e.u, e.v) == e.colour);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse("3 1\n0 3 1\n"), ParseError);   // vertex out of range
  CHECK_THROWS_AS(parse("3 1\n0 1 2\n"), ParseError);   // colour out of range
  CHECK_THROWS_AS(parse("3 1\n0 0 1\n"), ParseError);   // self-loop
  CHECK_THROWS_AS(parse("3 1\n0 1\n"), ParseError);     // missing colour
  CHECK_THROWS_AS(parse(""), ParseError);               // no header
  CHECK_THROWS_AS(parse("3 1\n0 1 1\n0 1 1\n"), ParseError);  // duplicate
}

TEST_CASE("bitset and csr storage answer identically") {
  Rng rng(42);
  std::vector<ColouredGraph::Edge> edges;
  int n = 60, r = 3;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(0.2)) edges.push_back({u, v, rng.uniform_int(1, r)});
  ColouredGraph gb(n, r, edges, ColouredGraph::Mode::kBitset);
  ColouredGraph gc(n, r, edges, ColouredGraph::Mode::kCsr);
  CHECK(gb.bitset_mode());
  CHECK_FALSE(gc.bitset_mode());
  CHECK(gb.num_edges() == gc.num_edges());
  for (int v = 0; v < n; ++v) {
    CHECK(gb.deg(v) == gc.deg(v));
    for (int c = 1; c <= r; ++c) {
      CHECK(gb.deg_c(v, c) == gc.deg_c(v, c));
      CHECK(gb.row_copy(v, c) == gc.row_copy(v, c));
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) CHECK(gb.colour_of(u, v) == gc.colour_of(u, v));
  for (int c = 1; c <= r; ++c) {
    Graph mb = gb.mono_subgraph(c), mc = gc.mono_subgraph(c);
    CHECK(mb.num_edges() == mc.num_edges());
  }
  std::vector<int> ids_b, ids_c;
  DynBitset keep = DynBitset::from_vector(n, {0, 3, 4, 10, 11, 12, 40});
  ColouredGraph ib = gb.induced(keep, &ids_b);
  ColouredGraph ic = gc.induced(keep, &ids_c);
  CHECK(ids_b == ids_c);
  CHECK(ib.edge_list().size() == ic.edge_list().size());
}

TEST_CASE("mono components are sorted and cover every vertex") {
  // Colour 1: triangle 0-1-2 and edge 5-6. Colour 2: edge 2-3.
  ColouredGraph g = parse("7 2\n0 1 1\n1 2 1\n0 2 1\n2 3 2\n5 6 1\n");
  auto comps = mono_components(g, 1);
  REQUIRE(comps.size() == 4);  // {0,1,2}, {3}, {4}, {5,6}
  CHECK(comps[0] == std::vector<int>{0, 1, 2});
  CHECK(comps[1] == std::vector<int>{3});
  CHECK(comps[2] == std::vector<int>{4});
  CHECK(comps[3] == std::vector<int>{5, 6});
  auto ids = mono_component_ids(g, 1);
  CHECK(ids[0] == ids[1]);
  CHECK(ids[0] == ids[2]);
  CHECK(ids[5] == ids[6]);
  CHECK(ids[3] != ids[0]);
  auto u = connected_components(g.union_subgraph());
  CHECK(u.size() == 3);  // {0,1,2,3}, {4}, {5,6}
}

TEST_CASE("independence number matches subset enumeration") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.uniform_int(1, 12);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bernoulli(0.35)) g.add_edge(u, v);
    CHECK(independence_number(g) == alpha_brute(g));
  }
  Graph big(40);
  CHECK_THROWS(independence_number(big));
}

TEST_CASE("exact cycle partition oracle on hand instances") {
  // Monochromatic triangle: one piece.
  CHECK(exact_min_cycle_partition(parse("3 1\n0 1 1\n1 2 1\n0 2 1\n")) == 1);
  // Two-coloured path: an edge piece plus a singleton.
  CHECK(exact_min_cycle_partition(parse("3 2\n0 1 1\n1 2 2\n")) == 2);
  // Rainbow triangle: edge + singleton.
  CHECK(exact_min_cycle_partition(parse("3 3\n0 1 1\n1 2 2\n0 2 3\n")) == 2);
  // Empty graph: all singletons.
  CHECK(exact_min_cycle_partition(parse("4 1\n")) == 4);
  // Mono C4 plus an isolated vertex.
  CHECK(exact_min_cycle_partition(
            parse("5 1\n0 1 1\n1 2 1\n2 3 1\n0 3 1\n")) == 2);
  // Cap enforced.
  CHECK_THROWS(exact_min_cycle_partition(mono_complete(15, 1, 1)));
}

TEST_CASE("set cover oracle") {
  std::vector<DynBitset> sets;
  sets.push_back(DynBitset::from_vector(4, {0, 1}));
  sets.push_back(DynBitset::from_vector(4, {2}));
  sets.push_back(DynBitset::from_vector(4, {1, 2, 3}));
  CHECK(exact_set_cover(4, sets) == 2);  // {0,1} + {1,2,3}
  std::vector<DynBitset> gap;
  gap.push_back(DynBitset::from_vector(3, {0}));
  CHECK_THROWS(exact_set_cover(3, gap));
}

TEST_CASE("component cover oracle") {
  // Colour 1 components {0,1,2} and {3,4}; colour 2 component {0,3}.
  ColouredGraph g = parse("5 2\n0 1 1\n1 2 1\n3 4 1\n0 3 2\n");
  CHECK(exact_min_component_cover(g, {0, 1, 2}) == 1);
  CHECK(exact_min_component_cover(g, {0, 4}) == 2);
  CHECK(exact_min_component_cover(g, {0, 3}) == 1);
  CHECK(exact_min_component_cover(g, {1, 4, 3}) == 2);
}

TEST_CASE("family validation accepts partitions and rejects defects") {
  ColouredGraph g = parse("5 2\n0 1 1\n1 2 1\n0 2 1\n3 4 2\n");
  Family good{{1, {0, 1, 2}}, {2, {3, 4}}};
  CHECK(validate_family(g, good, true).ok);
  Family wrong_colour{{2, {0, 1, 2}}, {2, {3, 4}}};
  CHECK_FALSE(validate_family(g, wrong_colour, true).ok);
  Family overlap{{1, {0, 1, 2}}, {2, {3, 4}}, {0, {0}}};
  CHECK_FALSE(validate_family(g, overlap, true).ok);
  Family incomplete{{1, {0, 1, 2}}};
  CHECK_FALSE(validate_family(g, incomplete, true).ok);
  CHECK(validate_family(g, incomplete, false).ok);
  Family non_cycle{{1, {0, 1}}, {1, {2}}, {2, {3, 4}}};
  CHECK(validate_family(g, non_cycle, true).ok);  // edge and singleton pieces
  Family missing_edge{{1, {0, 3}}};
  CHECK_FALSE(validate_family(g, missing_edge, false).ok);
  Family trivial = trivial_partition(g);
  CHECK(trivial.size() == 5);
  CHECK(validate_family(g, trivial, true).ok);
  CHECK(family_order(trivial) == 5);
}

TEST_CASE("generator hosts have the advertised shape") {
  Graph g = random_graph(30, 0.5, 9);
  CHECK(g.n() == 30);
  std::size_t e = g.num_edges();
  CHECK(e > 100);  // mean 217, far from the tail
  CHECK(e < 350);
  ColouredGraph cg = random_coloured_graph(30, 3, 0.5, 9);
  for (const auto& edge : cg.edge_list()) {
    CHECK(edge.colour >= 1);
    CHECK(edge.colour <= 3);
  }
  ColouredGraph mono = mono_complete(8, 2, 2);
  CHECK(mono.num_edges() == 28);
  CHECK(mono.colour_of(0, 7) == 2);
}
