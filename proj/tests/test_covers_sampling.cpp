#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "cyclepart/covers.hpp"
#include "cyclepart/generators.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/oracles.hpp"
#include "cyclepart/rng.hpp"
#include "cyclepart/sampling.hpp"

using namespace cyclepart;

namespace {

Graph from_mask(int n, uint64_t mask) {
  Graph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) g.add_edge(u, v);
  return g;
}

// A cover is valid when pieces are disjoint, cover V, and each piece of size
// >= 2 is a cycle (or a single edge) of g.
bool cover_valid(const Graph& g, const Family& fam) {
  std::vector<char> seen(g.n(), 0);
  std::size_t total = 0;
  for (const Piece& p : fam) {
    total += p.vertices.size();
    for (int v : p.vertices) {
      if (v < 0 || v >= g.n() || seen[v]) return false;
      seen[v] = 1;
    }
    const auto& vs = p.vertices;
    if (vs.size() == 2 && !g.has_edge(vs[0], vs[1])) return false;
    if (vs.size() >= 3) {
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (!g.has_edge(vs[i], vs[(i + 1) % vs.size()])) return false;
    }
  }
  return total == static_cast<std::size_t>(g.n());
}

bool is_cycle_of(const Graph& g, const std::vector<int>& c) {
  std::set<int> s(c.begin(), c.end());
  if (s.size() != c.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!g.has_edge(c[i], c[(i + 1) % c.size()])) return false;
  return true;
}

Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer 5-cycle
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return g;
}

}  // namespace

TEST_CASE("posa cover never exceeds the independence number: exhaustive") {
  for (int n = 1; n <= 5; ++n) {
    const int bits = n * (n - 1) / 2;
    for (uint64_t mask = 0; mask < (uint64_t{1} << bits); ++mask) {
      Graph g = from_mask(n, mask);
      Family fam = posa_cover(g);
      REQUIRE(cover_valid(g, fam));
      CHECK(fam.size() <= static_cast<std::size_t>(independence_number(g)));
    }
  }
}

TEST_CASE("posa cover never exceeds the independence number: random") {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    int n = 4 + static_cast<int>(rng.uniform_int(0, 10));
    double p = 0.15 + 0.08 * (t % 10);
    Graph g = random_graph(n, p, rng.next_u64());
    Family fam = posa_cover(g);
    REQUIRE(cover_valid(g, fam));
    CHECK(fam.size() <= static_cast<std::size_t>(independence_number(g)));
  }
}

TEST_CASE("posa cover hand shapes") {
  Family empty_fam = posa_cover(Graph(6));
  CHECK(empty_fam.size() == 6);  // isolated vertices: one singleton each
  Family kn = posa_cover(complete_graph(7));
  CHECK(kn.size() == 1);
  CHECK(kn[0].order() == 7);
  Family cyc = posa_cover(cycle_graph(9));
  CHECK(cyc.size() == 1);
}

TEST_CASE("exact-length cycles are found where they exist") {
  Graph c12 = cycle_graph(12);
  auto full = exact_length_cycle(c12, 12, 3);
  REQUIRE(full.has_value());
  CHECK(full->size() == 12);
  CHECK(is_cycle_of(c12, *full));
  CHECK_FALSE(exact_length_cycle(c12, 11, 3).has_value());
  CHECK_FALSE(exact_length_cycle(c12, 3, 3).has_value());

  Graph k9 = complete_graph(9);
  for (int len = 3; len <= 9; ++len) {
    auto c = exact_length_cycle(k9, len, 5);
    REQUIRE(c.has_value());
    CHECK(static_cast<int>(c->size()) == len);
    CHECK(is_cycle_of(k9, *c));
  }
  CHECK_FALSE(exact_length_cycle(k9, 10, 5).has_value());
  CHECK_THROWS(exact_length_cycle(k9, 2, 5));
}

TEST_CASE("exact-length cycle negatives are certified on small graphs") {
  Graph k33 = complete_bipartite(3, 3);
  CHECK_FALSE(exact_length_cycle(k33, 3, 1).has_value());
  CHECK_FALSE(exact_length_cycle(k33, 5, 1).has_value());
  CHECK(exact_length_cycle(k33, 4, 1).has_value());
  CHECK(exact_length_cycle(k33, 6, 1).has_value());

  Graph pet = petersen();
  CHECK_FALSE(exact_length_cycle(pet, 3, 1).has_value());
  CHECK_FALSE(exact_length_cycle(pet, 4, 1).has_value());
  CHECK(exact_length_cycle(pet, 5, 1).has_value());
  CHECK(exact_length_cycle(pet, 9, 1).has_value());
}

TEST_CASE("exact-length cycles in a large sparse host") {
  Graph g = random_graph(1200, 25.0 / 1200, 77);
  for (int len : {10, 16}) {
    auto c = exact_length_cycle(g, len, 9);
    REQUIRE(c.has_value());
    CHECK(static_cast<int>(c->size()) == len);
    CHECK(is_cycle_of(g, *c));
  }
}

TEST_CASE("min-degree peeling keeps the dense core") {
  // K_40 with vertex 0 stripped down to degree 10: 0 is peeled, the rest keep
  // full degree among themselves.
  Graph g(40);
  for (int u = 0; u < 40; ++u)
    for (int v = u + 1; v < 40; ++v)
      if (u > 0 || v <= 10) g.add_edge(u, v);
  MinDegreeResult res = min_degree_subgraph(g, Frac::parse("1/8"));
  CHECK(res.bounds_ok);
  CHECK(res.keep.count() == 39);
  CHECK_FALSE(res.keep.test(0));
  REQUIRE(res.removed.size() == 1);
  CHECK(res.removed[0] == 0);

  MinDegreeResult full = min_degree_subgraph(complete_graph(30), Frac::parse("1/10"));
  CHECK(full.bounds_ok);
  CHECK(full.keep.count() == 30);

  // Too few edges for the hypothesis: refused outright.
  CHECK_THROWS(min_degree_subgraph(cycle_graph(30), Frac::parse("1/10")));
}

TEST_CASE("bipartite cover finds few monochromatic pieces") {
  for (int r : {2, 3}) {
    EgpInstance inst = egp_instance(r, 24, 1000 + r);
    EgpResult res = egp_cover(inst.g, inst.a_side, inst.b_side, inst.opts);
    REQUIRE(res.success);
    CHECK(res.pieces.size() <= static_cast<std::size_t>(100 * r * r));
    ValidationResult val = validate_family(inst.g, res.pieces, false);
    CHECK(val.ok);
    // every B vertex covered, and only instance vertices used
    std::set<int> covered;
    for (const Piece& p : res.pieces) {
      CHECK((p.order() >= 2));  // no singleton pieces in this cover
      covered.insert(p.vertices.begin(), p.vertices.end());
    }
    for (int b : inst.b_side) CHECK(covered.count(b) == 1);
    for (const auto& row : res.rows)
      if (row.gating) CHECK(row.satisfied);
  }
}

TEST_CASE("bipartite cover rejects a starved instance") {
  // B-degrees far below |A|/degree_div: the hypothesis rows catch it.
  ColouredGraph g(50, 2, {{0, 45, 1}, {1, 46, 1}});
  std::vector<int> a, b;
  for (int i = 0; i < 45; ++i) a.push_back(i);
  for (int i = 45; i < 50; ++i) b.push_back(i);
  EgpOptions opts{4, 10, 4};
  EgpResult res = egp_cover(g, a, b, opts);
  CHECK_FALSE(res.success);
  CHECK(!res.message.empty());
}

TEST_CASE("sampling satisfies its four clauses exactly") {
  std::vector<BlowupPair> pairs{
      {1, 2, 1, 0.95}, {3, 4, 1, 0.95}, {2, 3, 2, 0.95}, {1, 4, 2, 0.95}};
  ColouredGraph g = blowup_host(4, 248, 2, pairs, 31);
  // park the last 8 vertices of cluster 4 in V0
  std::vector<std::vector<int>> clusters = consecutive_clusters(4, 248);
  std::vector<int> v0(clusters[3].end() - 8, clusters[3].end());
  clusters[3].resize(240);
  ClusterPartition cp = make_partition(g, clusters, v0, Frac::parse("0.05"),
                                       Frac::parse("0.8"));
  DynBitset forbidden = cp.mask(0);
  for (int v = 0; v < 5; ++v) forbidden.set(v);

  Frac p = Frac::ratio(1, 40);
  SampleSet s = sample_with_properties(g, cp, forbidden, p, 2024, 10, true);
  REQUIRE(s.ok);
  CHECK(s.window_overridden);
  CHECK_FALSE(s.window_ok);
  CHECK(s.attempts >= 1);
  CHECK_FALSE(s.a.intersects(forbidden));

  const long long n = g.n();
  const long long asz = static_cast<long long>(s.a.count());
  // (a) |A| >= (p/2) n
  CHECK(ge_scaled(asz, p / Frac(2), n));
  for (int i = 1; i <= cp.m(); ++i) {
    const long long wi = static_cast<long long>(cp.mask(i).count());
    const long long ai = static_cast<long long>(s.a.count_and(cp.mask(i)));
    // (b) |A n V_i| <= 2p |V_i|
    CHECK(le_scaled(ai, p * Frac(2), wi));
    // (c) degree inheritance into each cluster
    for (int v = 0; v < g.n(); ++v) {
      const long long dvi = static_cast<long long>(g.deg_in(v, cp.mask(i)));
      if (le_scaled(dvi, p * Frac(30), wi)) continue;
      const long long dva =
          static_cast<long long>(g.deg_in(v, s.a & cp.mask(i)));
      CHECK(ge_scaled(2 * dva, p, dvi));
    }
  }
  // (d) global degree into A for vertices of solid degree
  DynBitset alive = DynBitset(g.n());
  alive.set_all();
  alive.subtract(forbidden);
  for (int v = 0; v < g.n(); ++v) {
    if (40 * static_cast<long long>(g.deg_in(v, alive)) <= n) continue;
    CHECK(100 * static_cast<long long>(g.deg_in(v, s.a)) >= asz);
  }
  for (const auto& row : s.rows)
    if (row.gating) CHECK(row.satisfied);

  // determinism and seed sensitivity
  SampleSet again = sample_with_properties(g, cp, forbidden, p, 2024, 10, true);
  CHECK(again.a == s.a);
  SampleSet other = sample_with_properties(g, cp, forbidden, p, 2025, 10, true);
  CHECK_FALSE(other.a == s.a);
}

TEST_CASE("sampling without the override refuses the size window") {
  std::vector<BlowupPair> pairs{{1, 2, 1, 0.9}, {1, 2, 2, 0.0}};
  ColouredGraph g = blowup_host(2, 120, 2, pairs, 8);
  ClusterPartition cp = make_partition(g, consecutive_clusters(2, 120), {},
                                       Frac::parse("0.05"), Frac::parse("0.8"));
  DynBitset forbidden(g.n());
  SampleSet s = sample_with_properties(g, cp, forbidden, Frac::ratio(1, 40),
                                       99, 10, false);
  CHECK_FALSE(s.ok);
  CHECK_FALSE(s.window_ok);
  CHECK_FALSE(s.window_overridden);
  CHECK(!s.message.empty());
}
