#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclepart/graph.hpp"
#include "cyclepart/params.hpp"
#include "cyclepart/rainbow.hpp"
#include "cyclepart/rng.hpp"

namespace cyclepart {

// G(n, p): each pair independently, ascending order, one draw per pair.
Graph random_graph(int n, double p, Rng& rng);

// True iff g has no cycle of length < k (truncated BFS from every vertex).
bool girth_at_least(const Graph& g, int k);

// Removes a maximal collection of edge-disjoint cycles of length < k,
// shortest first, deleting each found cycle's edges immediately. Returns the
// number of cycles removed; afterwards girth_at_least(g, k) holds.
int remove_short_cycles(Graph& g, int k);

// The two-coloured sharpness host: red complete bipartite between A and B,
// blue high-girth sparse graph inside B. The blue part is drawn from
// G(|B|, 8 log|B|/|B|) and cleaned by remove_short_cycles; failed degree or
// girth checks trigger a resample.
struct DegreeLowerBound {
  long long n = 0;
  uint64_t seed = 0;
  std::vector<int> a_side, b_side;  // A first: 0..|A|-1, then B
  Graph blue;                       // on B, indices 0..|B|-1
  int resamples = 0;
  bool success = false;
  bool materialized = false;
  ColouredGraph g;  // colour 1 = red, colour 2 = blue; empty unless materialized
  double delta_target = 0;  // n/2 + log n/(16 log log n)
  double girth_target = 0;  // log|B|/(4 log log|B|)
  long long min_degree = 0;
  std::vector<ClauseRow> rows;
  std::string message;
};

// materialize < 0 chooses automatically (only small n); the certificate is
// computed from the sides and the blue graph either way.
DegreeLowerBound build_degree_lower_bound(long long n, uint64_t seed,
                                          int max_resamples = 5,
                                          int materialize = -1);

// Hand-planted 12-vertex variant: |A| = 5, |B| = 7, red complete bipartite,
// blue 7-cycle inside B (girth 7). Small enough for the exact partition
// oracle, which needs at least 2 pieces here.
ColouredGraph degree_lower_bound_miniature();

// Blow-up construction for the cycle-count lower bound. Base: properly
// coloured K_Y on r-1 vertices; X = all rainbow matchings of a fixed size;
// H joins each matching to the endpoints of its edges; G blows up every
// Y-vertex and fills Y' with colour r.
struct BlowupConstruction {
  int r = 0;  // final colour count; the base uses r-1
  Frac eps;
  ColouredGraph base_k;  // properly coloured complete graph on Y
  std::vector<RainbowMatching> x_set;
  int matching_size = 0;
  ColouredGraph h;  // bipartite base: X = [0..|X|), Y = [|X|..|X|+r-1)
  long long n_prime_default = 0;
  long long n_prime = 0;
  bool overridden = false;
  bool materialized = false;
  ColouredGraph g;  // X = [0..|X|), then per-y blocks of n_prime vertices
  std::vector<ClauseRow> rows;
  bool success = false;
  std::string message;

  int x_count() const { return static_cast<int>(x_set.size()); }
  int y_count() const { return r - 1; }
  // G-vertex id of copy t of base vertex y.
  int block_vertex(int y, long long t) const {
    return static_cast<int>(x_count() + y * n_prime + t);
  }
};

BlowupConstruction build_component_lower_bound(int r, const Frac& eps,
                                               long long n_prime_override = 0,
                                               std::size_t enum_cap = 1'000'000);

}  // namespace cyclepart
