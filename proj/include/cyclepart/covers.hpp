#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cyclepart/cycles.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/params.hpp"

namespace cyclepart {

// Covers the vertex set by at most alpha(g) disjoint pieces (cycles, edges,
// singletons): grow a path by forward extension until the endpoint's alive
// neighbourhood lies on the path, close back to the endpoint's farthest
// neighbour, remove, repeat. Piece colours are 0 (uncoloured input).
Family posa_cover(const Graph& g);

struct EgpOptions {
  // Hypothesis scale. 0 selects the defaults: size_ratio = 10^6 r^3 (|A| >=
  // that times |B|), degree_div = 100 (B-degrees >= |A|/degree_div), and
  // codegree_div = size_ratio. Bucket threshold is |A|/(degree_div * r).
  long long size_ratio = 0;
  long long degree_div = 0;
  long long codegree_div = 0;
};

struct EgpResult {
  bool success = false;
  std::string message;
  Family pieces;  // monochromatic cycles and edges covering the B side
  std::vector<ClauseRow> rows;
};

// Bipartite cover: buckets B by a colour of large degree into A, joins
// B-vertices of large codegree in an auxiliary graph per colour, covers each
// auxiliary graph by posa_cover, and expands auxiliary pieces through fresh
// A-vertices (cycle edges become 2-paths, lone auxiliary edges become
// 4-cycles, singletons become pendant edges).
EgpResult egp_cover(const ColouredGraph& g, const std::vector<int>& a_side,
                    const std::vector<int>& b_side, const EgpOptions& opts = {});

// Cycle of length exactly cycle_len: low-degree peeling to a dense core,
// seeded rotation-extension path growth, chord scan at distance
// cycle_len - 1, and an exhaustive search fallback for small graphs.
// Not-found is not a nonexistence certificate.
std::optional<std::vector<int>> exact_length_cycle(const Graph& g,
                                                   int cycle_len,
                                                   uint64_t seed = 1);

struct MinDegreeResult {
  DynBitset keep;
  std::vector<int> removed;
  bool bounds_ok = false;
  std::string message;
};

// One peeling round: drops every vertex of degree <= (1-eps)n and checks
// that at most eps*n vertices left and the rest induce degree >= (1-2eps)n.
// Throws if the edge-count precondition e >= (1-eps^2)n^2/2 fails.
MinDegreeResult min_degree_subgraph(const Graph& g, const Frac& eps);

}  // namespace cyclepart
