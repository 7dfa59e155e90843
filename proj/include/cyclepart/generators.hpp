#pragma once
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "cyclepart/clusters.hpp"
#include "cyclepart/covers.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/params.hpp"

namespace cyclepart {

// G(n, p).
Graph random_graph(int n, double p, std::uint64_t seed);

// G(n, p) with every edge coloured uniformly from [r].
ColouredGraph random_coloured_graph(int n, int r, double p, std::uint64_t seed);

// Complete graph with every edge in one colour.
ColouredGraph mono_complete(int n, int r, int colour);

// One pair of a blow-up: clusters i < j (1-based) joined by a random
// bipartite graph of the given colour and density.
struct BlowupPair {
  int i = 0, j = 0;
  int colour = 1;
  double density = 1.0;
};

// Blow-up host on m clusters of w vertices each; cluster i occupies vertex
// ids [(i-1)w, iw). Pairs not listed stay empty.
ColouredGraph blowup_host(int m, long long w, int r,
                          const std::vector<BlowupPair>& pairs,
                          std::uint64_t seed);

// Cluster lists matching the blowup_host vertex layout.
std::vector<std::vector<int>> consecutive_clusters(int m, long long w);

// Partition over an externally owned host; throws on inconsistent input.
ClusterPartition make_partition(const ColouredGraph& host,
                                std::vector<std::vector<int>> clusters,
                                std::vector<int> v0, const Frac& eps,
                                const Frac& d);

// Two-stage planted instance: a complete pair-coloured blow-up (first half
// of the clusters on one side, second half on the other, pair (i, j) in
// colour 1 + (i+j) mod 2) plus two cliques wired so the structural phase
// classifies them onto fixed sides and burns the surplus off exactly. The
// surplus request is bumped upward when the balancing lengths admit no
// even split. With surplus 0 the cliques survive into the remainder and
// exercise the covering path.
struct PlantedTwoStage {
  ColouredGraph g;
  std::vector<std::vector<int>> clusters;
  std::vector<int> pockets;  // clique vertices; the cluster hint's v0
  int m = 0;
  long long w = 0;
  int k = 0;         // realized surplus
  int side_len = 0;  // short-side clique order
  long long n = 0;
  std::vector<std::array<int, 2>> holes;  // deleted cross edges
};
PlantedTwoStage planted_two_stage(int m, long long w, int k_request, int holes,
                                  std::uint64_t seed);

// Random host accepted by check_robmat for the requested type, resampling
// until acceptance. side_a is empty for type 1.
struct RobmatHost {
  Graph g;
  std::vector<int> side_a;
  int attempts = 0;
};
RobmatHost robmat_host(int type, int n, const Frac& mu, const Frac& nu,
                       std::uint64_t seed, int max_attempts = 50);

// Connected host plus a degree function realized by a planted weighting, so
// a perfect b-matching certainly exists. gamma is the declared slack:
// (1 - gamma) b_max <= b(x) <= b_max holds for every vertex.
struct BInstance {
  Graph h;
  std::vector<long long> b;
  std::vector<int> side_a;  // empty for type 1
  Frac gamma;
  long long b_max = 0;
};
BInstance b_instance(int type, int n, std::uint64_t seed);

// Covering instance: |A| = 40 |B|, every B-vertex with one planted colour,
// same-coloured B-vertices sharing a hub inside A so their codegrees are
// large. Options carry the matching scaled thresholds.
struct EgpInstance {
  ColouredGraph g;
  std::vector<int> a_side, b_side;
  EgpOptions opts;
};
EgpInstance egp_instance(int r, int nb, std::uint64_t seed);

}  // namespace cyclepart
