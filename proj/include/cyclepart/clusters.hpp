#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclepart/bitset.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/params.hpp"
#include "cyclepart/rng.hpp"

namespace cyclepart {

// A partition of the host vertex set into an exceptional set and m
// equal-size clusters, together with the resolution parameters (eps, d)
// that reduced-graph construction works at.
struct ClusterPartition {
  const ColouredGraph* host = nullptr;
  std::vector<int> v0;                     // exceptional vertices, ascending
  std::vector<std::vector<int>> clusters;  // V_1..V_m, each ascending
  Frac eps;
  Frac d;

  // Built by finalize(): cluster id per vertex (0 = exceptional) and
  // per-cluster bit masks over the host vertex set.
  std::vector<int> cluster_of;
  std::vector<DynBitset> masks;  // masks[i] for cluster i, 1-based; [0] = V0

  int n() const { return host ? host->n() : 0; }
  int m() const { return static_cast<int>(clusters.size()); }
  int cluster_size() const {
    return clusters.empty() ? 0 : static_cast<int>(clusters.front().size());
  }
  const DynBitset& mask(int i) const { return masks.at(i); }

  // Validates disjointness, coverage and equal sizes; throws
  // std::invalid_argument on malformed input.
  void finalize();
  // True iff |V0| <= eps*n and cluster size <= eps*n.
  bool sizes_within_eps(std::string* why = nullptr) const;
};

ClusterPartition read_cluster_partition(const std::string& path,
                                        const ColouredGraph& host);
void write_cluster_partition(const std::string& path,
                             const ClusterPartition& cp);

struct ReducedEdge {
  int i, j;  // clusters, 1-based, i < j
  int colour;
  Frac density;
};

// The cluster-level graph: one vertex per cluster, an edge where the pair is
// dense (and not refuted as regular) in some colour; lowest colour wins ties.
struct ReducedGraph {
  int m = 0;
  std::vector<std::vector<int>> colour;    // (m+1)x(m+1), 1-based, 0 = none
  std::vector<std::vector<Frac>> density;  // density of the chosen colour
  std::vector<int> side;                   // optional bipartition flags, 1-based

  int edge_colour(int i, int j) const { return colour[i][j]; }
  std::vector<ReducedEdge> edges() const;
  int deg(int i) const;
  Graph skeleton() const;                  // 0-based uncoloured copy
  ColouredGraph coloured(int r) const;     // 0-based coloured copy
};

enum class RegularityMode { kTrusted, kSampled };

ReducedGraph build_reduced(const ClusterPartition& cp,
                           RegularityMode mode = RegularityMode::kTrusted,
                           int samples = 200, uint64_t seed = 1);

// Exact per-colour density of a cluster pair; colour 0 means all colours.
Frac pair_density(const ColouredGraph& g, const std::vector<int>& u,
                  const DynBitset& w_mask, long long w_size, int colour);

struct RefuterResult {
  bool refuted = false;
  std::vector<int> x, y;  // witness subsets when refuted
  Frac pair_density;
  Frac witness_density;
};

// One-sided regularity test: samples subset pairs of the minimum admissible
// size and reports any density deviation beyond eps. Never proves regularity.
RefuterResult eps_regular_refuter(const ColouredGraph& g,
                                  const std::vector<int>& u,
                                  const std::vector<int>& w, const Frac& eps,
                                  int colour, int samples, uint64_t seed);

// Vertices of V_i whose colour-c degree into V_j reaches
// (d_c(V_i,V_j) - eps)|V_j|. Throws if the pair density is below d.
DynBitset typical_vertices(const ClusterPartition& cp, int i, int j,
                           int colour);
// Same threshold test for one vertex (which need not lie in V_i).
bool is_typical(const ClusterPartition& cp, int v, int i, int j, int colour);

struct InheritanceReport {
  std::vector<ClauseRow> rows;
  bool ok = true;
};

// Evaluates the three degree/edge inheritance clauses relating host and
// reduced graph: (a) per-vertex degree inheritance, (b) the all-but-eta
// variant swept over host degree values, (c) induced edge-count inheritance
// on sampled cluster subsets.
InheritanceReport reduced_inheritance_checks(const ClusterPartition& cp,
                                             const ReducedGraph& rg,
                                             int subset_samples = 50,
                                             uint64_t seed = 1);

}  // namespace cyclepart
