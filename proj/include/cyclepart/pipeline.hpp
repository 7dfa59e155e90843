#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cyclepart/clusters.hpp"
#include "cyclepart/cycles.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/params.hpp"
#include "cyclepart/structural.hpp"

namespace cyclepart {

// One stage of the partition procedure: its inequality rows, a few counters
// worth surfacing in reports, and the first failure message when a gating row
// or a constructive step fails.
struct StageReport {
  int index = 0;
  std::string name;
  bool ok = true;
  std::vector<ClauseRow> rows;
  std::vector<std::pair<std::string, long long>> counts;
  std::string message;
};

// Result of the ten-stage cycle-partition procedure on a robustly matchable
// host. On success `family` is a verified exact partition of V(h); on failure
// `stages` records every inequality evaluated up to the failing stage and
// `message` names the stage and the violated clause.
struct PartitionResult {
  bool success = false;
  Family family;
  std::vector<StageReport> stages;
  long long piece_bound = 0;  // floor((1/mu + 200) r^2)
  std::string message;
};

// Partitions V(h) into monochromatic cycles. The stages: (1) reduced graph
// restricted to large monochromatic components, (2) perfect 2-matching on it,
// (3) cover of the atypical vertices through a sampled set, (4) one skeleton
// cycle per monochromatic component, (5) parity singletons per component,
// (6) the per-cluster fill length ell and remainder function b, (7) a perfect
// b-matching on the cluster graph, (8) the combined edge weighting, (9) path
// realization per cluster edge with a two-round reserve sample, (10) splice
// and final validation. All regularity-derived thresholds use cp.eps / cp.d
// (the resolution the partition was built at); the ledger supplies mu and nu.
// `side_a` (host vertex ids, ascending) marks the bipartite case. cp.host
// must point at h.
PartitionResult partition_robmat(const ColouredGraph& h,
                                 const std::vector<int>* side_a,
                                 const ClusterPartition& cp,
                                 const ParameterLedger& params,
                                 std::uint64_t seed = 1);

// End-to-end: structural decomposition of g, then the partition procedure on
// the remainder, families concatenated and validated as a partition of V(g).
// The cluster hint is given on g's vertex ids; every hinted cluster must
// survive the structural phase untouched (burned vertices may only come from
// the hint's exceptional set), or the run fails with a staged message.
struct MainResult {
  bool success = false;
  Family family;
  StructuralDecomposition structural;
  PartitionResult remainder;
  std::vector<ClauseRow> rows;  // headline piece-count clauses
  std::string message;
};

MainResult partition_main(const ColouredGraph& g, const ParameterLedger& params,
                          const ClusterPartition& cluster_hint,
                          std::uint64_t seed = 1);

}  // namespace cyclepart
