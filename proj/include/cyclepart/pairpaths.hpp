#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclepart/bitset.hpp"
#include "cyclepart/clusters.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/params.hpp"

namespace cyclepart {

struct PathResult {
  bool success = false;
  std::string message;
  std::vector<int> path;
};

// Rotation-extension search on a bipartite pair (W1, W2): only cross edges of
// g are used. Grows a longest even path greedily, closes it into a cycle via
// the four chord/outside-neighbour cases, re-opens and extends by two, and
// repeats. Both entry points restart from random seeds a few times before
// giving up; a returned sequence is always a valid path/cycle.
std::optional<std::vector<int>> pair_even_path(const Graph& g,
                                               const DynBitset& w1,
                                               const DynBitset& w2,
                                               int min_order, uint64_t seed,
                                               std::string* why = nullptr);
// Cycle through every vertex of the smaller side (length 2*min(|W1|,|W2|)).
std::optional<std::vector<int>> pair_spanning_cycle(const Graph& g,
                                                    const DynBitset& w1,
                                                    const DynBitset& w2,
                                                    uint64_t seed,
                                                    std::string* why = nullptr);

// v1-v2 path of order exactly 2k inside the pair (side1, side2), internal
// vertices restricted to u1/u2. Hypotheses (set sizes, endpoint degrees, the
// admissible k range, and the minimum-degree condition for the extended
// range) are evaluated and echoed in the message on failure; the search is
// attempted regardless, and a returned path is always valid.
PathResult path_in_pair(const Graph& g, const DynBitset& side1,
                        const DynBitset& side2, int v1, int v2, DynBitset u1,
                        DynBitset u2, int k, const Frac& eps,
                        uint64_t seed = 1);

// Short monochromatic path between two cluster pairs of one colour
// component: walks the reduced graph from (v on edge i-j) to (w on edge
// i'-j'), padding the cluster route to length >= 4 (>= 5 when m allows),
// then instantiates it greedily through typical vertices while avoiding
// `forbidden` and previously used vertices. Path order <= route length <=
// m+2 <= 2m.
PathResult connecting_path(const ClusterPartition& cp, const ReducedGraph& rg,
                           int colour, int v, std::pair<int, int> from_edge,
                           int w, std::pair<int, int> to_edge,
                           const DynBitset& forbidden);

}  // namespace cyclepart
