#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cyclepart/graph.hpp"

namespace cyclepart {

// Properly edge-coloured complete graph on k vertices by the circle method:
// k-1 colours for even k (a 1-factorization), k colours for odd k.
ColouredGraph proper_colouring_K(int k);

// No colour repeats at any vertex.
bool is_properly_coloured(const ColouredGraph& g, std::string* why = nullptr);

struct RainbowMatching {
  std::vector<ColouredGraph::Edge> edges;  // disjoint, pairwise distinct colours
  int size() const { return static_cast<int>(edges.size()); }
  bool contains_pair(int u, int v) const {
    for (const auto& e : edges)
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
    return false;
  }
};

enum class RainbowMode { kExact, kHeuristic };

// Rainbow matching with at least target_size edges. Exact mode is a complete
// branch and bound (host capped at 16 vertices), so its not-found certifies
// nonexistence; heuristic mode (greedy plus bounded swap search) does not.
// Throws on an improperly coloured host.
std::optional<RainbowMatching> rainbow_matching(const ColouredGraph& g,
                                                int target_size,
                                                RainbowMode mode);

// Every rainbow matching with exactly `size` edges, each listed once with
// edges ascending by endpoints. Throws when the count exceeds `cap`.
std::vector<RainbowMatching> enumerate_rainbow_matchings(
    const ColouredGraph& g, int size, std::size_t cap = 1'000'000);

// Deletes the listed edges, peels low-degree vertices (the peel threshold is
// derived from the surviving edge count), and searches the remaining graph.
// The returned matching avoids every deleted edge by construction.
std::optional<RainbowMatching> rainbow_survives_deletion(
    const ColouredGraph& k, const std::vector<std::pair<int, int>>& deleted,
    int target_size, RainbowMode mode);

}  // namespace cyclepart
