#pragma once
#include <vector>

#include "cyclepart/graph.hpp"

namespace cyclepart {

// Connected components of the colour-c subgraph. Every vertex belongs to one
// component (isolated vertices give singletons). Components are listed in
// ascending order of their smallest vertex; vertices inside ascend.
std::vector<std::vector<int>> mono_components(const ColouredGraph& g, int c);

// Component id per vertex for the colour-c subgraph, ids assigned in
// discovery order of the smallest vertex.
std::vector<int> mono_component_ids(const ColouredGraph& g, int c);

std::vector<std::vector<int>> connected_components(const Graph& g);

// Exact independence number by branch and bound. Throws when n exceeds the
// cap (default 30); this is a reference oracle, not a production routine.
int independence_number(const Graph& g, int cap = 30);

// Exact minimum number of monochromatic cycles (including single vertices and
// single edges) partitioning V(g). Subset dynamic programming; throws when n
// exceeds the cap (default 14).
int exact_min_cycle_partition(const ColouredGraph& g, int cap = 14);

// Exact minimum-cardinality set cover by branch and bound. `sets` are subsets
// of {0,...,universe-1}; throws if some element is uncovered by every set.
int exact_set_cover(int universe, const std::vector<DynBitset>& sets);

// Exact minimum number of monochromatic components (any colours) whose union
// contains all target vertices. Throws when the number of candidate
// components exceeds the cap.
int exact_min_component_cover(const ColouredGraph& g,
                              const std::vector<int>& targets,
                              std::size_t component_cap = 10000);

}  // namespace cyclepart
