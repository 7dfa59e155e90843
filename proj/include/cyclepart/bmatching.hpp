#pragma once
#include <array>
#include <string>
#include <vector>

#include "cyclepart/graph.hpp"
#include "cyclepart/matching.hpp"
#include "cyclepart/params.hpp"

namespace cyclepart {

// Result of the constructive perfect-b-matching routine. The construction
// follows the existence proof literally: (1) pair odd-b vertices inside each
// component and route one path per pair, giving the parity weighting
// omega_path; (2) set b1 = b - deg(omega_path); (3) blow every vertex x up
// into a set W(x) of b1(x)/2 nodes, every edge into a complete bipartite
// gadget; (4) find a perfect 2-matching of the blown-up graph; (5) project
// the weights back and add omega_path.
struct BMatchingResult {
  bool success = false;
  std::string message;
  std::vector<std::array<int, 3>> weights;     // (u, v, omega), u < v, omega>0
  std::vector<std::array<int, 3>> omega_path;  // parity part, same layout
  long long blowup_nodes = 0;
  long long blowup_edges = 0;
  // When the 2-matching step fails: clusters owning the deficient gadget
  // nodes (diagnostic; the hypotheses were then outside the guaranteed regime).
  std::vector<int> failing_vertices;
};

BMatchingResult perfect_b_matching(const Graph& h,
                                   const std::vector<long long>& b,
                                   const std::vector<int>* side_a = nullptr,
                                   long long node_cap = 200000,
                                   long long edge_cap = 40000000);

// Checks the degree-sum equation and edge validity of a claimed weighting.
bool verify_b_matching(const Graph& h, const std::vector<long long>& b,
                       const std::vector<std::array<int, 3>>& weights);

// Evaluates the hypotheses of the b-matching lemma as reportable rows:
// (1-gamma) b_max <= b(x) <= b_max for all x; per-component parity; type-2
// balance when a bipartition is supplied.
struct BHypothesesReport {
  std::vector<ClauseRow> rows;
  bool ok = true;
};
BHypothesesReport check_b_hypotheses(const Graph& h,
                                     const std::vector<long long>& b,
                                     const Frac& gamma, long long b_max,
                                     const std::vector<int>* side_a = nullptr);

}  // namespace cyclepart
