#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclepart/cycles.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/params.hpp"
#include "cyclepart/robmat.hpp"

namespace cyclepart {

// Splits `total` (even) into even parts, each within [lo, hi] (lo, hi even,
// 4 <= lo <= hi). Uses the fewest parts possible, with near-equal values.
// Returns nullopt when no such split exists (in particular for odd totals and
// for totals in (hi, 2*lo)).
std::optional<std::vector<int>> split_even_sum(long long total, long long lo,
                                               long long hi);

// How an imbalance of k vertices between the two sides of a dense host gets
// burned off by removing short cycles. Case 1 (k >= 400 r ln n) removes 2k
// vertices from the larger side using cycle lengths in [k/400r, k/200r].
// Case 2 removes one cycle of length `side_cycle_len` (the even number in
// [ln n, ln n + 2)) from the smaller side and side_cycle_len + 2k vertices
// from the larger side using lengths in [ln n, 2 ln n]. A parity singleton,
// when n is odd, is not part of the plan.
struct BalancePlan {
  int balance_case = 0;     // 1 or 2; 0 when k == 0 and n is even
  int side_cycle_len = 0;   // case 2 only
  std::vector<int> lengths; // removed from the larger side
  int piece_bound = 0;      // 400r+1 (case 1) or 200r+1 (case 2)
  bool feasible = false;
  std::string message;
};
BalancePlan plan_balance(long long k, int r, long long n);

// Result of reducing an arbitrary dense coloured host to a robustly matchable
// remainder. Either the host already passes the one-sided check (type1=true,
// no cycles, sides empty), or a family of short monochromatic cycles plus at
// most one singleton is removed so that what is left is a balanced bipartite
// graph G[A,B] passing the two-sided check with margins (mu, 20*mu).
struct StructuralDecomposition {
  bool success = false;
  bool type1 = false;
  Family cycles;                 // balancing cycles, plus the parity singleton
  std::vector<int> side_a;       // vertex ids of the larger side's remainder
  std::vector<int> side_b;       // vertex ids of the smaller side's remainder
  long long k = 0;               // imbalance after the high-degree move
  int balance_case = 0;
  int side_cycle_len = 0;
  std::vector<int> lengths;
  RobmatVerdict host_verdict;    // the type-1 check on the input
  RobmatVerdict h_verdict;       // the final check on the remainder
  std::vector<ClauseRow> rows;
  std::string message;
};

// `seed` drives the sparse-set minimizer and the exact-length cycle searches.
StructuralDecomposition structural_decompose(const ColouredGraph& g,
                                             const ParameterLedger& params,
                                             std::uint64_t seed = 1);

}  // namespace cyclepart
