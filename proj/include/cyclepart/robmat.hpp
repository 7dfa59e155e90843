#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cyclepart/graph.hpp"
#include "cyclepart/params.hpp"

namespace cyclepart {

// Verdict of the robust-2-matchability check.
//
// Type 1 accepts iff delta(H) >= (1/2 - mu)n and every set of
// floor((1/2 - nu)n) vertices spans at least nu*n^2 edges. The sparse-set
// clause is checked exhaustively for n <= 22; above that a greedy-descent
// minimizer with seeded restarts searches for a violator, and the verdict
// carries sparse_exact = false (a reject from the minimizer is still sound:
// it exhibits a concrete violating set).
//
// Type 2 accepts iff H is bipartite with the supplied balanced bipartition,
// delta(H) >= (1/32 - mu)n, and at most (1/64 + mu)n vertices have degree
// below (1/3 - mu)n.
struct RobmatVerdict {
  bool passes = false;
  int type = 0;
  std::string message;

  long long min_degree = 0;
  bool degree_ok = false;

  // Type 1 specifics.
  bool sparse_ok = false;
  bool sparse_exact = false;
  long long sparse_set_size = 0;       // floor((1/2 - nu) n)
  long long sparse_edges_found = 0;    // edge count of the sparsest set seen
  std::vector<int> sparse_witness;     // a violating set when sparse_ok=false

  // Type 2 specifics.
  bool bipartition_ok = false;
  long long exceptional_count = 0;
  bool exceptional_ok = false;
};

RobmatVerdict check_robmat(const Graph& h, const Frac& mu, const Frac& nu,
                           int claimed_type,
                           const std::vector<int>* side_a = nullptr,
                           std::uint64_t minimizer_seed = 1,
                           int minimizer_restarts = 64);

// Sparsest-set search used by the type-1 clause: returns the minimum edge
// count over sets of the given size, and one attaining set. Exhaustive for
// n <= exhaustive_cap, otherwise greedy descent + restarts.
struct SparseSearch {
  long long best_edges = 0;
  std::vector<int> best_set;
  bool exact = false;
};
SparseSearch sparsest_set(const Graph& h, int size, std::uint64_t seed,
                          int restarts, int exhaustive_cap = 22);

// Test predicate for the subgraph-robustness lemma: if h passes (mu, nu)
// then a spanning subgraph with per-vertex degree loss <= eps*n must pass
// (mu+eps, nu-eps) with the same type.
struct MonotoneReport {
  bool spanning_ok = false;       // same vertex set, edge subset
  bool degree_loss_ok = false;    // deg_h(v) - deg_sub(v) <= eps*n
  RobmatVerdict h_verdict;
  RobmatVerdict sub_verdict;
  bool implication_holds = false;  // h passes => sub passes
};
MonotoneReport monotone_robustness(const Graph& h, const Graph& h_sub,
                                   const Frac& mu, const Frac& nu,
                                   const Frac& eps, int claimed_type,
                                   const std::vector<int>* side_a = nullptr);

}  // namespace cyclepart
