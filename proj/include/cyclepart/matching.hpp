#pragma once
#include <array>
#include <vector>

#include "cyclepart/graph.hpp"

namespace cyclepart {

// Simple graph as plain sorted adjacency lists, for instances too large or
// too sparse to justify bitset rows.
struct ListGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  explicit ListGraph(int n_ = 0) : n(n_), adj(n_) {}
  void add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  void sort_lists();
  static ListGraph from(const Graph& g);
};

// Maximum bipartite matching, Hopcroft-Karp. Left vertices 0..nl-1, right
// vertices 0..nr-1, adjacency given from the left side.
class BipartiteMatcher {
 public:
  BipartiteMatcher(int nl, int nr) : nl_(nl), nr_(nr), adj_(nl) {}
  void add_edge(int l, int r) { adj_[l].push_back(r); }
  int solve();  // returns matching size
  const std::vector<int>& match_left() const { return matchL_; }
  const std::vector<int>& match_right() const { return matchR_; }
  // Left vertices reachable by alternating paths from unmatched left
  // vertices (call after solve()). This is a minimum-deficiency Hall set.
  std::vector<int> alternating_reachable_left() const;

 private:
  bool bfs_layers();
  bool try_kuhn(int l);
  int nl_, nr_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> matchL_, matchR_, dist_;
};

// Perfect 2-matching: edge weights in {0,1,2} with weighted degree exactly 2
// at every vertex. `weighted_edges` lists (u, v, weight) for positive weights
// only. When no such weighting exists, `witness` is an independent set S with
// |N(S)| < |S|, which certifies impossibility.
struct TwoMatching {
  bool exists = false;
  std::vector<std::array<int, 3>> weighted_edges;
  std::vector<int> witness;
  bool witness_verified = false;
};

TwoMatching has_perfect_2matching(const ListGraph& g);
TwoMatching has_perfect_2matching(const Graph& g);

// Checks weights: edges exist, weights in {1,2}, weighted degrees all 2.
bool verify_two_matching(const ListGraph& g,
                         const std::vector<std::array<int, 3>>& weighted_edges);

// Checks the failure certificate: S independent and |N(S)| < |S|.
bool verify_two_matching_witness(const ListGraph& g,
                                 const std::vector<int>& witness);

// Exhaustive search for an independent set S with |N(S)| < |S| (n <= 20).
// Returns empty if none exists.
std::vector<int> exhaustive_deficient_set(const ListGraph& g);

// Dinic max-flow on small networks; used by the degree-constrained matching
// routines. Capacities are 64-bit.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n, -1) {}
  // Returns the arc index of the forward arc; the reverse arc is index+1.
  int add_arc(int from, int to, long long cap);
  long long run(int s, int t);
  long long flow_on(int arc) const;  // flow pushed through a forward arc
  // Nodes reachable from s in the residual network (call after run()).
  std::vector<char> min_cut_side(int s) const;

 private:
  struct Arc {
    int to;
    int next;
    long long cap;
  };
  bool bfs(int s, int t);
  long long dfs(int v, int t, long long limit);
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_, iter_;
};

}  // namespace cyclepart
