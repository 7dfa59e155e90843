#include "cyclepart/matching.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>

namespace cyclepart {

void ListGraph::sort_lists() {
  for (auto& l : adj) std::sort(l.begin(), l.end());
}

ListGraph ListGraph::from(const Graph& g) {
  ListGraph lg(g.n());
  g.for_each_edge([&](int u, int v) { lg.add_edge(u, v); });
  lg.sort_lists();
  return lg;
}

bool BipartiteMatcher::bfs_layers() {
  dist_.assign(nl_, -1);
  std::deque<int> q;
  for (int l = 0; l < nl_; ++l)
    if (matchL_[l] < 0) {
      dist_[l] = 0;
      q.push_back(l);
    }
  bool found_free_right = false;
  while (!q.empty()) {
    int l = q.front();
    q.pop_front();
    for (int r : adj_[l]) {
      int l2 = matchR_[r];
      if (l2 < 0) {
        found_free_right = true;
      } else if (dist_[l2] < 0) {
        dist_[l2] = dist_[l] + 1;
        q.push_back(l2);
      }
    }
  }
  return found_free_right;
}

bool BipartiteMatcher::try_kuhn(int l) {
  for (int r : adj_[l]) {
    int l2 = matchR_[r];
    if (l2 < 0 || (dist_[l2] == dist_[l] + 1 && try_kuhn(l2))) {
      matchL_[l] = r;
      matchR_[r] = l;
      return true;
    }
  }
  dist_[l] = -1;
  return false;
}

int BipartiteMatcher::solve() {
  matchL_.assign(nl_, -1);
  matchR_.assign(nr_, -1);
  int size = 0;
  while (bfs_layers()) {
    for (int l = 0; l < nl_; ++l)
      if (matchL_[l] < 0 && try_kuhn(l)) ++size;
  }
  return size;
}

std::vector<int> BipartiteMatcher::alternating_reachable_left() const {
  std::vector<char> seen(nl_, 0);
  std::deque<int> q;
  for (int l = 0; l < nl_; ++l)
    if (matchL_[l] < 0) {
      seen[l] = 1;
      q.push_back(l);
    }
  while (!q.empty()) {
    int l = q.front();
    q.pop_front();
    for (int r : adj_[l]) {
      int l2 = matchR_[r];
      if (l2 >= 0 && !seen[l2]) {
        seen[l2] = 1;
        q.push_back(l2);
      }
    }
  }
  std::vector<int> out;
  for (int l = 0; l < nl_; ++l)
    if (seen[l]) out.push_back(l);
  return out;
}

bool verify_two_matching(
    const ListGraph& g, const std::vector<std::array<int, 3>>& weighted_edges) {
  std::vector<long long> wdeg(g.n, 0);
  for (const auto& [u, v, w] : weighted_edges) {
    if (u < 0 || u >= g.n || v < 0 || v >= g.n || u == v) return false;
    if (w < 1 || w > 2) return false;
    if (!std::binary_search(g.adj[u].begin(), g.adj[u].end(), v)) return false;
    wdeg[u] += w;
    wdeg[v] += w;
  }
  for (int v = 0; v < g.n; ++v)
    if (wdeg[v] != 2) return false;
  return true;
}

bool verify_two_matching_witness(const ListGraph& g,
                                 const std::vector<int>& witness) {
  if (witness.empty()) return false;
  std::vector<char> in_s(g.n, 0);
  for (int v : witness) {
    if (v < 0 || v >= g.n || in_s[v]) return false;
    in_s[v] = 1;
  }
  std::vector<char> in_n(g.n, 0);
  for (int v : witness)
    for (int u : g.adj[v]) {
      if (in_s[u]) return false;  // not independent
      in_n[u] = 1;
    }
  std::size_t nsize = 0;
  for (int v = 0; v < g.n; ++v) nsize += in_n[v];
  return nsize < witness.size();
}

std::vector<int> exhaustive_deficient_set(const ListGraph& g) {
  if (g.n > 20)
    throw std::invalid_argument("exhaustive_deficient_set: n above cap");
  std::vector<std::uint32_t> adj(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    for (int u : g.adj[v]) adj[v] |= 1u << u;
  std::uint32_t full = (g.n == 0) ? 0 : ((g.n == 32) ? ~0u : (1u << g.n) - 1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint32_t nb = 0;
    bool indep = true;
    for (std::uint32_t m = s; m && indep;) {
      int v = __builtin_ctz(m);
      m &= m - 1;
      if (adj[v] & s) indep = false;
      nb |= adj[v];
    }
    if (indep && __builtin_popcount(nb) < __builtin_popcount(s)) {
      std::vector<int> out;
      for (std::uint32_t m = s; m;) {
        out.push_back(__builtin_ctz(m));
        m &= m - 1;
      }
      return out;
    }
  }
  return {};
}

TwoMatching has_perfect_2matching(const ListGraph& g) {
  // Bipartite double cover: left copy u1 of every vertex, right copy v2,
  // with u1~v2 iff uv is an edge. A perfect matching sigma of the cover
  // projects to the weighting w(uv) = [sigma(u)=v] + [sigma(v)=u], which has
  // weighted degree 2 everywhere; conversely any perfect 2-matching lifts.
  BipartiteMatcher bm(g.n, g.n);
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) bm.add_edge(u, v);
  int size = bm.solve();
  TwoMatching out;
  if (size == g.n) {
    out.exists = true;
    const auto& mL = bm.match_left();
    for (int u = 0; u < g.n; ++u) {
      int v = mL[u];
      if (mL[v] == u) {
        // Mutual pair: weight 2, emitted once by the smaller endpoint.
        if (u < v) out.weighted_edges.push_back({u, v, 2});
      } else {
        out.weighted_edges.push_back({std::min(u, v), std::max(u, v), 1});
      }
    }
    return out;
  }
  // Deficient. Left vertices reachable by alternating paths from unmatched
  // lefts form a Hall set S* with |N(S*)| < |S*|; its members without
  // neighbours inside S* form an independent set with the same property.
  std::vector<int> sstar = bm.alternating_reachable_left();
  std::vector<char> in_star(g.n, 0);
  for (int v : sstar) in_star[v] = 1;
  std::vector<int> s;
  for (int v : sstar) {
    bool clean = true;
    for (int u : g.adj[v])
      if (in_star[u]) {
        clean = false;
        break;
      }
    if (clean) s.push_back(v);
  }
  out.exists = false;
  out.witness = s;
  out.witness_verified = verify_two_matching_witness(g, s);
  if (!out.witness_verified && g.n <= 20) {
    out.witness = exhaustive_deficient_set(g);
    out.witness_verified = verify_two_matching_witness(g, out.witness);
  }
  return out;
}

TwoMatching has_perfect_2matching(const Graph& g) {
  return has_perfect_2matching(ListGraph::from(g));
}

int MaxFlow::add_arc(int from, int to, long long cap) {
  int idx = static_cast<int>(arcs_.size());
  arcs_.push_back({to, head_[from], cap});
  head_[from] = idx;
  arcs_.push_back({from, head_[to], 0});
  head_[to] = idx + 1;
  return idx;
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(head_.size(), -1);
  std::deque<int> q;
  level_[s] = 0;
  q.push_back(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int e = head_[v]; e >= 0; e = arcs_[e].next)
      if (arcs_[e].cap > 0 && level_[arcs_[e].to] < 0) {
        level_[arcs_[e].to] = level_[v] + 1;
        q.push_back(arcs_[e].to);
      }
  }
  return level_[t] >= 0;
}

long long MaxFlow::dfs(int v, int t, long long limit) {
  if (v == t || limit == 0) return limit;
  long long pushed = 0;
  for (int& e = iter_[v]; e >= 0; e = arcs_[e].next) {
    Arc& a = arcs_[e];
    if (a.cap > 0 && level_[a.to] == level_[v] + 1) {
      long long got = dfs(a.to, t, std::min(limit - pushed, a.cap));
      if (got > 0) {
        a.cap -= got;
        arcs_[e ^ 1].cap += got;
        pushed += got;
        if (pushed == limit) return pushed;
      }
    }
  }
  level_[v] = -1;
  return pushed;
}

long long MaxFlow::run(int s, int t) {
  long long total = 0;
  while (bfs(s, t)) {
    iter_ = head_;
    total += dfs(s, t, std::numeric_limits<long long>::max());
  }
  return total;
}

long long MaxFlow::flow_on(int arc) const { return arcs_[arc ^ 1].cap; }

std::vector<char> MaxFlow::min_cut_side(int s) const {
  std::vector<char> side(head_.size(), 0);
  std::deque<int> q;
  side[s] = 1;
  q.push_back(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int e = head_[v]; e >= 0; e = arcs_[e].next)
      if (arcs_[e].cap > 0 && !side[arcs_[e].to]) {
        side[arcs_[e].to] = 1;
        q.push_back(arcs_[e].to);
      }
  }
  return side;
}

}  // namespace cyclepart
