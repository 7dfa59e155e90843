#include "cyclepart/rainbow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cyclepart/covers.hpp"

namespace cyclepart {

ColouredGraph proper_colouring_K(int k) {
  if (k < 2) throw std::invalid_argument("need at least 2 vertices");
  std::vector<ColouredGraph::Edge> edges;
  int r;
  if (k % 2 == 0) {
    // Circle method: fix vertex k-1, rotate the rest through k-1 rounds.
    r = k - 1;
    int m = k - 1;
    for (int round = 0; round < m; ++round) {
      edges.push_back({std::min(round, k - 1), std::max(round, k - 1),
                       round + 1});
      for (int j = 1; j <= (k - 2) / 2; ++j) {
        int a = (round + j) % m;
        int b = (round - j % m + m) % m;
        edges.push_back({std::min(a, b), std::max(a, b), round + 1});
      }
    }
  } else {
    // Odd k: k near-perfect matchings, round i leaves vertex i unmatched.
    r = k;
    for (int round = 0; round < k; ++round) {
      for (int j = 1; j <= (k - 1) / 2; ++j) {
        int a = (round + j) % k;
        int b = (round - j % k + k) % k;
        edges.push_back({std::min(a, b), std::max(a, b), round + 1});
      }
    }
  }
  ColouredGraph g(k, r, edges, ColouredGraph::Mode::kBitset);
  std::string why;
  if (!is_properly_coloured(g, &why))
    throw std::logic_error("internal: circle colouring improper: " + why);
  return g;
}

bool is_properly_coloured(const ColouredGraph& g, std::string* why) {
  for (int v = 0; v < g.n(); ++v) {
    std::vector<char> seen(g.r() + 1, 0);
    bool ok = true;
    int bad_colour = 0;
    g.for_each_neighbour(v, [&](int, int c) {
      if (seen[c]) {
        ok = false;
        bad_colour = c;
      }
      seen[c] = 1;
    });
    if (!ok) {
      if (why)
        *why = "colour " + std::to_string(bad_colour) +
               " repeats at vertex " + std::to_string(v);
      return false;
    }
  }
  return true;
}

namespace {

struct ExactState {
  const std::vector<ColouredGraph::Edge>* edges;
  int n;
  int target;
  unsigned free_mask;        // vertices not yet matched
  std::uint64_t colour_mask; // colours already used
  std::vector<ColouredGraph::Edge> current, best;

  bool dfs(int v0) {
    if (static_cast<int>(current.size()) >= target) {
      best = current;
      return true;
    }
    // Find the smallest free vertex; it is either skipped or matched here,
    // so every matching is visited exactly once.
    int u = v0;
    while (u < n && !(free_mask >> u & 1)) ++u;
    if (u == n) return false;
    // Bound: even matching every remaining vertex cannot reach the target.
    int remaining = __builtin_popcount(free_mask >> u);
    if (static_cast<int>(current.size()) + remaining / 2 < target) return false;
    for (const auto& e : *edges) {
      if (e.u != u && e.v != u) continue;
      int w = e.u == u ? e.v : e.u;
      if (!(free_mask >> w & 1)) continue;
      if (colour_mask >> e.colour & 1) continue;
      free_mask &= ~(1u << u);
      free_mask &= ~(1u << w);
      colour_mask |= std::uint64_t(1) << e.colour;
      current.push_back(e);
      if (dfs(u + 1)) return true;
      current.pop_back();
      colour_mask &= ~(std::uint64_t(1) << e.colour);
      free_mask |= 1u << u;
      free_mask |= 1u << w;
    }
    free_mask &= ~(1u << u);  // leave u unmatched
    bool hit = dfs(u + 1);
    free_mask |= 1u << u;
    return hit;
  }
};

std::optional<RainbowMatching> rainbow_exact(const ColouredGraph& g,
                                             int target) {
  if (g.n() > 16)
    throw std::invalid_argument("exact rainbow mode capped at 16 vertices");
  if (g.r() > 62)
    throw std::invalid_argument("exact rainbow mode capped at 62 colours");
  auto edges = g.edge_list();
  ExactState st;
  st.edges = &edges;
  st.n = g.n();
  st.target = target;
  st.free_mask = (g.n() == 32 ? ~0u : (1u << g.n()) - 1);
  st.colour_mask = 0;
  if (target <= 0) return RainbowMatching{};
  if (st.dfs(0)) return RainbowMatching{st.best};
  return std::nullopt;
}

std::optional<RainbowMatching> rainbow_heuristic(const ColouredGraph& g,
                                                 int target) {
  if (target <= 0) return RainbowMatching{};
  auto edges = g.edge_list();
  std::vector<char> matched(g.n(), 0);
  std::vector<char> used(g.r() + 1, 0);
  std::vector<ColouredGraph::Edge> m;

  auto grow = [&]() {
    bool any = false;
    for (const auto& e : edges) {
      if (matched[e.u] || matched[e.v] || used[e.colour]) continue;
      matched[e.u] = matched[e.v] = 1;
      used[e.colour] = 1;
      m.push_back(e);
      any = true;
      if (static_cast<int>(m.size()) >= target) return any;
    }
    return any;
  };
  grow();
  // Swap search: drop one edge, regrow greedily; keep any strict improvement.
  for (int pass = 0; pass < 20 && static_cast<int>(m.size()) < target; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < m.size() && !improved; ++i) {
      auto saved = m;
      auto e = m[i];
      matched[e.u] = matched[e.v] = 0;
      used[e.colour] = 0;
      m.erase(m.begin() + i);
      grow();
      if (m.size() > saved.size()) {
        improved = true;
      } else {
        m = saved;
        std::fill(matched.begin(), matched.end(), 0);
        std::fill(used.begin(), used.end(), 0);
        for (const auto& me : m) {
          matched[me.u] = matched[me.v] = 1;
          used[me.colour] = 1;
        }
      }
    }
    if (!improved) break;
  }
  if (static_cast<int>(m.size()) >= target) return RainbowMatching{m};
  return std::nullopt;
}

}  // namespace

std::optional<RainbowMatching> rainbow_matching(const ColouredGraph& g,
                                                int target_size,
                                                RainbowMode mode) {
  std::string why;
  if (!is_properly_coloured(g, &why))
    throw std::invalid_argument("host not properly coloured: " + why);
  if (mode == RainbowMode::kExact) return rainbow_exact(g, target_size);
  return rainbow_heuristic(g, target_size);
}

std::vector<RainbowMatching> enumerate_rainbow_matchings(
    const ColouredGraph& g, int size, std::size_t cap) {
  std::string why;
  if (!is_properly_coloured(g, &why))
    throw std::invalid_argument("host not properly coloured: " + why);
  auto edges = g.edge_list();  // ascending by (u, v)
  std::vector<RainbowMatching> out;
  std::vector<ColouredGraph::Edge> current;
  std::vector<char> matched(g.n(), 0);
  std::vector<char> used(g.r() + 1, 0);

  // Edges are chosen in ascending list order, so each matching appears once.
  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    if (static_cast<int>(current.size()) == size) {
      if (out.size() >= cap)
        throw std::runtime_error("rainbow matching enumeration cap exceeded");
      out.push_back(RainbowMatching{current});
      return;
    }
    std::size_t need = static_cast<std::size_t>(size) - current.size();
    for (std::size_t i = from; i + need <= edges.size(); ++i) {
      const auto& e = edges[i];
      if (matched[e.u] || matched[e.v] || used[e.colour]) continue;
      matched[e.u] = matched[e.v] = 1;
      used[e.colour] = 1;
      current.push_back(e);
      dfs(i + 1);
      current.pop_back();
      matched[e.u] = matched[e.v] = 0;
      used[e.colour] = 0;
    }
  };
  if (size >= 0) dfs(0);
  return out;
}

std::optional<RainbowMatching> rainbow_survives_deletion(
    const ColouredGraph& k, const std::vector<std::pair<int, int>>& deleted,
    int target_size, RainbowMode mode) {
  std::vector<ColouredGraph::Edge> kept;
  for (const auto& e : k.edge_list()) {
    bool gone = false;
    for (const auto& [u, v] : deleted)
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) gone = true;
    if (!gone) kept.push_back(e);
  }
  ColouredGraph h(k.n(), k.r(), kept, ColouredGraph::Mode::kBitset);

  // Smallest eps (as t/n) whose edge-count hypothesis the survivor meets,
  // then one peeling round at that eps.
  const long long n = h.n();
  const long long e2 = 2 * static_cast<long long>(h.num_edges());
  long long deficit = n * n - e2;
  long long t = 0;
  while (t * t < deficit) ++t;
  Frac eps = Frac::ratio(t, n);
  Graph skeleton = h.union_subgraph();
  MinDegreeResult core = min_degree_subgraph(skeleton, eps);

  std::vector<int> old_ids;
  ColouredGraph inner = h.induced(core.keep, &old_ids);
  auto found = rainbow_matching(inner, target_size, mode);
  if (!found) return std::nullopt;
  for (auto& e : found->edges) {
    e.u = old_ids[e.u];
    e.v = old_ids[e.v];
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  return found;
}

}  // namespace cyclepart
