#include "cyclepart/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace cyclepart {

std::vector<int> mono_component_ids(const ColouredGraph& g, int c) {
  if (c < 1 || c > g.r()) throw std::invalid_argument("colour out of range");
  std::vector<int> id(g.n(), -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (id[s] >= 0) continue;
    id[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      g.for_each_neighbour(v, [&](int u, int ec) {
        if (ec == c && id[u] < 0) {
          id[u] = next;
          stack.push_back(u);
        }
      });
    }
    ++next;
  }
  return id;
}

std::vector<std::vector<int>> mono_components(const ColouredGraph& g, int c) {
  std::vector<int> id = mono_component_ids(g, c);
  int k = id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
  std::vector<std::vector<int>> comps(k);
  for (int v = 0; v < g.n(); ++v) comps[id[v]].push_back(v);
  return comps;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> id(g.n(), -1);
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (id[s] >= 0) continue;
    int cid = static_cast<int>(comps.size());
    comps.emplace_back();
    id[s] = cid;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comps[cid].push_back(v);
      for (int u = g.row(v).find_first(); u >= 0; u = g.row(v).find_next(u + 1))
        if (id[u] < 0) {
          id[u] = cid;
          stack.push_back(u);
        }
    }
    std::sort(comps[cid].begin(), comps[cid].end());
  }
  return comps;
}

namespace {

void mis_branch(const std::vector<std::uint64_t>& adj, std::uint64_t cand,
                int current, int& best) {
  if (current + __builtin_popcountll(cand) <= best) return;
  if (!cand) {
    best = current;
    return;
  }
  // Take any vertex of degree <= 1 within cand greedily; always optimal.
  for (std::uint64_t m = cand; m;) {
    int v = __builtin_ctzll(m);
    m &= m - 1;
    std::uint64_t nb = adj[v] & cand;
    if (__builtin_popcountll(nb) <= 1) {
      mis_branch(adj, cand & ~(nb | (std::uint64_t(1) << v)), current + 1,
                 best);
      return;
    }
  }
  // Branch on a maximum-degree vertex: include it, then exclude it.
  int pick = -1, pick_deg = -1;
  for (std::uint64_t m = cand; m;) {
    int v = __builtin_ctzll(m);
    m &= m - 1;
    int d = __builtin_popcountll(adj[v] & cand);
    if (d > pick_deg) {
      pick_deg = d;
      pick = v;
    }
  }
  std::uint64_t vb = std::uint64_t(1) << pick;
  mis_branch(adj, cand & ~(adj[pick] | vb), current + 1, best);
  mis_branch(adj, cand & ~vb, current, best);
}

}  // namespace

int independence_number(const Graph& g, int cap) {
  if (g.n() > cap || g.n() > 63)
    throw std::invalid_argument("independence_number: graph above size cap");
  std::vector<std::uint64_t> adj(g.n(), 0);
  g.for_each_edge([&](int u, int v) {
    adj[u] |= std::uint64_t(1) << v;
    adj[v] |= std::uint64_t(1) << u;
  });
  std::uint64_t all =
      g.n() == 0 ? 0 : (~std::uint64_t(0) >> (64 - g.n()));
  int best = 0;
  mis_branch(adj, all, 0, best);
  return best;
}

int exact_min_cycle_partition(const ColouredGraph& g, int cap) {
  int n = g.n();
  if (n > cap || n > 20)
    throw std::invalid_argument(
        "exact_min_cycle_partition: graph above size cap");
  if (n == 0) return 0;
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

  // cycleable[S]: S spans a monochromatic cycle (1 vertex, 1 edge, or a
  // Hamilton cycle of G[S] in a single colour).
  std::vector<char> cycleable(std::size_t(1) << n, 0);
  for (int v = 0; v < n; ++v) cycleable[1u << v] = 1;
  g.for_each_edge(
      [&](int u, int v, int) { cycleable[(1u << u) | (1u << v)] = 1; });

  for (int c = 1; c <= g.r(); ++c) {
    std::vector<std::uint32_t> adj(n, 0);
    g.for_each_edge([&](int u, int v, int ec) {
      if (ec == c) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
      }
    });
    // reach[S]: endpoints of Hamilton paths of G_c[S] starting at min(S).
    // Extending only with vertices above min(S) keeps the start canonical.
    std::vector<std::uint32_t> reach(std::size_t(1) << n, 0);
    for (int v = 0; v < n; ++v) reach[1u << v] = 1u << v;
    for (std::uint32_t S = 1; S <= full; ++S) {
      std::uint32_t ends = reach[S];
      if (!ends) continue;
      int s0 = __builtin_ctz(S);
      for (std::uint32_t e = ends; e;) {
        int v = __builtin_ctz(e);
        e &= e - 1;
        std::uint32_t ext = adj[v] & ~S & (~0u << s0);
        for (std::uint32_t x = ext; x;) {
          int u = __builtin_ctz(x);
          x &= x - 1;
          reach[S | (1u << u)] |= 1u << u;
        }
      }
      if (__builtin_popcount(S) >= 3 && (ends & adj[s0])) cycleable[S] = 1;
    }
  }

  std::vector<int> dp(std::size_t(1) << n, n + 1);
  dp[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t low = mask & (~mask + 1);
    for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low) || !cycleable[sub]) continue;
      dp[mask] = std::min(dp[mask], dp[mask & ~sub] + 1);
    }
  }
  return dp[full];
}

namespace {

struct CoverState {
  int universe;
  const std::vector<DynBitset>* sets;
  std::vector<std::vector<int>> covering;  // element -> set indices
  int best;
  std::size_t max_set_size;

  void dfs(DynBitset& covered, int chosen) {
    std::size_t left = universe - covered.count();
    if (left == 0) {
      best = std::min(best, chosen);
      return;
    }
    int lb = chosen + static_cast<int>((left + max_set_size - 1) / max_set_size);
    if (lb >= best) return;
    // Branch on the uncovered element with fewest usable sets.
    int pick = -1;
    std::size_t pick_opts = ~std::size_t(0);
    for (int e = 0; e < universe; ++e) {
      if (covered.test(e)) continue;
      std::size_t opts = 0;
      for (int si : covering[e])
        opts += ((*sets)[si].count_andnot(covered) > 0);
      if (opts == 0) return;  // dead branch (cannot happen at the root)
      if (opts < pick_opts) {
        pick_opts = opts;
        pick = e;
      }
    }
    // Try candidate sets in decreasing order of new coverage.
    std::vector<std::pair<std::size_t, int>> order;
    for (int si : covering[pick]) {
      std::size_t gain = (*sets)[si].count_andnot(covered);
      if (gain > 0) order.emplace_back(gain, si);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (const auto& [gain, si] : order) {
      DynBitset next = covered;
      next |= (*sets)[si];
      dfs(next, chosen + 1);
    }
  }
};

}  // namespace

int exact_set_cover(int universe, const std::vector<DynBitset>& sets) {
  if (universe == 0) return 0;
  CoverState st;
  st.universe = universe;
  st.sets = &sets;
  st.covering.assign(universe, {});
  st.max_set_size = 1;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() != universe)
      throw std::invalid_argument("exact_set_cover: set size mismatch");
    st.max_set_size = std::max(st.max_set_size, sets[i].count());
    for (int e = sets[i].find_first(); e >= 0; e = sets[i].find_next(e + 1))
      st.covering[e].push_back(static_cast<int>(i));
  }
  for (int e = 0; e < universe; ++e)
    if (st.covering[e].empty())
      throw std::invalid_argument("exact_set_cover: uncoverable element");

  // Greedy upper bound seeds the search.
  DynBitset covered(universe);
  int greedy = 0;
  while (covered.count() < static_cast<std::size_t>(universe)) {
    std::size_t best_gain = 0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::size_t gain = sets[i].count_andnot(covered);
      if (gain > best_gain) {
        best_gain = gain;
        best_i = i;
      }
    }
    covered |= sets[best_i];
    ++greedy;
  }
  st.best = greedy;
  DynBitset empty(universe);
  st.dfs(empty, 0);
  return st.best;
}

int exact_min_component_cover(const ColouredGraph& g,
                              const std::vector<int>& targets,
                              std::size_t component_cap) {
  for (int t : targets)
    if (t < 0 || t >= g.n())
      throw std::invalid_argument("target vertex out of range");
  if (targets.empty()) return 0;
  std::vector<int> tid(g.n(), -1);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (tid[targets[i]] >= 0)
      throw std::invalid_argument("duplicate target vertex");
    tid[targets[i]] = static_cast<int>(i);
  }
  int universe = static_cast<int>(targets.size());

  std::vector<DynBitset> sets;
  std::size_t total_components = 0;
  for (int c = 1; c <= g.r(); ++c) {
    auto comps = mono_components(g, c);
    total_components += comps.size();
    if (total_components > component_cap)
      throw std::invalid_argument(
          "exact_min_component_cover: component count above cap");
    for (const auto& comp : comps) {
      DynBitset s(universe);
      for (int v : comp)
        if (tid[v] >= 0) s.set(tid[v]);
      if (s.any()) sets.push_back(std::move(s));
    }
  }
  // Deduplicate identical sets; drop dominated ones when cheap to do so.
  std::sort(sets.begin(), sets.end(), [](const DynBitset& a, const DynBitset& b) {
    return std::lexicographical_compare(
        a.data(), a.data() + a.num_words(), b.data(), b.data() + b.num_words());
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (sets.size() <= 2000) {
    std::vector<char> dominated(sets.size(), 0);
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = 0; j < sets.size(); ++j) {
        if (i == j || dominated[i] || dominated[j]) continue;
        // i is dominated if sets[i] is a subset of sets[j].
        if (sets[i].count_andnot(sets[j]) == 0 &&
            !(sets[i] == sets[j] && i < j))
          dominated[i] = 1;
      }
    std::vector<DynBitset> kept;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (!dominated[i]) kept.push_back(sets[i]);
    sets.swap(kept);
  }
  return exact_set_cover(universe, sets);
}

}  // namespace cyclepart
