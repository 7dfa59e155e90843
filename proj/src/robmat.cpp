#include "cyclepart/robmat.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyclepart/rng.hpp"

namespace cyclepart {

namespace {

long long edges_within(const Graph& h, const DynBitset& s) {
  long long total = 0;
  for (int v = s.find_first(); v >= 0; v = s.find_next(v + 1))
    total += h.deg_in(v, s);
  return total / 2;
}

SparseSearch sparsest_exhaustive(const Graph& h, int size) {
  int n = h.n();
  std::vector<std::uint32_t> adj(n, 0);
  h.for_each_edge([&](int u, int v) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  });
  SparseSearch out;
  out.exact = true;
  out.best_edges = -1;
  // Gosper's hack over all size-subsets of [n].
  std::uint32_t s = (1u << size) - 1;
  std::uint32_t limit = 1u << n;
  while (s < limit) {
    long long e = 0;
    for (std::uint32_t m = s; m;) {
      int v = __builtin_ctz(m);
      m &= m - 1;
      e += __builtin_popcount(adj[v] & s);
    }
    e /= 2;
    if (out.best_edges < 0 || e < out.best_edges) {
      out.best_edges = e;
      out.best_set.clear();
      for (std::uint32_t m = s; m;) {
        out.best_set.push_back(__builtin_ctz(m));
        m &= m - 1;
      }
      if (e == 0) break;
    }
    std::uint32_t c = s & (~s + 1);
    std::uint32_t r2 = s + c;
    s = (((r2 ^ s) >> 2) / c) | r2;
  }
  return out;
}

// Local descent: swap one vertex out of S for one outside while the spanned
// edge count strictly drops. First-improvement with a swap budget, so a
// descent from a dense random start cannot dominate the whole search.
void descend(const Graph& h, DynBitset& s, long long& edges) {
  int n = h.n();
  std::vector<long long> deg_s(n);
  for (int v = 0; v < n; ++v) deg_s[v] = h.deg_in(v, s);
  long long budget = 4LL * n + 64;
  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    for (int v = s.find_first(); v >= 0 && budget > 0; v = s.find_next(v + 1)) {
      if (deg_s[v] == 0) continue;
      long long best = deg_s[v];
      int best_u = -1;
      for (int u = 0; u < n; ++u) {
        if (u == v || s.test(u)) continue;
        long long cost = deg_s[u] - (h.has_edge(u, v) ? 1 : 0);
        if (cost < best) {
          best = cost;
          best_u = u;
          if (best == 0) break;
        }
      }
      if (best_u < 0) continue;
      edges += best - deg_s[v];
      s.reset(v);
      for (int w = h.row(v).find_first(); w >= 0; w = h.row(v).find_next(w + 1))
        --deg_s[w];
      s.set(best_u);
      for (int w = h.row(best_u).find_first(); w >= 0;
           w = h.row(best_u).find_next(w + 1))
        ++deg_s[w];
      improved = true;
      --budget;
    }
  }
}

}  // namespace

SparseSearch sparsest_set(const Graph& h, int size, std::uint64_t seed,
                          int restarts, int exhaustive_cap) {
  int n = h.n();
  if (size < 0 || size > n)
    throw std::invalid_argument("sparsest_set: bad size");
  SparseSearch out;
  if (size == 0) {
    out.exact = true;
    out.best_edges = 0;
    return out;
  }
  if (n <= exhaustive_cap && n <= 30) return sparsest_exhaustive(h, size);

  out.exact = false;
  out.best_edges = -1;
  // Greedy peel: drop the densest vertex until the target size remains.
  {
    DynBitset s(n);
    s.set_all();
    std::vector<long long> deg_s(n);
    for (int v = 0; v < n; ++v) deg_s[v] = h.deg(v);
    for (int left = n; left > size; --left) {
      int worst = -1;
      for (int v = s.find_first(); v >= 0; v = s.find_next(v + 1))
        if (worst < 0 || deg_s[v] > deg_s[worst]) worst = v;
      s.reset(worst);
      for (int w = h.row(worst).find_first(); w >= 0;
           w = h.row(worst).find_next(w + 1))
        --deg_s[w];
    }
    long long e = edges_within(h, s);
    descend(h, s, e);
    out.best_edges = e;
    out.best_set = s.to_vector();
  }
  // Random restarts only pay off while descents are cheap; at larger sizes
  // the greedy peel carries the search and a handful of restarts suffice.
  if (n > 1200) restarts = std::min(restarts, 4);
  Rng rng(seed);
  for (int t = 0; t < restarts && out.best_edges > 0; ++t) {
    std::vector<int> pick = rng.sample_without_replacement(n, size);
    DynBitset s = DynBitset::from_vector(n, pick);
    long long e = edges_within(h, s);
    descend(h, s, e);
    if (e < out.best_edges) {
      out.best_edges = e;
      out.best_set = s.to_vector();
    }
  }
  std::sort(out.best_set.begin(), out.best_set.end());
  return out;
}

RobmatVerdict check_robmat(const Graph& h, const Frac& mu, const Frac& nu,
                           int claimed_type, const std::vector<int>* side_a,
                           std::uint64_t minimizer_seed,
                           int minimizer_restarts) {
  int n = h.n();
  if (n < 1) throw std::invalid_argument("check_robmat: empty graph");
  if (claimed_type != 1 && claimed_type != 2)
    throw std::invalid_argument("check_robmat: type must be 1 or 2");
  RobmatVerdict v;
  v.type = claimed_type;
  v.min_degree = h.deg(0);
  for (int u = 1; u < n; ++u)
    v.min_degree = std::min<long long>(v.min_degree, h.deg(u));

  if (claimed_type == 1) {
    Frac half_minus_mu = Frac::ratio(1, 2) - mu;
    v.degree_ok = ge_scaled(v.min_degree, half_minus_mu, n);
    Frac half_minus_nu = Frac::ratio(1, 2) - nu;
    long long size = 0;
    if (half_minus_nu.num > 0)
      size = (half_minus_nu.num * static_cast<long long>(n)) / half_minus_nu.den;
    v.sparse_set_size = size;
    if (size <= 0) {
      v.sparse_ok = true;
      v.sparse_exact = true;
    } else {
      SparseSearch ss = sparsest_set(h, static_cast<int>(size), minimizer_seed,
                                     minimizer_restarts);
      v.sparse_exact = ss.exact;
      v.sparse_edges_found = ss.best_edges;
      v.sparse_ok =
          ge_scaled(ss.best_edges, nu, static_cast<long long>(n) * n);
      if (!v.sparse_ok) v.sparse_witness = ss.best_set;
    }
    v.passes = v.degree_ok && v.sparse_ok;
    if (!v.degree_ok)
      v.message = "minimum degree below (1/2-mu)n";
    else if (!v.sparse_ok)
      v.message = "found a sparse set below the nu*n^2 edge bound";
  } else {
    if (!side_a)
      throw std::invalid_argument("check_robmat: type 2 needs a bipartition");
    DynBitset a(n);
    for (int x : *side_a) {
      if (x < 0 || x >= n)
        throw std::invalid_argument("check_robmat: bipartition out of range");
      a.set(x);
    }
    v.bipartition_ok =
        (n % 2 == 0) && (a.count() == static_cast<std::size_t>(n) / 2);
    if (v.bipartition_ok) {
      // Every edge must cross the bipartition.
      h.for_each_edge([&](int u, int w) {
        if (a.test(u) == a.test(w)) v.bipartition_ok = false;
      });
    }
    Frac d_floor = Frac::ratio(1, 32) - mu;
    v.degree_ok = ge_scaled(v.min_degree, d_floor, n);
    Frac big_deg = Frac::ratio(1, 3) - mu;
    long long exceptional = 0;
    for (int u = 0; u < n; ++u)
      if (!ge_scaled(static_cast<long long>(h.deg(u)), big_deg, n))
        ++exceptional;
    v.exceptional_count = exceptional;
    Frac exc_cap = Frac::ratio(1, 64) + mu;
    v.exceptional_ok = le_scaled(exceptional, exc_cap, n);
    v.passes = v.bipartition_ok && v.degree_ok && v.exceptional_ok;
    if (!v.bipartition_ok)
      v.message = "not balanced bipartite with the supplied sides";
    else if (!v.degree_ok)
      v.message = "minimum degree below (1/32-mu)n";
    else if (!v.exceptional_ok)
      v.message = "too many vertices below the (1/3-mu)n degree mark";
  }
  return v;
}

MonotoneReport monotone_robustness(const Graph& h, const Graph& h_sub,
                                   const Frac& mu, const Frac& nu,
                                   const Frac& eps, int claimed_type,
                                   const std::vector<int>* side_a) {
  if (h.n() != h_sub.n())
    throw std::invalid_argument("monotone_robustness: vertex sets differ");
  MonotoneReport rep;
  rep.spanning_ok = true;
  h_sub.for_each_edge([&](int u, int v) {
    if (!h.has_edge(u, v)) rep.spanning_ok = false;
  });
  rep.degree_loss_ok = true;
  for (int v = 0; v < h.n(); ++v) {
    long long loss = static_cast<long long>(h.deg(v)) -
                     static_cast<long long>(h_sub.deg(v));
    if (loss < 0 || !le_scaled(loss, eps, h.n())) rep.degree_loss_ok = false;
  }
  if (!rep.spanning_ok || !rep.degree_loss_ok)
    throw std::invalid_argument(
        "monotone_robustness: h_sub is not a spanning subgraph within the "
        "stated degree loss");
  rep.h_verdict = check_robmat(h, mu, nu, claimed_type, side_a);
  rep.sub_verdict =
      check_robmat(h_sub, mu + eps, nu - eps, claimed_type, side_a);
  rep.implication_holds = !rep.h_verdict.passes || rep.sub_verdict.passes;
  return rep;
}

}  // namespace cyclepart
