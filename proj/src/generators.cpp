#include "cyclepart/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cyclepart/bitset.hpp"
#include "cyclepart/robmat.hpp"
#include "cyclepart/rng.hpp"
#include "cyclepart/structural.hpp"

namespace cyclepart {
namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool connected(const Graph& g) {
  int n = g.n();
  if (n == 0) return true;
  DynBitset seen(n);
  std::vector<int> queue{0};
  seen.set(0);
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    const DynBitset& row = g.row(v);
    for (int u = row.find_next(0); u >= 0; u = row.find_next(u + 1))
      if (!seen.test(u)) {
        seen.set(u);
        queue.push_back(u);
      }
  }
  return seen.count() == static_cast<std::size_t>(n);
}

Graph random_bipartite(int n, double p, Rng& rng) {
  if (n % 2 != 0) throw std::invalid_argument("bipartite host needs even n");
  Graph g(n);
  int half = n / 2;
  for (int u = 0; u < half; ++u)
    for (int v = half; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

}  // namespace

Graph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

ColouredGraph random_coloured_graph(int n, int r, double p,
                                    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ColouredGraph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.05) + 16);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.push_back({u, v, rng.uniform_int(1, r)});
  return ColouredGraph(n, r, edges);
}

ColouredGraph mono_complete(int n, int r, int colour) {
  if (colour < 1 || colour > r) throw std::invalid_argument("bad colour");
  std::vector<ColouredGraph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, colour});
  return ColouredGraph(n, r, edges);
}

ColouredGraph blowup_host(int m, long long w, int r,
                          const std::vector<BlowupPair>& pairs,
                          std::uint64_t seed) {
  Rng rng(seed);
  long long n = m * w;
  std::vector<ColouredGraph::Edge> edges;
  for (const BlowupPair& pr : pairs) {
    if (pr.i < 1 || pr.j < 1 || pr.i > m || pr.j > m || pr.i == pr.j)
      throw std::invalid_argument("bad blow-up pair");
    if (pr.colour < 1 || pr.colour > r)
      throw std::invalid_argument("bad blow-up colour");
    long long a0 = (pr.i - 1) * w, b0 = (pr.j - 1) * w;
    for (long long a = a0; a < a0 + w; ++a)
      for (long long b = b0; b < b0 + w; ++b)
        if (rng.bernoulli(pr.density))
          edges.push_back({static_cast<int>(a), static_cast<int>(b),
                           pr.colour});
  }
  return ColouredGraph(static_cast<int>(n), r, edges);
}

std::vector<std::vector<int>> consecutive_clusters(int m, long long w) {
  std::vector<std::vector<int>> clusters(m);
  for (int i = 0; i < m; ++i) {
    clusters[i].resize(w);
    for (long long t = 0; t < w; ++t)
      clusters[i][t] = static_cast<int>(i * w + t);
  }
  return clusters;
}

ClusterPartition make_partition(const ColouredGraph& host,
                                std::vector<std::vector<int>> clusters,
                                std::vector<int> v0, const Frac& eps,
                                const Frac& d) {
  ClusterPartition cp;
  cp.host = &host;
  cp.clusters = std::move(clusters);
  cp.v0 = std::move(v0);
  cp.eps = eps;
  cp.d = d;
  cp.finalize();
  return cp;
}

PlantedTwoStage planted_two_stage(int m, long long w, int k_request, int holes,
                                  std::uint64_t seed) {
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("m must be even >= 2");
  if (holes < 0 || holes > m / 2)
    throw std::invalid_argument("at most one hole per cluster");
  // The balancing plan takes the short-side length from ln n while n depends
  // on that length; iterate to the fixed point, then grow the surplus until
  // the long side's removal total splits into even parts within the window.
  int k = std::max(0, k_request);
  long long ell = 4;
  for (;;) {
    ell = 4;
    for (int it = 0; it < 8; ++it) {
      long long n = m * w + 2 * k + 2 * ell;
      double ln_n = std::log(static_cast<double>(n));
      long long next = 2 * static_cast<long long>(std::ceil(ln_n / 2));
      if (next < 4) next = 4;
      if (next == ell) break;
      ell = next;
    }
    if (k == 0) break;
    long long n = m * w + 2 * k + 2 * ell;
    long long hi = 2 * static_cast<long long>(
                           std::floor(std::log(static_cast<double>(n))));
    if (hi < ell) hi = ell;
    if (split_even_sum(ell + 2 * k, ell, hi)) break;
    ++k;
  }

  PlantedTwoStage out;
  out.m = m;
  out.w = w;
  out.k = k;
  out.side_len = static_cast<int>(ell);
  out.n = m * w + 2 * k + 2 * ell;

  Rng rng(seed);
  int half = m / 2;
  for (int t = 0; t < holes; ++t) {
    int i = 1 + t, j = half + 1 + t;
    int u = static_cast<int>((i - 1) * w) + rng.uniform_int(0, static_cast<int>(w) - 1);
    int v = static_cast<int>((j - 1) * w) + rng.uniform_int(0, static_cast<int>(w) - 1);
    out.holes.push_back({u, v});
  }

  std::vector<ColouredGraph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(half) * half * w * w +
                static_cast<std::size_t>(out.n - m * w) * (m * w / 2 + 32));
  for (int i = 1; i <= half; ++i)
    for (int j = half + 1; j <= m; ++j) {
      int colour = 1 + (i + j) % 2;
      long long a0 = (i - 1) * w, b0 = (j - 1) * w;
      for (long long a = a0; a < a0 + w; ++a)
        for (long long b = b0; b < b0 + w; ++b) {
          bool skip = false;
          for (const auto& h : out.holes)
            if (h[0] == a && h[1] == b) skip = true;
          if (!skip)
            edges.push_back(
                {static_cast<int>(a), static_cast<int>(b), colour});
        }
    }
  long long px0 = m * w, px1 = px0 + 2 * k + ell;  // long-side pocket
  long long py0 = px1, py1 = out.n;                // short-side pocket
  for (long long a = px0; a < px1; ++a)
    for (long long b = a + 1; b < px1; ++b)
      edges.push_back({static_cast<int>(a), static_cast<int>(b), 1});
  for (long long a = py0; a < py1; ++a)
    for (long long b = a + 1; b < py1; ++b)
      edges.push_back({static_cast<int>(a), static_cast<int>(b), 1});
  for (long long a = px0; a < px1; ++a)
    for (long long b = half * w; b < m * w; ++b)
      edges.push_back({static_cast<int>(a), static_cast<int>(b), 2});
  for (long long a = py0; a < py1; ++a)
    for (long long b = 0; b < half * w; ++b)
      edges.push_back({static_cast<int>(a), static_cast<int>(b), 2});

  out.g = ColouredGraph(static_cast<int>(out.n), 2, edges);
  out.clusters = consecutive_clusters(m, w);
  for (long long v = px0; v < out.n; ++v)
    out.pockets.push_back(static_cast<int>(v));
  return out;
}

RobmatHost robmat_host(int type, int n, const Frac& mu, const Frac& nu,
                       std::uint64_t seed, int max_attempts) {
  if (type != 1 && type != 2) throw std::invalid_argument("type must be 1 or 2");
  if (type == 2 && n % 2 != 0)
    throw std::invalid_argument("type 2 host needs even n");
  RobmatHost out;
  if (type == 2)
    for (int v = 0; v < n / 2; ++v) out.side_a.push_back(v);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(mix(seed, attempt));
    Graph g = type == 1 ? random_graph(n, 0.75, rng.next_u64())
                        : random_bipartite(n, 0.85, rng);
    RobmatVerdict verdict =
        check_robmat(g, mu, nu, type, type == 2 ? &out.side_a : nullptr,
                     mix(seed, 1000 + attempt));
    ++out.attempts;
    if (verdict.passes) {
      out.g = std::move(g);
      return out;
    }
  }
  throw std::runtime_error("no accepted host within the attempt budget");
}

BInstance b_instance(int type, int n, std::uint64_t seed) {
  if (type != 1 && type != 2) throw std::invalid_argument("type must be 1 or 2");
  if (type == 2 && n % 2 != 0)
    throw std::invalid_argument("type 2 instance needs even n");
  BInstance out;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 50)
      throw std::runtime_error("no connected host within the attempt budget");
    Rng rng(mix(seed, attempt));
    Graph g = type == 1 ? random_graph(n, 0.6, rng.next_u64())
                        : random_bipartite(n, 0.7, rng);
    if (!connected(g)) continue;
    out.h = std::move(g);
    break;
  }
  if (type == 2)
    for (int v = 0; v < n / 2; ++v) out.side_a.push_back(v);
  // A planted weighting realises b exactly, so a perfect b-matching exists.
  Rng wrng(mix(seed, 777));
  out.b.assign(n, 0);
  out.h.for_each_edge([&](int u, int v) {
    long long omega = wrng.uniform_int(8, 12);
    out.b[u] += omega;
    out.b[v] += omega;
  });
  long long b_min = out.b[0], b_max = out.b[0];
  for (long long x : out.b) {
    b_min = std::min(b_min, x);
    b_max = std::max(b_max, x);
  }
  out.b_max = b_max;
  out.gamma = Frac::ratio(b_max - b_min, b_max);
  return out;
}

EgpInstance egp_instance(int r, int nb, std::uint64_t seed) {
  if (r < 1 || r > 3) throw std::invalid_argument("r must be in [1,3]");
  int na = 40 * nb;
  int block = na / 4;
  Rng rng(seed);
  std::vector<ColouredGraph::Edge> edges;
  for (int idx = 0; idx < nb; ++idx) {
    int b = na + idx;
    int colour = 1 + idx % r;
    int lo = (colour - 1) * block;
    // Hub picks give every same-coloured pair a large codegree; the picks
    // outside the hub keep the degree clause comfortable.
    for (int off : rng.sample_without_replacement(block, na / 8))
      edges.push_back({lo + off, b, colour});
    for (int o : rng.sample_without_replacement(na - block, na / 24)) {
      int a = o < lo ? o : o + block;
      edges.push_back({a, b, colour});
    }
  }
  EgpInstance out;
  out.g = ColouredGraph(na + nb, r, edges);
  for (int a = 0; a < na; ++a) out.a_side.push_back(a);
  for (int idx = 0; idx < nb; ++idx) out.b_side.push_back(na + idx);
  out.opts = {40, 10, 40};
  return out;
}

}  // namespace cyclepart
