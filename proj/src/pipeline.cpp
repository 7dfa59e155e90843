#include "cyclepart/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclepart/bmatching.hpp"
#include "cyclepart/covers.hpp"
#include "cyclepart/matching.hpp"
#include "cyclepart/pairpaths.hpp"
#include "cyclepart/robmat.hpp"
#include "cyclepart/sampling.hpp"

namespace cyclepart {
namespace {

std::string itos(long long v) { return std::to_string(v); }

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return std::string(buf);
}

long long floor_scaled(const Frac& f, long long scale) {
  __int128 p = static_cast<__int128>(f.num) * scale;
  long long q = static_cast<long long>(p / f.den);
  if (p < 0 && p % f.den != 0) --q;
  return q;
}

// Largest t in [0, scale] with t <= f^(1/root) * scale.
long long floor_root_scaled(const Frac& f, int root, long long scale) {
  long long lo = 0, hi = scale;
  while (lo < hi) {
    long long mid = (lo + hi + 1) / 2;
    if (cmp_root_scaled(mid, Frac(1), f, root, scale) <= 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Rational just below 2*sqrt(eps); the sampling probability of the cover and
// reserve rounds. Rounding down keeps the per-cluster sample caps inside the
// sqrt(eps)-scaled bounds checked later.
Frac sample_probability(const Frac& eps) {
  long double v =
      2.0L * sqrtl(static_cast<long double>(eps.num) / eps.den);
  long long num = static_cast<long long>(v * 1000000000.0L);
  if (num < 1) num = 1;
  if (num > 999999999) num = 999999999;
  return Frac::ratio(num, 1000000000);
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

// One cluster-graph edge that survived the large-component filter, plus all
// bookkeeping the later stages attach to it.
struct ClusterEdge {
  int i = 0, j = 0;  // clusters, 1-based, i < j
  int colour = 0;
  int comp = -1;         // skeleton component id (colour-aware)
  int weight = 0;        // 2-matching weight, 0 = not a matching edge
  long long omega0 = 0;  // b-matching weight
  long long omega = 0;   // combined weight
  bool last_i = false, last_j = false;  // last matching edge at i / at j
  int rep_u = -1, rep_v = -1;           // representatives, rep_u in V_i
  std::vector<int> conn;      // connector interior after rep_v, cycle order
  std::vector<int> realized;  // interior spliced between rep_u and rep_v
};

}  // namespace

PartitionResult partition_robmat(const ColouredGraph& h,
                                 const std::vector<int>* side_a,
                                 const ClusterPartition& cp,
                                 const ParameterLedger& params,
                                 std::uint64_t seed) {
  if (cp.host != &h)
    throw std::invalid_argument("cluster partition built for a different host");
  PartitionResult res;
  const int n = h.n();
  const int r = h.r();
  const int m = cp.m();
  const long long w = cp.cluster_size();
  const Frac mu = params.mu;
  const Frac nu = params.nu;
  const Frac eps = cp.eps;  // resolution of the supplied partition
  const int claimed_type = side_a ? 2 : 1;
  {
    Frac bound = (Frac(1) / mu + Frac(200)) * Frac(static_cast<long long>(r) * r);
    res.piece_bound = floor_scaled(bound, 1);
  }

  res.stages.reserve(12);
  auto stage = [&](int idx, const char* name) -> StageReport& {
    res.stages.push_back(StageReport{});
    res.stages.back().index = idx;
    res.stages.back().name = name;
    return res.stages.back();
  };
  auto add = [&](StageReport& st, const std::string& name,
                 const std::string& req, const std::string& act, bool sat,
                 bool gating) {
    st.rows.push_back(ClauseRow{name, req, act, sat, gating});
    if (gating && !sat && st.ok) {
      st.ok = false;
      if (st.message.empty()) st.message = name + ": " + act;
    }
  };
  auto count = [&](StageReport& st, const std::string& name, long long v) {
    st.counts.emplace_back(name, v);
  };
  auto bail = [&](StageReport& st, const std::string& msg) -> PartitionResult& {
    st.ok = false;
    if (st.message.empty()) st.message = msg;
    res.message = fmt("stage %d (%s): %s", st.index, st.name.c_str(),
                      st.message.c_str());
    return res;
  };
  auto settle = [&](StageReport& st) {
    return st.ok ? true : (bail(st, st.message), false);
  };

  // ---- stage 0: preconditions on the host and the partition ----
  StageReport& s0 = stage(0, "preconditions");
  DynBitset side_mask(n);
  std::vector<int> a_clusters0, b_clusters0;  // 0-based cluster ids per side
  {
    add(s0, "margin-order", "20 mu <= nu",
        "mu = " + mu.str() + ", nu = " + nu.str(),
        cmp(mu * Frac(20), nu) <= 0, true);
    add(s0, "ledger-accepted", "every gating ledger clause holds",
        params.gating_ok ? "ledger ok"
                         : "ledger rejected (strict mode at this scale)",
        params.gating_ok, true);
    if (side_a) {
      for (int v : *side_a) side_mask.set(v);
      bool pure = true;
      int off = -1;
      for (int i = 1; i <= m && pure; ++i) {
        std::size_t in_a = cp.mask(i).count_and(side_mask);
        if (in_a == cp.mask(i).count())
          a_clusters0.push_back(i - 1);
        else if (in_a == 0)
          b_clusters0.push_back(i - 1);
        else {
          pure = false;
          off = i;
        }
      }
      add(s0, "cluster-sides", "every cluster lies inside one side",
          pure ? "all pure" : "cluster " + itos(off) + " straddles the sides",
          pure, true);
      if (pure)
        add(s0, "side-cluster-balance",
            "equally many clusters on each side",
            itos(a_clusters0.size()) + " vs " + itos(b_clusters0.size()),
            a_clusters0.size() == b_clusters0.size(), true);
    }
    Graph union_g = h.union_subgraph();
    RobmatVerdict pre =
        check_robmat(union_g, mu, nu, claimed_type, side_a, mix(seed, 1));
    add(s0, "host-robustly-matchable",
        fmt("type-%d check with margins (mu, nu)", claimed_type), pre.message,
        pre.passes, true);
    add(s0, "resolution-vs-mu", "cp.eps <= mu/2",
        "cp.eps = " + eps.str() + ", mu = " + mu.str(),
        cmp(eps, mu / Frac(2)) <= 0, false);
    add(s0, "density-vs-mu", "cp.d <= mu/r",
        "cp.d = " + cp.d.str(), cmp(cp.d, mu / Frac(r)) <= 0, false);
    add(s0, "resolution-vs-ledger", "cp.eps matches the ledger eps",
        "cp.eps = " + eps.str() + ", ledger eps = " + params.eps.str(),
        cmp(eps, params.eps) == 0, false);
  }
  if (!settle(s0)) return res;

  // ---- stage 1: reduced graph, large monochromatic components ----
  StageReport& s1 = stage(1, "reduced-graph");
  ReducedGraph rg = build_reduced(cp, RegularityMode::kTrusted);
  ReducedGraph rgh = rg;  // edges in large components only
  std::vector<ClusterEdge> edges;
  int comp_total = 0;
  {
    long long dropped = 0, kept = 0;
    std::vector<int> loss(m + 1, 0);
    // Per colour: components of the reduced colour class; an edge survives
    // iff its component carries at least (mu/r) m clusters.
    const Frac comp_thr = mu / Frac(r);
    for (int c = 1; c <= r; ++c) {
      Dsu dsu(m + 1);
      std::vector<char> incident(m + 1, 0);
      for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
          if (rg.colour[i][j] == c) {
            dsu.join(i, j);
            incident[i] = incident[j] = 1;
          }
      std::vector<int> order(m + 1, 0);
      for (int i = 1; i <= m; ++i)
        if (incident[i]) ++order[dsu.find(i)];
      for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
          if (rg.colour[i][j] == c &&
              !ge_scaled(order[dsu.find(i)], comp_thr, m)) {
            rgh.colour[i][j] = rgh.colour[j][i] = 0;
            rgh.density[i][j] = rgh.density[j][i] = Frac(0);
            ++dropped;
            ++loss[i];
            ++loss[j];
          }
    }
    // Surviving edges in input order: ascending (i, j).
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j)
        if (rgh.colour[i][j] != 0) {
          ClusterEdge e;
          e.i = i;
          e.j = j;
          e.colour = rgh.colour[i][j];
          edges.push_back(e);
          ++kept;
        }
    // Colour-aware components of the surviving edges, for the skeleton stage.
    {
      // Join on (cluster, colour) pairs so different colours at one cluster
      // stay separate.
      Dsu dsu(m * r + 1);
      auto key = [&](int cluster, int c) { return (cluster - 1) * r + (c - 1); };
      for (const ClusterEdge& e : edges)
        dsu.join(key(e.i, e.colour), key(e.j, e.colour));
      std::map<int, int> comp_id;
      for (ClusterEdge& e : edges) {
        int root = dsu.find(key(e.i, e.colour));
        auto it = comp_id.find(root);
        if (it == comp_id.end())
          it = comp_id.emplace(root, comp_total++).first;
        e.comp = it->second;
      }
    }
    int worst_loss = 0, worst_at = 0;
    for (int i = 1; i <= m; ++i)
      if (loss[i] > worst_loss) {
        worst_loss = loss[i];
        worst_at = i;
      }
    add(s1, "edge-survival",
        "per-cluster edge loss to small components <= mu*m",
        worst_loss == 0 ? "no loss"
                        : fmt("cluster %d lost %d edges", worst_at, worst_loss),
        le_scaled(worst_loss, mu, m), true);
    long long comp_bound = floor_scaled(Frac(static_cast<long long>(r) * r) / mu, 1);
    add(s1, "component-count",
        "<= r^2/mu monochromatic components = " + itos(comp_bound),
        itos(comp_total), comp_total <= comp_bound, true);
    {
      std::vector<int> side0;
      for (int i : a_clusters0) side0.push_back(i);
      RobmatVerdict rv = check_robmat(
          rgh.skeleton(), mu * Frac(3), nu - mu * Frac(2), claimed_type,
          side_a ? &side0 : nullptr, mix(seed, 11));
      add(s1, "cluster-graph-robust",
          fmt("type-%d check with margins (3mu, nu-2mu)", claimed_type),
          rv.message, rv.passes, false);
    }
    count(s1, "clusters", m);
    count(s1, "edges-kept", kept);
    count(s1, "edges-dropped", dropped);
    count(s1, "components", comp_total);
    if (edges.empty()) return bail(s1, "no cluster edge survived the filter");
  }
  if (!settle(s1)) return res;

  // ---- stage 2: perfect 2-matching on the cluster graph ----
  StageReport& s2 = stage(2, "cluster-2-matching");
  std::vector<int> deg_m(m + 1, 0);
  {
    Graph skel = rgh.skeleton();
    TwoMatching tm = has_perfect_2matching(skel);
    if (!tm.exists) {
      std::string wit = "witness clusters:";
      for (int v : tm.witness) wit += " " + itos(v + 1);
      add(s2, "matching-exists",
          "a perfect 2-matching of the cluster graph exists", wit, false,
          true);
      return bail(s2, s2.message);
    }
    add(s2, "matching-exists",
        "a perfect 2-matching of the cluster graph exists",
        itos(tm.weighted_edges.size()) + " weighted edges", true, true);
    bool valid =
        verify_two_matching(ListGraph::from(skel), tm.weighted_edges);
    add(s2, "matching-valid", "weights in {1,2}, weighted degree 2 everywhere",
        valid ? "verified" : "re-check failed", valid, true);
    for (const auto& we : tm.weighted_edges) {
      int i = we[0] + 1, j = we[1] + 1;
      if (i > j) std::swap(i, j);
      for (ClusterEdge& e : edges)
        if (e.i == i && e.j == j) e.weight = we[2];
      deg_m[i] += 1;
      deg_m[j] += 1;
    }
    // Mark, per cluster, the last matching edge in input order.
    std::vector<int> last_edge(m + 1, -1);
    for (std::size_t t = 0; t < edges.size(); ++t)
      if (edges[t].weight > 0) {
        last_edge[edges[t].i] = static_cast<int>(t);
        last_edge[edges[t].j] = static_cast<int>(t);
      }
    for (std::size_t t = 0; t < edges.size(); ++t) {
      edges[t].last_i = last_edge[edges[t].i] == static_cast<int>(t);
      edges[t].last_j = last_edge[edges[t].j] == static_cast<int>(t);
    }
    long long msize = 0;
    for (const ClusterEdge& e : edges)
      if (e.weight > 0) ++msize;
    count(s2, "matching-edges", msize);
  }
  if (!settle(s2)) return res;

  // Monochromatic neighbourhood graphs; every later search runs on these.
  std::vector<Graph> mono(r + 1);
  for (int c = 1; c <= r; ++c) mono[c] = h.mono_subgraph(c);

  // ---- stage 3: bad vertices and their cover ----
  StageReport& s3 = stage(3, "bad-vertex-cover");
  DynBitset bad(n);
  Family cover_pieces;
  DynBitset cover_mask(n);
  const Frac p = sample_probability(eps);
  {
    for (int v : cp.v0) bad.set(v);
    for (const ClusterEdge& e : edges) {
      if (e.weight == 0) continue;
      DynBitset ti = typical_vertices(cp, e.i, e.j, e.colour);
      DynBitset tj = typical_vertices(cp, e.j, e.i, e.colour);
      DynBitset bi = cp.mask(e.i);
      bi.subtract(ti);
      DynBitset bj = cp.mask(e.j);
      bj.subtract(tj);
      bad |= bi;
      bad |= bj;
    }
    const long long nbad = static_cast<long long>(bad.count());
    {
      long long worst = 0;
      int at = 0;
      for (int i = 1; i <= m; ++i) {
        long long c = static_cast<long long>(bad.count_and(cp.mask(i)));
        if (c > worst) {
          worst = c;
          at = i;
        }
      }
      add(s3, "bad-per-cluster", "|bad in V_i| <= 2 eps |V_i|",
          worst == 0 ? "none" : fmt("cluster %d holds %lld", at, worst),
          le_scaled(worst, eps * Frac(2), w), false);
      add(s3, "bad-total", "|bad| <= 3 eps n", itos(nbad),
          le_scaled(nbad, eps * Frac(3), n), false);
    }
    count(s3, "bad-vertices", nbad);
    if (nbad > 0) {
      SampleSet smp =
          sample_with_properties(h, cp, bad, p, mix(seed, 3), 50, true);
      for (ClauseRow row : smp.rows) {
        row.name = "sample-" + row.name;
        add(s3, row.name, row.requirement, row.actual, row.satisfied, false);
      }
      add(s3, "sample-found", "a sample with the four clauses, p = " + p.str(),
          smp.message, smp.ok, true);
      if (!smp.ok) return bail(s3, s3.message);
      const long long na = static_cast<long long>(smp.a.count());
      {
        long long r3 = 1000000LL * r * r * r;
        add(s3, "sample-vs-bad-ratio", "|A| >= 10^6 r^3 |bad|",
            fmt("|A| = %lld, |bad| = %lld", na, nbad), na >= r3 * nbad,
            false);
      }
      EgpOptions opts;
      opts.size_ratio = 1;
      opts.degree_div = 100;
      opts.codegree_div = 100LL * r;
      EgpResult egp = egp_cover(h, smp.a.to_vector(), bad.to_vector(), opts);
      for (ClauseRow row : egp.rows) {
        row.name = "cover-" + row.name;
        add(s3, row.name, row.requirement, row.actual, row.satisfied, false);
      }
      add(s3, "cover-found", "bad vertices covered by cycles and edges",
          egp.message, egp.success, true);
      if (!egp.success) return bail(s3, s3.message);
      cover_pieces = egp.pieces;
      for (const Piece& pc : cover_pieces)
        for (int v : pc.vertices) cover_mask.set(v);
      {
        DynBitset outside = cover_mask;
        outside.subtract(smp.a);
        outside.subtract(bad);
        add(s3, "cover-inside-sample", "V(cover) inside sample + bad",
            outside.none() ? "yes"
                           : itos(outside.count()) + " vertices outside",
            outside.none(), true);
        DynBitset missing = bad;
        missing.subtract(cover_mask);
        add(s3, "bad-covered", "every bad vertex covered",
            missing.none() ? "yes" : itos(missing.count()) + " missing",
            missing.none(), true);
      }
      {
        long long worst = 0;
        int at = 0;
        for (int i = 1; i <= m; ++i) {
          long long c =
              static_cast<long long>(cover_mask.count_and(cp.mask(i)));
          if (c > worst) {
            worst = c;
            at = i;
          }
        }
        add(s3, "cover-per-cluster", "|V(cover) in V_i| <= 5 sqrt(eps) |V_i|",
            worst == 0 ? "none" : fmt("cluster %d holds %lld", at, worst),
            cmp_root_scaled(worst, Frac(5), eps, 2, w) <= 0, true);
      }
      count(s3, "sample-size", na);
      count(s3, "cover-pieces", static_cast<long long>(cover_pieces.size()));
    } else {
      count(s3, "cover-pieces", 0);
    }
  }
  if (!settle(s3)) return res;

  // ---- stage 4: skeleton cycles, one per monochromatic component ----
  StageReport& s4 = stage(4, "skeleton-cycles");
  DynBitset used = cover_mask | bad;
  std::vector<std::vector<int>> comp_edges(comp_total);
  DynBitset hat_mask(n);
  {
    for (std::size_t t = 0; t < edges.size(); ++t)
      comp_edges[edges[t].comp].push_back(static_cast<int>(t));
    // Representatives first: an unused typical pair joined by an edge of the
    // component's colour, scanned in ascending vertex order.
    for (std::size_t t = 0; t < edges.size(); ++t) {
      ClusterEdge& e = edges[t];
      DynBitset cand_u = typical_vertices(cp, e.i, e.j, e.colour);
      cand_u.subtract(used);
      DynBitset cand_v = typical_vertices(cp, e.j, e.i, e.colour);
      cand_v.subtract(used);
      for (int u = cand_u.find_first(); u >= 0 && e.rep_u < 0;
           u = cand_u.find_next(u + 1)) {
        DynBitset nv = mono[e.colour].row(u) & cand_v;
        int v = nv.find_first();
        if (v >= 0) {
          e.rep_u = u;
          e.rep_v = v;
        }
      }
      if (e.rep_u < 0)
        return bail(s4, fmt("no representative pair on cluster edge "
                            "(%d,%d) in colour %d",
                            e.i, e.j, e.colour));
      used.set(e.rep_u);
      used.set(e.rep_v);
      hat_mask.set(e.rep_u);
      hat_mask.set(e.rep_v);
    }
    // Connectors: from each representative's far end to the next edge's near
    // end, inside the colour class of the surviving cluster graph.
    int longest = 0;
    for (int comp = 0; comp < comp_total; ++comp) {
      const std::vector<int>& ce = comp_edges[comp];
      for (std::size_t q = 0; q < ce.size(); ++q) {
        ClusterEdge& e = edges[ce[q]];
        ClusterEdge& f = edges[ce[(q + 1) % ce.size()]];
        PathResult conn = connecting_path(
            cp, rgh, e.colour, e.rep_v, {e.j, e.i}, f.rep_u, {f.j, f.i}, used);
        if (!conn.success)
          return bail(s4, fmt("connector (%d,%d)->(%d,%d) in colour %d: %s",
                              e.i, e.j, f.i, f.j, e.colour,
                              conn.message.c_str()));
        longest = std::max(longest, static_cast<int>(conn.path.size()));
        e.conn.assign(conn.path.begin() + 1, conn.path.end() - 1);
        for (int x : e.conn) {
          used.set(x);
          hat_mask.set(x);
        }
      }
    }
    add(s4, "connector-order", "every connector has order <= m + 2",
        "longest " + itos(longest), longest <= m + 2, true);
    {
      DynBitset overlap = hat_mask & cover_mask;
      add(s4, "disjoint-from-cover", "skeletons avoid the cover",
          overlap.none() ? "yes" : itos(overlap.count()) + " shared",
          overlap.none(), true);
    }
    {
      long long worst = 0;
      int at = 0;
      for (int i = 1; i <= m; ++i) {
        long long c = static_cast<long long>(hat_mask.count_and(cp.mask(i)));
        if (c > worst) {
          worst = c;
          at = i;
        }
      }
      add(s4, "skeleton-per-cluster", "|V(skeletons) in V_i| <= eps |V_i|",
          fmt("cluster %d holds %lld", at, worst),
          le_scaled(worst, eps, w), false);
    }
    count(s4, "skeleton-cycles", comp_total);
    count(s4, "skeleton-vertices", static_cast<long long>(hat_mask.count()));
  }
  if (!settle(s4)) return res;

  // ---- stage 5: parity singletons per component of the cluster graph ----
  StageReport& s5 = stage(5, "parity-singletons");
  Family singles;
  DynBitset singles_mask(n);
  int uncoloured_comps = 0;
  std::vector<std::vector<int>> ucomp_clusters;  // members, 1-based
  {
    Dsu dsu(m + 1);
    std::vector<char> incident(m + 1, 0);
    for (const ClusterEdge& e : edges) {
      dsu.join(e.i, e.j);
      incident[e.i] = incident[e.j] = 1;
    }
    std::map<int, int> id;
    for (int i = 1; i <= m; ++i) {
      if (!incident[i]) continue;
      int root = dsu.find(i);
      auto it = id.find(root);
      if (it == id.end()) {
        it = id.emplace(root, uncoloured_comps++).first;
        ucomp_clusters.emplace_back();
      }
      ucomp_clusters[it->second].push_back(i);
    }
    add(s5, "clusters-all-matched", "every cluster meets a surviving edge",
        itos(std::count(incident.begin() + 1, incident.end(), 1)) + " of " +
            itos(m),
        std::count(incident.begin() + 1, incident.end(), 1) == m, true);
    for (int cidx = 0; cidx < uncoloured_comps; ++cidx) {
      DynBitset avail(n);
      for (int i : ucomp_clusters[cidx]) avail |= cp.mask(i);
      avail.subtract(cover_mask);
      avail.subtract(hat_mask);
      if (avail.count() % 2 == 1) {
        int v = avail.find_first();
        singles.push_back(Piece{0, {v}});
        singles_mask.set(v);
        used.set(v);
      }
    }
    if (claimed_type == 2)
      add(s5, "bipartite-no-singletons", "no parity singleton in a "
          "balanced bipartite run",
          itos(singles.size()) + " singletons", singles.empty(), true);
    else
      add(s5, "singleton-bound", "at most 2 parity singletons",
          itos(singles.size()) + " singletons", singles.size() <= 2, true);
    count(s5, "components", uncoloured_comps);
    count(s5, "singletons", static_cast<long long>(singles.size()));
  }
  if (!settle(s5)) return res;

  DynBitset consumed = cover_mask | hat_mask | singles_mask;

  // ---- stage 6: fill length and the remainder function b ----
  StageReport& s6 = stage(6, "fill-length");
  long long ell = 0;
  const long long eps_quarter_w = floor_root_scaled(eps, 4, w);
  std::vector<long long> b(m + 1, 0);
  {
    long long base = w - eps_quarter_w;
    ell = base % 2 == 0 ? base : base + 1;
    bool lower = cmp_root_scaled(w - ell, Frac(1), eps, 4, w) <= 0;
    bool upper = cmp_root_scaled(w - ell + 2, Frac(1), eps, 4, w) > 0;
    add(s6, "fill-window",
        "ell even with (1 - eps^{1/4})|V_i| <= ell < (1 - eps^{1/4})|V_i| + 2",
        "ell = " + itos(ell), ell % 2 == 0 && lower && upper, true);
    add(s6, "fill-positive", "ell >= 2", "ell = " + itos(ell), ell >= 2, true);
    long long worst_lo = 0, worst_hi = 0;
    int at_lo = 0, at_hi = 0, at_mid = 0;
    bool lo_ok = true, hi_ok = true, mid_ok = true, refined_ok = true;
    for (int i = 1; i <= m; ++i) {
      long long inside =
          static_cast<long long>(consumed.count_and(cp.mask(i)));
      b[i] = w - inside - ell;
      if (b[i] < 0 && (lo_ok || b[i] < worst_lo)) {
        lo_ok = false;
        worst_lo = b[i];
        at_lo = i;
      }
      if (cmp_root_scaled(b[i], Frac(1), eps, 4, w) > 0 &&
          (hi_ok || b[i] > worst_hi)) {
        hi_ok = false;
        worst_hi = b[i];
        at_hi = i;
      }
      if (cmp_root_scaled(b[i] + inside + 2, Frac(1), eps, 4, w) < 0 &&
          mid_ok) {
        mid_ok = false;
        at_mid = i;
      }
      if (cmp_root_scaled(b[i], Frac(1) - mu, eps, 4, w) < 0)
        refined_ok = false;
    }
    add(s6, "remainder-nonnegative", "b(x_i) >= 0 for every cluster",
        lo_ok ? "all satisfied" : fmt("cluster %d has b = %lld", at_lo,
                                      worst_lo),
        lo_ok, true);
    add(s6, "remainder-upper", "b(x_i) <= eps^{1/4} |V_i|",
        hi_ok ? "all satisfied" : fmt("cluster %d has b = %lld", at_hi,
                                      worst_hi),
        hi_ok, true);
    add(s6, "remainder-lower",
        "b(x_i) >= eps^{1/4} |V_i| - |V_i n C| - 2 for every cluster",
        mid_ok ? "all satisfied" : fmt("cluster %d below", at_mid), mid_ok,
        true);
    add(s6, "remainder-lower-refined", "b(x_i) >= (1 - mu) eps^{1/4} |V_i|",
        refined_ok ? "all satisfied" : "below the refined floor", refined_ok,
        false);
    bool parity_ok = true;
    int bad_comp = -1;
    for (int cidx = 0; cidx < uncoloured_comps; ++cidx) {
      long long s = 0;
      for (int i : ucomp_clusters[cidx]) s += b[i];
      if (s % 2 != 0) {
        parity_ok = false;
        bad_comp = cidx;
        break;
      }
    }
    add(s6, "component-parity", "sum of b over each component is even",
        parity_ok ? "all even" : "component " + itos(bad_comp) + " is odd",
        parity_ok, true);
    if (claimed_type == 2) {
      long long sa = 0, sb = 0;
      for (int i : a_clusters0) sa += b[i + 1];
      for (int i : b_clusters0) sb += b[i + 1];
      add(s6, "side-balance", "sum of b equal on both sides",
          itos(sa) + " vs " + itos(sb), sa == sb, true);
    }
    long long total = 0;
    for (int i = 1; i <= m; ++i) total += b[i];
    count(s6, "fill-length", ell);
    count(s6, "remainder-total", total);
  }
  if (!settle(s6)) return res;

  // ---- stage 7: perfect b-matching on the cluster graph ----
  StageReport& s7 = stage(7, "cluster-b-matching");
  {
    Graph skel = rgh.skeleton();
    std::vector<long long> b0(b.begin() + 1, b.end());
    BHypothesesReport hyp = check_b_hypotheses(
        skel, b0, mu, eps_quarter_w, side_a ? &a_clusters0 : nullptr);
    for (ClauseRow row : hyp.rows)
      add(s7, "hypothesis-" + row.name, row.requirement, row.actual,
          row.satisfied, false);
    BMatchingResult bm = perfect_b_matching(
        skel, b0, side_a ? &a_clusters0 : nullptr);
    add(s7, "b-matching-found", "a perfect b-matching exists", bm.message,
        bm.success, true);
    if (!bm.success) return bail(s7, s7.message);
    bool valid = verify_b_matching(skel, b0, bm.weights);
    add(s7, "b-matching-valid", "weighted degrees equal b",
        valid ? "verified" : "re-check failed", valid, true);
    long long placed = 0;
    for (const auto& we : bm.weights) {
      int i = we[0] + 1, j = we[1] + 1;
      if (i > j) std::swap(i, j);
      bool found = false;
      for (ClusterEdge& e : edges)
        if (e.i == i && e.j == j) {
          e.omega0 = we[2];
          found = true;
        }
      if (!found)
        return bail(s7, fmt("b-matching used the missing edge (%d,%d)", i, j));
      placed += we[2];
    }
    count(s7, "blowup-nodes", bm.blowup_nodes);
    count(s7, "blowup-edges", bm.blowup_edges);
    count(s7, "weight-placed", placed);
  }
  if (!settle(s7)) return res;

  // ---- stage 8: the combined edge weighting ----
  StageReport& s8 = stage(8, "edge-weights");
  {
    bool degm_ok = true;
    std::string degm_note = "all consistent";
    for (const ClusterEdge& e : edges) {
      if (e.weight == 0) continue;
      int want = e.weight == 2 ? 1 : 2;
      if (deg_m[e.i] != want || deg_m[e.j] != want) {
        degm_ok = false;
        degm_note = fmt("edge (%d,%d) weight %d but degrees %d, %d", e.i, e.j,
                        e.weight, deg_m[e.i], deg_m[e.j]);
        break;
      }
    }
    add(s8, "matching-degree-consistent",
        "both ends of a matching edge have the same matching degree",
        degm_note, degm_ok, true);
    add(s8, "weights-integral", "ell even, so ell/deg splits are integral",
        "ell = " + itos(ell), ell % 2 == 0, true);
    long long total = 0, wmax = 0;
    for (ClusterEdge& e : edges) {
      e.omega = e.omega0;
      if (e.weight > 0) e.omega += ell / (e.weight == 2 ? 1 : 2);
      total += e.omega;
      wmax = std::max(wmax, e.omega);
    }
    bool sum_ok = true;
    std::string sum_note = "all clusters";
    bool load_ok = true;
    std::string load_note = "all clusters";
    for (int i = 1; i <= m; ++i) {
      long long s = 0, nonm = 0;
      for (const ClusterEdge& e : edges)
        if (e.i == i || e.j == i) {
          s += e.omega;
          if (e.weight == 0) nonm += e.omega;
        }
      long long avail =
          w - static_cast<long long>(consumed.count_and(cp.mask(i)));
      if (s != avail && sum_ok) {
        sum_ok = false;
        sum_note = fmt("cluster %d carries %lld but has %lld", i, s, avail);
      }
      if (nonm > b[i] && load_ok) {
        load_ok = false;
        load_note = fmt("cluster %d: %lld > b = %lld", i, nonm, b[i]);
      }
    }
    add(s8, "degree-sum",
        "weights at each cluster sum to its uncovered size", sum_note, sum_ok,
        true);
    add(s8, "non-matching-load",
        "non-matching weight at each cluster stays within b", load_note,
        load_ok, true);
    count(s8, "weight-total", total);
    count(s8, "weight-max", wmax);
  }
  if (!settle(s8)) return res;

  // ---- stage 9: path realization with the two-round reserve ----
  StageReport& s9 = stage(9, "path-realization");
  {
    SampleSet res1 =
        sample_with_properties(h, cp, consumed, p, mix(seed, 91), 50, true);
    for (ClauseRow row : res1.rows)
      add(s9, "reserve1-" + row.name, row.requirement, row.actual,
          row.satisfied, false);
    add(s9, "reserve1-found", "first reserve sample drawn", res1.message,
        res1.ok, true);
    if (!res1.ok) return bail(s9, s9.message);
    DynBitset forb2 = consumed | res1.a;
    SampleSet res2 =
        sample_with_properties(h, cp, forb2, p, mix(seed, 92), 50, true);
    for (ClauseRow row : res2.rows)
      add(s9, "reserve2-" + row.name, row.requirement, row.actual,
          row.satisfied, false);
    add(s9, "reserve2-found", "second reserve sample drawn", res2.message,
        res2.ok, true);
    if (!res2.ok) return bail(s9, s9.message);
    const DynBitset& r1 = res1.a;
    const DynBitset& r2 = res2.a;
    {
      long long worst = 0;
      int at = 0;
      bool half_ok = true;
      for (int i = 1; i <= m; ++i) {
        long long c1 = static_cast<long long>(r1.count_and(cp.mask(i)));
        long long c2 = static_cast<long long>(r2.count_and(cp.mask(i)));
        long long c = std::max(c1, c2);
        if (c > worst) {
          worst = c;
          at = i;
        }
        if (2 * c2 > ell) half_ok = false;
      }
      add(s9, "reserve-cluster-cap", "|S in V_i| <= 4 sqrt(eps) |V_i|",
          fmt("cluster %d holds %lld", at, worst),
          cmp_root_scaled(worst, Frac(4), eps, 2, w) <= 0, true);
      add(s9, "reserve2-half-fill", "|S2 in V_i| <= ell/2",
          "largest " + itos(worst), half_ok, true);
    }

    DynBitset pmask(n);
    long long paths_built = 0;
    // Non-matching edges first, then matching edges, both in input order.
    for (int phase = 0; phase < 2; ++phase) {
      for (std::size_t t = 0; t < edges.size(); ++t) {
        ClusterEdge& e = edges[t];
        if ((phase == 0) != (e.weight == 0)) continue;
        const int c = e.colour;
        const Graph& gc = mono[c];
        if (phase == 0) {
          if (e.omega == 0) continue;  // the bare representative edge stays
          if (e.omega == 1) {
            // One fresh vertex per side, both from the first reserve.
            DynBitset cb = gc.row(e.rep_u) & r1 & cp.mask(e.j);
            cb.subtract(pmask);
            bool done = false;
            for (int bv = cb.find_first(); bv >= 0 && !done;
                 bv = cb.find_next(bv + 1)) {
              DynBitset ca = gc.row(bv) & gc.row(e.rep_v) & r1 & cp.mask(e.i);
              ca.subtract(pmask);
              int av = ca.find_first();
              if (av >= 0) {
                e.realized = {bv, av};
                pmask.set(bv);
                pmask.set(av);
                done = true;
              }
            }
            if (!done)
              return bail(s9, fmt("no reserve pair for unit-weight edge "
                                  "(%d,%d) in colour %d",
                                  e.i, e.j, c));
          } else {
            DynBitset wset = consumed | r1 | r2 | pmask;
            DynBitset ui = cp.mask(e.i);
            ui.subtract(wset);
            DynBitset uj = cp.mask(e.j);
            uj.subtract(wset);
            // Glue vertices from the first reserve, chosen for maximum
            // degree into the free part of the opposite cluster.
            auto pick = [&](int anchor, int cluster, const DynBitset& far) {
              DynBitset cand = gc.row(anchor) & r1 & cp.mask(cluster);
              cand.subtract(pmask);
              int best = -1;
              long long best_deg = -1;
              for (int x = cand.find_first(); x >= 0;
                   x = cand.find_next(x + 1)) {
                long long d = static_cast<long long>(gc.deg_in(x, far));
                if (d > best_deg) {
                  best_deg = d;
                  best = x;
                }
              }
              return best;
            };
            int vv = pick(e.rep_u, e.j, ui);
            int uu = pick(e.rep_v, e.i, uj);
            if (vv < 0 || uu < 0)
              return bail(s9, fmt("no reserve glue for edge (%d,%d) in "
                                  "colour %d",
                                  e.i, e.j, c));
            PathResult inner = path_in_pair(
                gc, cp.mask(e.i), cp.mask(e.j), uu, vv, ui, uj,
                static_cast<int>(e.omega), eps, mix(seed, 900 + t));
            if (!inner.success)
              return bail(
                  s9, fmt("inner path for edge (%d,%d), %lld pairs: %s", e.i,
                          e.j, e.omega, inner.message.c_str()));
            e.realized.assign(inner.path.rbegin(), inner.path.rend());
            for (int x : e.realized) pmask.set(x);
          }
        } else {
          DynBitset ui = cp.mask(e.i);
          ui.subtract(consumed);
          ui.subtract(pmask);
          if (!e.last_i) ui.subtract(r2);
          DynBitset uj = cp.mask(e.j);
          uj.subtract(consumed);
          uj.subtract(pmask);
          if (!e.last_j) uj.subtract(r2);
          PathResult pr = path_in_pair(
              gc, cp.mask(e.i), cp.mask(e.j), e.rep_u, e.rep_v, ui, uj,
              static_cast<int>(e.omega) + 1, eps, mix(seed, 900 + t));
          if (!pr.success)
            return bail(s9,
                        fmt("matching-edge path (%d,%d), weight %lld, free "
                            "%lld/%lld: %s",
                            e.i, e.j, e.omega,
                            static_cast<long long>(ui.count()),
                            static_cast<long long>(uj.count()),
                            pr.message.c_str()));
          e.realized.assign(pr.path.begin() + 1, pr.path.end() - 1);
          for (int x : e.realized) pmask.set(x);
        }
        ++paths_built;
        if (phase == 0) {
          // The second reserve stays untouched until the matching phase.
          if (pmask.intersects(r2))
            return bail(s9, "a pre-matching path entered the second reserve");
        }
      }
      if (phase == 0)
        add(s9, "reserve-respected",
            "paths before the matching phase avoid the second reserve", "yes",
            true, true);
    }
    {
      long long leftover = 0;
      int at = 0;
      for (int i = 1; i <= m; ++i) {
        DynBitset rem = cp.mask(i);
        rem.subtract(consumed);
        rem.subtract(pmask);
        long long c = static_cast<long long>(rem.count());
        if (c > leftover) {
          leftover = c;
          at = i;
        }
      }
      add(s9, "exact-consumption", "every cluster fully consumed",
          leftover == 0 ? "yes" : fmt("cluster %d keeps %lld", at, leftover),
          leftover == 0, true);
    }
    count(s9, "paths", paths_built);
  }
  if (!settle(s9)) return res;

  // ---- stage 10: splice and validate ----
  StageReport& s10 = stage(10, "assembly");
  {
    Family family = cover_pieces;
    for (int comp = 0; comp < comp_total; ++comp) {
      Piece pc;
      pc.colour = edges[comp_edges[comp].front()].colour;
      for (int t : comp_edges[comp]) {
        const ClusterEdge& e = edges[t];
        pc.vertices.push_back(e.rep_u);
        pc.vertices.insert(pc.vertices.end(), e.realized.begin(),
                           e.realized.end());
        pc.vertices.push_back(e.rep_v);
        pc.vertices.insert(pc.vertices.end(), e.conn.begin(), e.conn.end());
      }
      family.push_back(std::move(pc));
    }
    family.insert(family.end(), singles.begin(), singles.end());
    ValidationResult vr = validate_family(h, family, true);
    add(s10, "partition-valid",
        "disjoint monochromatic cycles covering every vertex",
        vr.ok ? "verified" : vr.message, vr.ok, true);
    add(s10, "piece-count", "<= (1/mu + 200) r^2 = " + itos(res.piece_bound),
        itos(family.size()),
        static_cast<long long>(family.size()) <= res.piece_bound, true);
    count(s10, "cover-pieces", static_cast<long long>(cover_pieces.size()));
    count(s10, "skeleton-cycles", comp_total);
    count(s10, "singletons", static_cast<long long>(singles.size()));
    count(s10, "total-pieces", static_cast<long long>(family.size()));
    if (s10.ok) res.family = std::move(family);
  }
  if (!settle(s10)) return res;

  res.success = true;
  res.message.clear();
  return res;
}

MainResult partition_main(const ColouredGraph& g, const ParameterLedger& params,
                          const ClusterPartition& cluster_hint,
                          std::uint64_t seed) {
  if (cluster_hint.host != &g)
    throw std::invalid_argument("cluster hint built for a different host");
  MainResult res;
  res.structural = structural_decompose(g, params, seed);
  if (!res.structural.success) {
    res.message = "structural phase: " + res.structural.message;
    return res;
  }

  std::vector<int> old_ids;  // remainder position -> host id
  if (res.structural.type1) {
    res.remainder =
        partition_robmat(g, nullptr, cluster_hint, params, mix(seed, 77));
    if (!res.remainder.success) {
      res.message = "partition phase: " + res.remainder.message;
      return res;
    }
    res.family = res.structural.cycles;
    res.family.insert(res.family.end(), res.remainder.family.begin(),
                      res.remainder.family.end());
  } else {
    const std::vector<int>& sa = res.structural.side_a;
    const std::vector<int>& sb = res.structural.side_b;
    DynBitset amask(g.n()), keep(g.n());
    for (int v : sa) {
      amask.set(v);
      keep.set(v);
    }
    for (int v : sb) keep.set(v);
    std::vector<int> new_id(g.n(), -1);
    for (int v = keep.find_first(); v >= 0; v = keep.find_next(v + 1)) {
      new_id[v] = static_cast<int>(old_ids.size());
      old_ids.push_back(v);
    }
    std::vector<ColouredGraph::Edge> cross;
    g.for_each_edge([&](int u, int v, int c) {
      if (!keep.test(u) || !keep.test(v)) return;
      if (amask.test(u) == amask.test(v)) return;
      cross.push_back({new_id[u], new_id[v], c});
    });
    ColouredGraph h(static_cast<int>(old_ids.size()), g.r(), cross);

    ClusterPartition cph;
    cph.host = &h;
    cph.eps = cluster_hint.eps;
    cph.d = cluster_hint.d;
    std::vector<char> claimed(g.n(), 0);
    for (const std::vector<int>& cl : cluster_hint.clusters) {
      std::vector<int> mapped;
      for (int v : cl)
        if (new_id[v] >= 0) {
          mapped.push_back(new_id[v]);
          claimed[v] = 1;
        }
      if (mapped.empty()) continue;
      if (mapped.size() != cl.size()) {
        res.message = fmt(
            "a hinted cluster of %zu vertices lost %zu to the structural "
            "phase",
            cl.size(), cl.size() - mapped.size());
        return res;
      }
      cph.clusters.push_back(std::move(mapped));
    }
    for (int v : old_ids)
      if (!claimed[v]) cph.v0.push_back(new_id[v]);
    try {
      cph.finalize();
    } catch (const std::exception& ex) {
      res.message = std::string("remainder cluster partition: ") + ex.what();
      return res;
    }
    std::vector<int> side_new;
    side_new.reserve(sa.size());
    for (int v : sa) side_new.push_back(new_id[v]);
    std::sort(side_new.begin(), side_new.end());

    res.remainder = partition_robmat(h, &side_new, cph, params, mix(seed, 77));
    if (!res.remainder.success) {
      res.message = "partition phase: " + res.remainder.message;
      return res;
    }
    res.family = res.structural.cycles;
    for (const Piece& pc : res.remainder.family) {
      Piece q;
      q.colour = pc.colour;
      q.vertices.reserve(pc.vertices.size());
      for (int v : pc.vertices) q.vertices.push_back(old_ids[v]);
      res.family.push_back(std::move(q));
    }
  }

  const int r = g.r();
  ValidationResult vr = validate_family(g, res.family, true);
  res.rows.push_back(ClauseRow{
      "combined-partition", "structural cycles plus remainder partition V(g)",
      vr.ok ? "verified" : vr.message, vr.ok, true});
  {
    long long headline = 10000000LL * r * r;
    long long total = static_cast<long long>(res.family.size());
    res.rows.push_back(ClauseRow{"headline-count",
                                 "<= 10^7 r^2 = " + itos(headline),
                                 itos(total), total <= headline, true});
    long long sharper = res.remainder.piece_bound + 400LL * r + 2;
    res.rows.push_back(ClauseRow{
        "ledger-count", "<= (1/mu + 200) r^2 + 400 r + 2 = " + itos(sharper),
        itos(total), total <= sharper, true});
  }
  res.success = true;
  for (const ClauseRow& row : res.rows)
    if (row.gating && !row.satisfied) {
      res.success = false;
      if (res.message.empty())
        res.message = row.name + ": " + row.actual;
    }
  return res;
}

}  // namespace cyclepart
