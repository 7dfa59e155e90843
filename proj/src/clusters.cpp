#include "cyclepart/clusters.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cyclepart {

void ClusterPartition::finalize() {
  if (host == nullptr) throw std::invalid_argument("cluster partition without host");
  const int nn = host->n();
  cluster_of.assign(nn, -1);
  auto place = [&](int v, int id) {
    if (v < 0 || v >= nn)
      throw std::invalid_argument("cluster vertex out of range: " + std::to_string(v));
    if (cluster_of[v] != -1)
      throw std::invalid_argument("vertex in two parts: " + std::to_string(v));
    cluster_of[v] = id;
  };
  for (int v : v0) place(v, 0);
  for (int i = 0; i < m(); ++i)
    for (int v : clusters[i]) place(v, i + 1);
  for (int v = 0; v < nn; ++v)
    if (cluster_of[v] == -1)
      throw std::invalid_argument("vertex in no part: " + std::to_string(v));
  for (int i = 1; i < m(); ++i)
    if (clusters[i].size() != clusters[0].size())
      throw std::invalid_argument("clusters have unequal sizes");
  std::sort(v0.begin(), v0.end());
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  masks.clear();
  masks.push_back(DynBitset::from_vector(nn, v0));
  for (const auto& c : clusters) masks.push_back(DynBitset::from_vector(nn, c));
}

bool ClusterPartition::sizes_within_eps(std::string* why) const {
  const int nn = n();
  if (!le_scaled(static_cast<long long>(v0.size()), eps, nn)) {
    if (why) *why = "exceptional set larger than eps*n";
    return false;
  }
  if (m() > 0 && !le_scaled(cluster_size(), eps, nn)) {
    if (why) *why = "cluster size larger than eps*n";
    return false;
  }
  return true;
}

ClusterPartition read_cluster_partition(const std::string& path,
                                        const ColouredGraph& host) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  ClusterPartition cp;
  cp.host = &host;
  if (j.value("n", host.n()) != host.n())
    throw std::invalid_argument("partition is for a different vertex count");
  cp.eps = Frac::parse(j.at("eps").get<std::string>());
  cp.d = Frac::parse(j.at("d").get<std::string>());
  cp.v0 = j.value("v0", std::vector<int>{});
  cp.clusters = j.at("clusters").get<std::vector<std::vector<int>>>();
  cp.finalize();
  return cp;
}

void write_cluster_partition(const std::string& path,
                             const ClusterPartition& cp) {
  nlohmann::ordered_json j;
  j["n"] = cp.n();
  j["m"] = cp.m();
  j["eps"] = cp.eps.str();
  j["d"] = cp.d.str();
  j["v0"] = cp.v0;
  j["clusters"] = cp.clusters;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(1) << "\n";
}

std::vector<ReducedEdge> ReducedGraph::edges() const {
  std::vector<ReducedEdge> out;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      if (colour[i][j] != 0) out.push_back({i, j, colour[i][j], density[i][j]});
  return out;
}

int ReducedGraph::deg(int i) const {
  int d = 0;
  for (int j = 1; j <= m; ++j)
    if (j != i && colour[i][j] != 0) ++d;
  return d;
}

Graph ReducedGraph::skeleton() const {
  Graph g(m);
  for (const auto& e : edges()) g.add_edge(e.i - 1, e.j - 1);
  return g;
}

ColouredGraph ReducedGraph::coloured(int r) const {
  std::vector<ColouredGraph::Edge> es;
  for (const auto& e : edges()) es.push_back({e.i - 1, e.j - 1, e.colour});
  return ColouredGraph(m, r, es);
}

Frac pair_density(const ColouredGraph& g, const std::vector<int>& u,
                  const DynBitset& w_mask, long long w_size, int colour) {
  long long edges = 0;
  for (int v : u)
    edges += colour == 0 ? g.deg_in(v, w_mask) : g.deg_c_in(v, colour, w_mask);
  long long total = static_cast<long long>(u.size()) * w_size;
  if (total == 0) return Frac(0);
  return Frac::ratio(edges, total);
}

namespace {

long long ceil_mul(const Frac& f, long long x) {
  // ceil(f * x) for f >= 0.
  long long num = f.num * x;
  return (num + f.den - 1) / f.den;
}

Frac abs_diff(const Frac& a, const Frac& b) {
  Frac d = a - b;
  if (d.num < 0) d.num = -d.num;
  return d;
}

}  // namespace

RefuterResult eps_regular_refuter(const ColouredGraph& g,
                                  const std::vector<int>& u,
                                  const std::vector<int>& w, const Frac& eps,
                                  int colour, int samples, uint64_t seed) {
  RefuterResult res;
  DynBitset w_mask = DynBitset::from_vector(g.n(), w);
  res.pair_density =
      pair_density(g, u, w_mask, static_cast<long long>(w.size()), colour);
  const long long su =
      std::max<long long>(1, ceil_mul(eps, static_cast<long long>(u.size())));
  const long long sw =
      std::max<long long>(1, ceil_mul(eps, static_cast<long long>(w.size())));
  if (su > static_cast<long long>(u.size()) ||
      sw > static_cast<long long>(w.size()))
    return res;  // degenerate; nothing to sample
  Rng rng(seed);
  for (int it = 0; it < samples; ++it) {
    std::vector<int> xi = rng.sample_without_replacement(
        static_cast<int>(u.size()), static_cast<int>(su));
    std::vector<int> yi = rng.sample_without_replacement(
        static_cast<int>(w.size()), static_cast<int>(sw));
    std::vector<int> x, y;
    for (int k : xi) x.push_back(u[k]);
    for (int k : yi) y.push_back(w[k]);
    DynBitset y_mask = DynBitset::from_vector(g.n(), y);
    Frac dsub = pair_density(g, x, y_mask, sw, colour);
    if (cmp(abs_diff(dsub, res.pair_density), eps) > 0) {
      res.refuted = true;
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      res.x = std::move(x);
      res.y = std::move(y);
      res.witness_density = dsub;
      return res;
    }
  }
  return res;
}

ReducedGraph build_reduced(const ClusterPartition& cp, RegularityMode mode,
                           int samples, uint64_t seed) {
  const ColouredGraph& g = *cp.host;
  const int m = cp.m();
  ReducedGraph rg;
  rg.m = m;
  rg.colour.assign(m + 1, std::vector<int>(m + 1, 0));
  rg.density.assign(m + 1, std::vector<Frac>(m + 1, Frac(0)));
  uint64_t pair_seed = seed;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      const std::vector<int>& vi = cp.clusters[i - 1];
      const std::vector<int>& vj = cp.clusters[j - 1];
      for (int c = 1; c <= g.r(); ++c) {
        Frac dc = pair_density(g, vi, cp.mask(j),
                               static_cast<long long>(vj.size()), c);
        if (cmp(dc, cp.d) < 0) continue;
        if (mode == RegularityMode::kSampled) {
          RefuterResult ref =
              eps_regular_refuter(g, vi, vj, cp.eps, c, samples, ++pair_seed);
          if (ref.refuted) continue;
        }
        rg.colour[i][j] = rg.colour[j][i] = c;  // lowest colour wins
        rg.density[i][j] = rg.density[j][i] = dc;
        break;
      }
    }
  }
  return rg;
}

DynBitset typical_vertices(const ClusterPartition& cp, int i, int j,
                           int colour) {
  const ColouredGraph& g = *cp.host;
  const std::vector<int>& vi = cp.clusters[i - 1];
  const std::vector<int>& vj = cp.clusters[j - 1];
  Frac dc = pair_density(g, vi, cp.mask(j), static_cast<long long>(vj.size()),
                         colour);
  if (cmp(dc, cp.d) < 0)
    throw std::invalid_argument("pair density below d; no reduced edge");
  Frac thr = dc - cp.eps;
  DynBitset out(g.n());
  for (int v : vi) {
    long long deg = g.deg_c_in(v, colour, cp.mask(j));
    if (ge_scaled(deg, thr, static_cast<long long>(vj.size()))) out.set(v);
  }
  return out;
}

bool is_typical(const ClusterPartition& cp, int v, int i, int j, int colour) {
  const ColouredGraph& g = *cp.host;
  const std::vector<int>& vi = cp.clusters[i - 1];
  const std::vector<int>& vj = cp.clusters[j - 1];
  Frac dc = pair_density(g, vi, cp.mask(j), static_cast<long long>(vj.size()),
                         colour);
  Frac thr = dc - cp.eps;
  long long deg = g.deg_c_in(v, colour, cp.mask(j));
  return ge_scaled(deg, thr, static_cast<long long>(vj.size()));
}

InheritanceReport reduced_inheritance_checks(const ClusterPartition& cp,
                                             const ReducedGraph& rg,
                                             int subset_samples,
                                             uint64_t seed) {
  const ColouredGraph& g = *cp.host;
  const int n = g.n();
  const int m = cp.m();
  const int r = g.r();
  InheritanceReport rep;
  // Loss term rd + eps, shared by all three clauses.
  Frac loss = cp.d * Frac(r) + cp.eps;

  // (a) per vertex: deg_host(v) >= c*n forces reduced deg >= (c - loss)m.
  // Checking the strongest instance per cluster (its max host degree).
  int viol_a = 0;
  std::string first_a;
  for (int i = 1; i <= m; ++i) {
    long long max_deg = 0;
    int arg = -1;
    for (int v : cp.clusters[i - 1]) {
      long long dv = static_cast<long long>(g.deg(v));
      if (dv > max_deg) max_deg = dv, arg = v;
    }
    // c = max_deg/n; requirement: deg_rg(x_i)*n >= (max_deg - loss*n)*m / n.
    Frac c = Frac::ratio(max_deg, n);
    Frac need = c - loss;
    if (!ge_scaled(rg.deg(i), need, m)) {
      ++viol_a;
      if (first_a.empty())
        first_a = "cluster " + std::to_string(i) + " (vertex " +
                  std::to_string(arg) + ")";
    }
  }
  {
    ClauseRow row;
    row.name = "degree-inheritance";
    row.requirement = "host degree c*n forces reduced degree (c-rd-eps)m";
    row.actual = viol_a == 0 ? "holds for every cluster's max-degree vertex"
                             : std::to_string(viol_a) + " violations, first " +
                                   first_a;
    row.satisfied = viol_a == 0;
    row.gating = true;
    rep.rows.push_back(row);
  }

  // (b) all-but-eta variant, swept over every distinct host degree value:
  // if all but eta*n host vertices have degree >= c*n then all but
  // (eta+eps)m clusters have reduced degree >= (c-loss)m.
  {
    std::vector<long long> degs(n);
    for (int v = 0; v < n; ++v) degs[v] = static_cast<long long>(g.deg(v));
    std::sort(degs.begin(), degs.end());
    std::vector<int> rdeg(m + 1, 0);
    for (int i = 1; i <= m; ++i) rdeg[i] = rg.deg(i);
    int viol_b = 0;
    std::string first_b;
    for (int k = 0; k < n;) {
      long long d0 = degs[k];
      // eta*n = number of host vertices with degree < d0 = k.
      Frac c = Frac::ratio(d0, n);
      Frac need = c - loss;
      int below = 0;
      for (int i = 1; i <= m; ++i)
        if (!ge_scaled(rdeg[i], need, m)) ++below;
      // allowed: (eta + eps) m = (k/n + eps) m.
      Frac allowed = Frac::ratio(k, n) + cp.eps;
      if (!le_scaled(below, allowed, m)) {
        ++viol_b;
        if (first_b.empty())
          first_b = "degree threshold " + std::to_string(d0);
      }
      while (k < n && degs[k] == d0) ++k;
    }
    ClauseRow row;
    row.name = "degree-inheritance-all-but";
    row.requirement =
        "all-but-eta*n host degree bound forces all-but-(eta+eps)m reduced";
    row.actual = viol_b == 0 ? "holds at every distinct degree value"
                             : std::to_string(viol_b) + " thresholds fail, first " +
                                   first_b;
    row.satisfied = viol_b == 0;
    row.gating = true;
    rep.rows.push_back(row);
  }

  // (c) induced edges: X with e(union V_i) >= c n^2 must induce at least
  // (c-loss) m^2 reduced edges. Checked on the full set plus random subsets.
  {
    Rng rng(seed);
    int viol_c = 0;
    std::string first_c;
    auto check_subset = [&](const std::vector<int>& xs, const char* label) {
      DynBitset u(n);
      for (int i : xs) u |= cp.mask(i);
      long long host_edges = 0;
      for (int v = u.find_first(); v != -1; v = u.find_next(v + 1))
        host_edges += g.deg_in(v, u);
      host_edges /= 2;
      long long red_edges = 0;
      for (size_t a = 0; a < xs.size(); ++a)
        for (size_t b = a + 1; b < xs.size(); ++b)
          if (rg.edge_colour(xs[a], xs[b]) != 0) ++red_edges;
      Frac c = Frac::ratio(host_edges, static_cast<long long>(n) * n);
      Frac need = c - loss;
      if (!ge_scaled(red_edges, need, static_cast<long long>(m) * m)) {
        ++viol_c;
        if (first_c.empty()) first_c = label;
      }
    };
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i + 1;
    check_subset(all, "full cluster set");
    for (int it = 0; it < subset_samples && m >= 2; ++it) {
      int k = 2 + static_cast<int>(rng.uniform_index(m - 1));
      std::vector<int> pick = rng.sample_without_replacement(m, k);
      for (int& x : pick) ++x;
      check_subset(pick, "random subset");
    }
    ClauseRow row;
    row.name = "edge-inheritance";
    row.requirement = "c*n^2 induced host edges force (c-rd-eps)m^2 reduced";
    row.actual = viol_c == 0 ? "holds on full set and sampled subsets"
                             : std::to_string(viol_c) + " subsets fail, first " +
                                   first_c;
    row.satisfied = viol_c == 0;
    row.gating = true;
    rep.rows.push_back(row);
  }

  for (const auto& row : rep.rows) rep.ok = rep.ok && row.satisfied;
  return rep;
}

}  // namespace cyclepart
