#include "cyclepart/sampling.hpp"

#include <cmath>

#include "cyclepart/rng.hpp"

namespace cyclepart {
namespace {

std::string itos(long long v) { return std::to_string(v); }

}  // namespace

SampleSet sample_with_properties(const ColouredGraph& g,
                                 const ClusterPartition& cp,
                                 const DynBitset& forbidden, const Frac& p,
                                 uint64_t seed, int retries,
                                 bool allow_window_override) {
  SampleSet res;
  res.p = p;
  res.seed = seed;
  const int n = g.n();
  const int m = cp.m();
  if (forbidden.size() != n)
    throw std::invalid_argument("forbidden set sized for a different graph");

  // Pre: V_0 lies inside the forbidden set.
  {
    ClauseRow row;
    row.name = "pre-v0-inside";
    row.requirement = "V_0 inside the forbidden set";
    std::size_t outside = cp.mask(0).count_andnot(forbidden);
    row.satisfied = outside == 0;
    row.actual = row.satisfied ? "yes"
                               : itos(static_cast<long long>(outside)) +
                                     " vertices of V_0 outside";
    res.rows.push_back(row);
  }
  // Pre: the forbidden set is small inside every cluster.
  {
    ClauseRow row;
    row.name = "pre-cluster-density";
    row.requirement = "|forbidden in V_i| <= 10p|V_i| for every i";
    row.satisfied = true;
    const Frac tenp = p * Frac(10);
    for (int i = 1; i <= m; ++i) {
      long long in_b =
          static_cast<long long>(forbidden.count_and(cp.mask(i)));
      if (!le_scaled(in_b, tenp, cp.cluster_size())) {
        row.satisfied = false;
        row.actual = "cluster " + itos(i) + " holds " + itos(in_b);
        break;
      }
    }
    if (row.satisfied) row.actual = "all satisfied";
    res.rows.push_back(row);
  }
  // Pre: the size window for p. Instances of runnable size sit below the
  // lower end, so this row can be overridden and recorded.
  {
    ClauseRow row;
    row.name = "pre-size-window";
    row.requirement = "m log(n)/sqrt(n) < p < 1/100";
    double lo = m * std::log(static_cast<double>(n)) /
                std::sqrt(static_cast<double>(n));
    row.satisfied = lo < p.dbl() && cmp(p, Frac::ratio(1, 100)) < 0;
    row.actual = "lower end " + std::to_string(lo) + ", p = " + p.str();
    res.window_ok = row.satisfied;
    if (!row.satisfied && allow_window_override) {
      res.window_overridden = true;
      row.gating = false;
    }
    res.rows.push_back(row);
  }
  for (const ClauseRow& row : res.rows) {
    if (row.gating && !row.satisfied) {
      res.message = "precondition failed: " + row.name;
      return res;
    }
  }
  const std::size_t pre_rows = res.rows.size();

  DynBitset ground(n);
  for (int v = 0; v < n; ++v) ground.set(v);
  ground.subtract(forbidden);

  Rng rng(seed);
  const double pd = p.dbl();
  const Frac half_p = p * Frac::ratio(1, 2);
  const Frac two_p = p * Frac(2);
  const Frac thirty_p = p * Frac(30);

  for (int attempt = 1; attempt <= retries; ++attempt) {
    res.attempts = attempt;
    res.rows.resize(pre_rows);

    DynBitset a(n);
    for (int v = ground.find_first(); v >= 0; v = ground.find_next(v + 1))
      if (rng.bernoulli(pd)) a.set(v);
    const long long asz = static_cast<long long>(a.count());

    ClauseRow ra;
    ra.name = "clause-size";
    ra.requirement = "|A| >= (p/2) n";
    ra.actual = "|A| = " + itos(asz);
    ra.satisfied = ge_scaled(asz, half_p, n);
    res.rows.push_back(ra);

    ClauseRow rb;
    rb.name = "clause-cluster-cap";
    rb.requirement = "|A in V_i| <= 2p|V_i|";
    rb.satisfied = true;
    for (int i = 1; i <= m; ++i) {
      long long in_i = static_cast<long long>(a.count_and(cp.mask(i)));
      if (!le_scaled(in_i, two_p, cp.cluster_size())) {
        rb.satisfied = false;
        rb.actual = "cluster " + itos(i) + " holds " + itos(in_i);
        break;
      }
    }
    if (rb.satisfied) rb.actual = "all satisfied";
    res.rows.push_back(rb);

    ClauseRow rc;
    rc.name = "clause-cluster-degree";
    rc.requirement =
        "deg(v, A in V_i) >= (p/2) deg(v, V_i) when deg(v, V_i) > 30p|V_i|";
    long long triggered = 0, violated = 0;
    std::string first;
    std::vector<DynBitset> a_in(m + 1, DynBitset(0));
    for (int i = 1; i <= m; ++i) a_in[i] = a & cp.mask(i);
    for (int v = 0; v < n; ++v) {
      for (int i = 1; i <= m; ++i) {
        long long dvi = static_cast<long long>(g.deg_in(v, cp.mask(i)));
        if (cmp_scaled(dvi, thirty_p, cp.cluster_size()) <= 0) continue;
        ++triggered;
        long long dva = static_cast<long long>(g.deg_in(v, a_in[i]));
        if (!ge_scaled(dva, half_p, dvi)) {
          ++violated;
          if (first.empty())
            first = "v=" + itos(v) + " i=" + itos(i) + " deg " + itos(dva) +
                    " of " + itos(dvi);
        }
      }
    }
    rc.satisfied = violated == 0;
    rc.actual = itos(triggered) + " triggered, " + itos(violated) +
                " violated" + (first.empty() ? "" : " (" + first + ")");
    res.rows.push_back(rc);

    ClauseRow rd;
    rd.name = "clause-global-degree";
    rd.requirement = "deg(v, A) >= |A|/100 when deg(v, V minus B) > n/40";
    triggered = violated = 0;
    first.clear();
    for (int v = 0; v < n; ++v) {
      long long dg = static_cast<long long>(g.deg_in(v, ground));
      if (40 * dg <= n) continue;
      ++triggered;
      long long dva = static_cast<long long>(g.deg_in(v, a));
      if (100 * dva < asz) {
        ++violated;
        if (first.empty()) first = "v=" + itos(v) + " deg " + itos(dva);
      }
    }
    rd.satisfied = violated == 0;
    rd.actual = itos(triggered) + " triggered, " + itos(violated) +
                " violated" + (first.empty() ? "" : " (" + first + ")");
    res.rows.push_back(rd);

    bool all_ok = true;
    for (std::size_t i = pre_rows; i < res.rows.size(); ++i)
      all_ok = all_ok && res.rows[i].satisfied;
    if (all_ok) {
      res.ok = true;
      res.a = std::move(a);
      res.message = "attempt " + itos(attempt) + ", |A| = " + itos(asz);
      return res;
    }
  }
  res.message = "no attempt satisfied all clauses";
  return res;
}

}  // namespace cyclepart
