#include "cyclepart/covers.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "cyclepart/rng.hpp"

namespace cyclepart {
namespace {

std::string itos(long long v) { return std::to_string(v); }

}  // namespace

Family posa_cover(const Graph& g) {
  const int n = g.n();
  Family out;
  DynBitset alive(n);
  for (int v = 0; v < n; ++v) alive.set(v);

  DynBitset on(n);
  std::vector<int> path;
  while (true) {
    int start = alive.find_first();
    if (start < 0) break;
    path.clear();
    on.clear();
    path.push_back(start);
    on.set(start);
    // Forward extension: always append the lowest-id unused alive neighbour.
    while (true) {
      DynBitset cand = g.row(path.back()) & alive;
      cand.subtract(on);
      int nxt = cand.find_first();
      if (nxt < 0) break;
      path.push_back(nxt);
      on.set(nxt);
    }
    // The endpoint's alive neighbourhood now lies on the path. Close back to
    // the farthest neighbour (smallest path position); the closed piece then
    // contains that whole neighbourhood, so independence drops by one per
    // piece and the piece count stays at most alpha.
    int end = path.back();
    int j = -1;
    for (int i = 0; i + 1 < static_cast<int>(path.size()); ++i) {
      if (g.has_edge(end, path[i])) {
        j = i;
        break;
      }
    }
    Piece piece;
    piece.colour = 0;
    if (j < 0) {
      piece.vertices = {end};  // isolated start vertex
    } else {
      piece.vertices.assign(path.begin() + j, path.end());
    }
    for (int v : piece.vertices) alive.reset(v);
    out.push_back(std::move(piece));
  }
  return out;
}

namespace {

struct EgpScale {
  long long size_ratio, degree_div, codegree_div;
};

EgpScale resolve_scale(const EgpOptions& opts, int r) {
  EgpScale s;
  long long r3 = static_cast<long long>(r) * r * r;
  s.size_ratio = opts.size_ratio > 0 ? opts.size_ratio : 1'000'000 * r3;
  s.degree_div = opts.degree_div > 0 ? opts.degree_div : 100;
  s.codegree_div = opts.codegree_div > 0 ? opts.codegree_div : s.size_ratio;
  return s;
}

}  // namespace

EgpResult egp_cover(const ColouredGraph& g, const std::vector<int>& a_side,
                    const std::vector<int>& b_side, const EgpOptions& opts) {
  EgpResult res;
  const int n = g.n();
  const int r = g.r();
  const EgpScale sc = resolve_scale(opts, r);
  const long long na = static_cast<long long>(a_side.size());
  const long long nb = static_cast<long long>(b_side.size());
  if (nb == 0) {
    res.success = true;
    res.message = "empty cover side";
    return res;
  }

  DynBitset a_mask(n), b_mask(n);
  for (int v : a_side) {
    if (v < 0 || v >= n) throw std::out_of_range("side vertex out of range");
    a_mask.set(v);
  }
  for (int v : b_side) {
    if (v < 0 || v >= n) throw std::out_of_range("side vertex out of range");
    if (a_mask.test(v))
      throw std::invalid_argument("cover sides are not disjoint");
    b_mask.set(v);
  }

  // Hypotheses. Degrees into the opposite side only; edges inside either side
  // are ignored throughout.
  {
    ClauseRow row;
    row.name = "side-ratio";
    row.requirement = "|A| >= " + itos(sc.size_ratio) + "*|B|";
    row.actual = "|A|=" + itos(na) + " |B|=" + itos(nb);
    row.satisfied = na >= sc.size_ratio * nb;
    res.rows.push_back(row);
  }
  {
    ClauseRow row;
    row.name = "b-degree";
    row.requirement = "deg(x,A) >= |A|/" + itos(sc.degree_div) +
                      " for every x in B";
    int worst = -1;
    long long worst_deg = -1;
    for (int x : b_side) {
      long long d = static_cast<long long>(g.deg_in(x, a_mask));
      if (d * sc.degree_div < na && (worst < 0 || d < worst_deg)) {
        worst = x;
        worst_deg = d;
      }
    }
    row.satisfied = worst < 0;
    row.actual = worst < 0 ? "all satisfied"
                           : "vertex " + itos(worst) + " has deg " +
                                 itos(worst_deg);
    res.rows.push_back(row);
  }
  for (const ClauseRow& row : res.rows) {
    if (!row.satisfied) {
      res.message = "hypothesis failed: " + row.name + " (" + row.actual + ")";
      return res;
    }
  }

  // Bucket each B-vertex by the lowest colour with at least |A|/(degree_div*r)
  // neighbours in A; one such colour exists by pigeonhole once the degree
  // hypothesis holds.
  std::vector<std::vector<int>> bucket(r + 1);
  for (int x : b_side) {
    int chosen = 0;
    for (int c = 1; c <= r && chosen == 0; ++c) {
      long long d = static_cast<long long>(g.deg_c_in(x, c, a_mask));
      if (d * sc.degree_div * r >= na) chosen = c;
    }
    if (chosen == 0) {
      res.message = "internal: no colour bucket for vertex " + itos(x);
      return res;
    }
    bucket[chosen].push_back(x);
  }

  DynBitset used(n);  // A-vertices consumed as middle/pendant vertices
  std::vector<DynBitset> ncol;  // colour rows of the current bucket, A-masked

  for (int c = 1; c <= r; ++c) {
    const std::vector<int>& bx = bucket[c];
    const int k = static_cast<int>(bx.size());
    if (k == 0) continue;
    ncol.assign(k, DynBitset(n));
    for (int i = 0; i < k; ++i) {
      ncol[i] = g.row_copy(bx[i], c);
      ncol[i] &= a_mask;
    }
    // Auxiliary graph: join bucket vertices of large colour-c codegree.
    Graph aux(k);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        long long cod = static_cast<long long>(ncol[i].count_and(ncol[j]));
        if (cod * sc.codegree_div >= na) aux.add_edge(i, j);
      }
    }
    Family aux_pieces = posa_cover(aux);

    auto fresh_common = [&](int i, int j) {
      DynBitset cand = ncol[i] & ncol[j];
      cand.subtract(used);
      return cand.find_first();
    };
    auto fresh_single = [&](int i) {
      DynBitset cand = ncol[i];
      cand.subtract(used);
      return cand.find_first();
    };

    for (const Piece& ap : aux_pieces) {
      const int t = ap.order();
      if (t >= 3) {
        // Cycle: each auxiliary edge becomes a 2-path through a fresh common
        // neighbour, giving a colour-c cycle of order 2t.
        Piece piece;
        piece.colour = c;
        for (int q = 0; q < t; ++q) {
          int i = ap.vertices[q];
          int j = ap.vertices[(q + 1) % t];
          int w = fresh_common(i, j);
          if (w < 0) {
            res.message = "fresh neighbour exhausted expanding a cycle edge (" +
                          itos(bx[i]) + "," + itos(bx[j]) + ") in colour " +
                          itos(c);
            return res;
          }
          piece.vertices.push_back(bx[i]);
          piece.vertices.push_back(w);
          used.set(w);
        }
        res.pieces.push_back(std::move(piece));
      } else if (t == 2) {
        // Lone auxiliary edge: a 4-cycle through two fresh common neighbours
        // when available, otherwise two pendant edges.
        int i = ap.vertices[0], j = ap.vertices[1];
        int w1 = fresh_common(i, j);
        int w2 = -1;
        if (w1 >= 0) {
          used.set(w1);
          w2 = fresh_common(i, j);
        }
        if (w2 >= 0) {
          used.set(w2);
          res.pieces.push_back(Piece{c, {bx[i], w1, bx[j], w2}});
        } else {
          for (int q : {i, j}) {
            int w = fresh_single(q);
            if (w < 0) {
              res.message = "fresh neighbour exhausted on pendant edge for " +
                            itos(bx[q]) + " in colour " + itos(c);
              return res;
            }
            used.set(w);
            res.pieces.push_back(Piece{c, {bx[q], w}});
          }
        }
      } else {
        int i = ap.vertices[0];
        int w = fresh_single(i);
        if (w < 0) {
          res.message = "fresh neighbour exhausted on pendant edge for " +
                        itos(bx[i]) + " in colour " + itos(c);
          return res;
        }
        used.set(w);
        res.pieces.push_back(Piece{c, {bx[i], w}});
      }
    }
  }

  {
    ClauseRow row;
    row.name = "piece-count";
    long long bound = sc.degree_div * r * r;
    row.requirement = "<= " + itos(bound);
    row.actual = itos(static_cast<long long>(res.pieces.size()));
    row.satisfied = static_cast<long long>(res.pieces.size()) <= bound;
    res.rows.push_back(row);
    if (!row.satisfied) {
      res.message = "piece count " + row.actual + " exceeds " + itos(bound);
      return res;
    }
  }

  ValidationResult vr = validate_family(g, res.pieces, false);
  if (!vr.ok) {
    res.message = "internal: constructed cover failed validation: " +
                  vr.message;
    return res;
  }
  DynBitset covered(n);
  for (const Piece& p : res.pieces)
    for (int v : p.vertices) covered.set(v);
  DynBitset missing = b_mask;
  missing.subtract(covered);
  if (missing.any()) {
    res.message = "internal: vertex " + itos(missing.find_first()) +
                  " left uncovered";
    return res;
  }
  res.success = true;
  res.message = itos(static_cast<long long>(res.pieces.size())) + " pieces";
  return res;
}

namespace {

// Exhaustive search for one cycle of length exactly len, canonical on its
// minimum vertex. Complete for small graphs within the step budget.
std::optional<std::vector<int>> cycle_by_enumeration(const Graph& g, int len,
                                                     long long budget) {
  const int n = g.n();
  std::vector<int> stk;
  std::vector<char> used(n, 0);
  long long steps = 0;
  std::optional<std::vector<int>> found;

  std::function<bool(int, int)> dfs = [&](int s, int v) {
    if (++steps > budget) return false;
    if (static_cast<int>(stk.size()) == len)
      return g.has_edge(v, s);
    for (int u = g.row(v).find_next(s + 1); u >= 0;
         u = g.row(v).find_next(u + 1)) {
      if (used[u]) continue;
      used[u] = 1;
      stk.push_back(u);
      if (dfs(s, u)) return true;
      stk.pop_back();
      used[u] = 0;
    }
    return false;
  };

  for (int s = 0; s < n && !found; ++s) {
    stk.assign(1, s);
    std::fill(used.begin(), used.end(), 0);
    used[s] = 1;
    if (dfs(s, s)) found = stk;
    if (steps > budget) break;
  }
  return found;
}

}  // namespace

std::optional<std::vector<int>> exact_length_cycle(const Graph& g,
                                                   int cycle_len,
                                                   uint64_t seed) {
  if (cycle_len < 3) throw std::invalid_argument("cycle length below 3");
  const int n = g.n();
  if (cycle_len > n) return std::nullopt;
  const int L = cycle_len;

  if (n <= 50) return cycle_by_enumeration(g, L, 20'000'000);

  // Peel to a core of minimum degree at least half the average degree: drop
  // any vertex whose current degree d satisfies d * n < e (= d < avg/2).
  const long long e = static_cast<long long>(g.num_edges());
  DynBitset core(n);
  std::vector<long long> deg(n);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    core.set(v);
    deg[v] = static_cast<long long>(g.deg(v));
    if (deg[v] * n < e) queue.push_back(v);
  }
  DynBitset queued(n);
  for (int v : queue) queued.set(v);
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    if (!core.test(v)) continue;
    core.reset(v);
    DynBitset nb = g.row(v) & core;
    for (int u = nb.find_first(); u >= 0; u = nb.find_next(u + 1)) {
      if (--deg[u] * n < e && !queued.test(u)) {
        queued.set(u);
        queue.push_back(u);
      }
    }
  }
  const int core_size = static_cast<int>(core.count());
  if (core_size < L) return std::nullopt;

  Rng rng(seed);
  std::vector<int> core_list;
  for (int v = core.find_first(); v >= 0; v = core.find_next(v + 1))
    core_list.push_back(v);

  auto chord_scan = [&](const std::vector<int>& path)
      -> std::optional<std::vector<int>> {
    for (int i = 0; i + L <= static_cast<int>(path.size()); ++i) {
      if (g.has_edge(path[i], path[i + L - 1]))
        return std::vector<int>(path.begin() + i, path.begin() + i + L);
    }
    return std::nullopt;
  };

  std::vector<int> path;
  DynBitset on(n);
  const long long rotation_cap = 50LL * n;
  for (int attempt = 0; attempt < 8; ++attempt) {
    path.assign(1, core_list[rng.uniform_index(core_list.size())]);
    on.clear();
    on.set(path[0]);
    long long rotations = 0;
    while (true) {
      // Extend at the end with a random unused core neighbour.
      DynBitset cand = g.row(path.back()) & core;
      cand.subtract(on);
      std::size_t cc = cand.count();
      if (cc > 0) {
        std::size_t pick = rng.uniform_index(cc);
        int u = cand.find_first();
        while (pick-- > 0) u = cand.find_next(u + 1);
        path.push_back(u);
        on.set(u);
        continue;
      }
      if (auto cyc = chord_scan(path)) return cyc;
      if (static_cast<int>(path.size()) == core_size ||
          rotations >= rotation_cap)
        break;
      // Rotation: pick a random path neighbour of the endpoint and reverse
      // the suffix after it, exposing a new endpoint.
      DynBitset nb = g.row(path.back()) & on;
      std::size_t nc = nb.count();
      if (nc <= 1) break;  // only its predecessor
      std::size_t pick = rng.uniform_index(nc);
      int u = nb.find_first();
      while (pick-- > 0) u = nb.find_next(u + 1);
      int j = -1;
      for (int i = 0; i < static_cast<int>(path.size()); ++i)
        if (path[i] == u) {
          j = i;
          break;
        }
      if (j < 0 || j + 2 >= static_cast<int>(path.size())) {
        ++rotations;
        continue;
      }
      std::reverse(path.begin() + j + 1, path.end());
      ++rotations;
    }
  }
  return std::nullopt;
}

MinDegreeResult min_degree_subgraph(const Graph& g, const Frac& eps) {
  const int n = g.n();
  MinDegreeResult res;
  const long long e = static_cast<long long>(g.num_edges());
  const Frac one(1);
  const Frac pre = one - eps * eps;  // 2e >= (1-eps^2) n^2
  if (!ge_scaled(2 * e, pre, static_cast<long long>(n) * n))
    throw std::invalid_argument(
        "edge count " + itos(e) + " below (1-eps^2)n^2/2");

  res.keep = DynBitset(n);
  const Frac low = one - eps;
  for (int v = 0; v < n; ++v) {
    if (le_scaled(static_cast<long long>(g.deg(v)), low, n))
      res.removed.push_back(v);
    else
      res.keep.set(v);
  }

  bool size_ok =
      le_scaled(static_cast<long long>(res.removed.size()), eps, n);
  const Frac floor = one - eps - eps;
  bool deg_ok = true;
  int worst = -1;
  for (int v = res.keep.find_first(); v >= 0; v = res.keep.find_next(v + 1)) {
    if (!ge_scaled(static_cast<long long>(g.deg_in(v, res.keep)), floor, n)) {
      deg_ok = false;
      worst = v;
      break;
    }
  }
  res.bounds_ok = size_ok && deg_ok;
  if (res.bounds_ok) {
    res.message = "removed " + itos(static_cast<long long>(res.removed.size())) +
                  " of " + itos(n);
  } else if (!size_ok) {
    res.message = "removed set larger than eps*n";
  } else {
    res.message = "vertex " + itos(worst) + " kept with degree below (1-2eps)n";
  }
  return res;
}

}  // namespace cyclepart
