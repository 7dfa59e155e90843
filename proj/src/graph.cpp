#include "cyclepart/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cyclepart {

ColouredGraph::ColouredGraph(int n, int r, const std::vector<Edge>& edges,
                             Mode mode)
    : n_(n), r_(r) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (r < 1) throw std::invalid_argument("colour count must be at least 1");
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (e.colour < 1 || e.colour > r)
      throw std::invalid_argument("edge colour out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
    sorted.push_back(e);
  }
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i - 1].u == sorted[i].u && sorted[i - 1].v == sorted[i].v)
      throw std::invalid_argument("duplicate edge");
  num_edges_ = sorted.size();

  std::uint64_t bit_cost = std::uint64_t(r + 1) * n * n;
  bitset_mode_ = (mode == Mode::kBitset) ||
                 (mode == Mode::kAuto && bit_cost <= kDefaultBitBudget);

  if (bitset_mode_) {
    rows_.assign(r, std::vector<DynBitset>(n, DynBitset(n)));
    all_rows_.assign(n, DynBitset(n));
    for (const Edge& e : sorted) {
      rows_[e.colour - 1][e.u].set(e.v);
      rows_[e.colour - 1][e.v].set(e.u);
      all_rows_[e.u].set(e.v);
      all_rows_[e.v].set(e.u);
    }
  } else {
    csr_deg_.assign(n, 0);
    std::vector<std::size_t> cnt(n, 0);
    for (const Edge& e : sorted) {
      ++cnt[e.u];
      ++cnt[e.v];
    }
    csr_off_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) csr_off_[v + 1] = csr_off_[v] + cnt[v];
    csr_adj_.assign(csr_off_[n], 0);
    csr_col_.assign(csr_off_[n], 0);
    std::vector<std::size_t> pos(csr_off_.begin(), csr_off_.end() - 1);
    // Edges are sorted by (u, v); filling forward keeps each list sorted for
    // the smaller endpoint, but the reverse direction needs a final sort.
    for (const Edge& e : sorted) {
      csr_adj_[pos[e.u]] = e.v;
      csr_col_[pos[e.u]++] = e.colour;
      csr_adj_[pos[e.v]] = e.u;
      csr_col_[pos[e.v]++] = e.colour;
    }
    for (int v = 0; v < n; ++v) {
      csr_deg_[v] = cnt[v];
      std::vector<std::pair<int, int>> tmp;
      tmp.reserve(cnt[v]);
      for (std::size_t i = csr_off_[v]; i < csr_off_[v + 1]; ++i)
        tmp.emplace_back(csr_adj_[i], csr_col_[i]);
      std::sort(tmp.begin(), tmp.end());
      for (std::size_t i = 0; i < tmp.size(); ++i) {
        csr_adj_[csr_off_[v] + i] = tmp[i].first;
        csr_col_[csr_off_[v] + i] = tmp[i].second;
      }
    }
  }
}

int ColouredGraph::colour_of(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return 0;
  if (bitset_mode_) {
    if (!all_rows_[u].test(v)) return 0;
    for (int c = 1; c <= r_; ++c)
      if (rows_[c - 1][u].test(v)) return c;
    return 0;
  }
  auto lo = csr_adj_.begin() + csr_off_[u];
  auto hi = csr_adj_.begin() + csr_off_[u + 1];
  auto it = std::lower_bound(lo, hi, v);
  if (it == hi || *it != v) return 0;
  return csr_col_[it - csr_adj_.begin()];
}

std::size_t ColouredGraph::deg(int v) const {
  check_vertex(v);
  return bitset_mode_ ? all_rows_[v].count() : csr_deg_[v];
}

std::size_t ColouredGraph::deg_c(int v, int c) const {
  check_vertex(v);
  if (bitset_mode_) return rows_[c - 1][v].count();
  std::size_t s = 0;
  for (std::size_t i = csr_off_[v]; i < csr_off_[v + 1]; ++i)
    s += (csr_col_[i] == c);
  return s;
}

std::size_t ColouredGraph::deg_in(int v, const DynBitset& mask) const {
  check_vertex(v);
  if (bitset_mode_) return all_rows_[v].count_and(mask);
  std::size_t s = 0;
  for (std::size_t i = csr_off_[v]; i < csr_off_[v + 1]; ++i)
    s += mask.test(csr_adj_[i]);
  return s;
}

std::size_t ColouredGraph::deg_c_in(int v, int c, const DynBitset& mask) const {
  check_vertex(v);
  if (bitset_mode_) return rows_[c - 1][v].count_and(mask);
  std::size_t s = 0;
  for (std::size_t i = csr_off_[v]; i < csr_off_[v + 1]; ++i)
    s += (csr_col_[i] == c && mask.test(csr_adj_[i]));
  return s;
}

const DynBitset& ColouredGraph::row(int v, int c) const {
  if (!bitset_mode_) throw std::logic_error("row(): CSR storage");
  check_vertex(v);
  return rows_[c - 1][v];
}

const DynBitset& ColouredGraph::row_all(int v) const {
  if (!bitset_mode_) throw std::logic_error("row_all(): CSR storage");
  check_vertex(v);
  return all_rows_[v];
}

DynBitset ColouredGraph::row_copy(int v, int c) const {
  check_vertex(v);
  if (bitset_mode_) return rows_[c - 1][v];
  DynBitset b(n_);
  for (std::size_t i = csr_off_[v]; i < csr_off_[v + 1]; ++i)
    if (csr_col_[i] == c) b.set(csr_adj_[i]);
  return b;
}

DynBitset ColouredGraph::row_all_copy(int v) const {
  check_vertex(v);
  if (bitset_mode_) return all_rows_[v];
  DynBitset b(n_);
  for (std::size_t i = csr_off_[v]; i < csr_off_[v + 1]; ++i)
    b.set(csr_adj_[i]);
  return b;
}

void ColouredGraph::for_each_edge(
    const std::function<void(int, int, int)>& f) const {
  if (bitset_mode_) {
    for (int u = 0; u < n_; ++u)
      for (int v = all_rows_[u].find_next(u + 1); v >= 0;
           v = all_rows_[u].find_next(v + 1))
        f(u, v, colour_of(u, v));
  } else {
    for (int u = 0; u < n_; ++u)
      for (std::size_t i = csr_off_[u]; i < csr_off_[u + 1]; ++i)
        if (csr_adj_[i] > u) f(u, csr_adj_[i], csr_col_[i]);
  }
}

void ColouredGraph::for_each_neighbour(
    int v, const std::function<void(int, int)>& f) const {
  check_vertex(v);
  if (bitset_mode_) {
    for (int u = all_rows_[v].find_first(); u >= 0;
         u = all_rows_[v].find_next(u + 1))
      f(u, colour_of(v, u));
  } else {
    for (std::size_t i = csr_off_[v]; i < csr_off_[v + 1]; ++i)
      f(csr_adj_[i], csr_col_[i]);
  }
}

std::vector<ColouredGraph::Edge> ColouredGraph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for_each_edge([&](int u, int v, int c) { out.push_back({u, v, c}); });
  return out;
}

Graph ColouredGraph::mono_subgraph(int c) const {
  Graph g(n_);
  for_each_edge([&](int u, int v, int ec) {
    if (ec == c) g.add_edge(u, v);
  });
  return g;
}

Graph ColouredGraph::union_subgraph() const {
  Graph g(n_);
  for_each_edge([&](int u, int v, int) { g.add_edge(u, v); });
  return g;
}

ColouredGraph ColouredGraph::induced(const DynBitset& keep,
                                     std::vector<int>* old_ids) const {
  if (keep.size() != n_) throw std::invalid_argument("induced(): mask size");
  std::vector<int> ids = keep.to_vector();
  std::vector<int> newid(n_, -1);
  for (std::size_t i = 0; i < ids.size(); ++i) newid[ids[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for_each_edge([&](int u, int v, int c) {
    if (newid[u] >= 0 && newid[v] >= 0) edges.push_back({newid[u], newid[v], c});
  });
  if (old_ids) *old_ids = ids;
  return ColouredGraph(static_cast<int>(ids.size()), r_, edges);
}

namespace {
// Strips comments, splits into tokens, tracks physical line numbers.
struct LineReader {
  std::istream& in;
  int line = 0;
  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      std::istringstream ss(raw);
      tokens.clear();
      std::string t;
      while (ss >> t) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }
};

int parse_int(const std::string& s, int line, const char* what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'", line);
  }
}
}  // namespace

ColouredGraph read_coloured_graph(std::istream& in) {
  LineReader lr{in};
  std::vector<std::string> tok;
  if (!lr.next(tok)) throw ParseError("missing header", lr.line);
  if (tok.size() != 2) throw ParseError("header must be 'n r'", lr.line);
  int n = parse_int(tok[0], lr.line, "vertex count");
  int r = parse_int(tok[1], lr.line, "colour count");
  if (n < 0) throw ParseError("negative vertex count", lr.line);
  if (r < 1) throw ParseError("colour count must be at least 1", lr.line);
  std::vector<ColouredGraph::Edge> edges;
  while (lr.next(tok)) {
    if (tok.size() != 3) throw ParseError("edge line must be 'u v c'", lr.line);
    int u = parse_int(tok[0], lr.line, "vertex");
    int v = parse_int(tok[1], lr.line, "vertex");
    int c = parse_int(tok[2], lr.line, "colour");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError("vertex out of range", lr.line);
    if (u == v) throw ParseError("self-loop", lr.line);
    if (c < 1 || c > r) throw ParseError("colour out of range", lr.line);
    edges.push_back({u, v, c});
  }
  try {
    return ColouredGraph(n, r, edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), lr.line);
  }
}

ColouredGraph read_coloured_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_coloured_graph(in);
}

void write_coloured_graph(std::ostream& out, const ColouredGraph& g) {
  out << g.n() << ' ' << g.r() << '\n';
  g.for_each_edge(
      [&](int u, int v, int c) { out << u << ' ' << v << ' ' << c << '\n'; });
}

void write_coloured_graph_file(const std::string& path,
                               const ColouredGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_coloured_graph(out, g);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cyclepart
