#pragma once
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclepart/bitset.hpp"

namespace cyclepart {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_number(line) {}
  int line_number;
};

// Plain simple graph with one bitset row per vertex. Used wherever the
// algorithms need fast neighbourhood intersections; sizes stay small enough
// (n^2 bits) for every caller in this library.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), rows_(n, DynBitset(n)) {}

  int n() const { return n_; }
  bool has_edge(int u, int v) const { return rows_[u].test(v); }
  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("self-loop");
    rows_[u].set(v);
    rows_[v].set(u);
  }
  void remove_edge(int u, int v) {
    rows_[u].reset(v);
    rows_[v].reset(u);
  }
  const DynBitset& row(int v) const { return rows_[v]; }
  std::size_t deg(int v) const { return rows_[v].count(); }
  std::size_t deg_in(int v, const DynBitset& mask) const {
    return rows_[v].count_and(mask);
  }
  std::size_t num_edges() const {
    std::size_t s = 0;
    for (int v = 0; v < n_; ++v) s += deg(v);
    return s / 2;
  }
  // Calls f(u, v) once per edge with u < v, ascending.
  template <typename F>
  void for_each_edge(F f) const {
    for (int u = 0; u < n_; ++u)
      for (int v = rows_[u].find_next(u + 1); v >= 0;
           v = rows_[u].find_next(v + 1))
        f(u, v);
  }

 private:
  int n_ = 0;
  std::vector<DynBitset> rows_;
};

// Edge-coloured simple graph, colours 1..r (0 means "no edge"). Storage is
// chosen at construction: one bitset row per (vertex, colour) when that fits
// a memory budget, otherwise compressed sorted adjacency lists. The bitset
// form additionally keeps colour-agnostic rows for masked degree queries.
class ColouredGraph {
 public:
  struct Edge {
    int u, v, colour;
  };

  static constexpr std::uint64_t kDefaultBitBudget = 3'000'000'000ULL;

  enum class Mode { kAuto, kBitset, kCsr };

  ColouredGraph() = default;
  ColouredGraph(int n, int r, const std::vector<Edge>& edges,
                Mode mode = Mode::kAuto);

  int n() const { return n_; }
  int r() const { return r_; }
  bool bitset_mode() const { return bitset_mode_; }
  std::size_t num_edges() const { return num_edges_; }

  int colour_of(int u, int v) const;
  bool has_edge(int u, int v) const { return colour_of(u, v) != 0; }
  std::size_t deg(int v) const;
  std::size_t deg_c(int v, int c) const;
  std::size_t deg_in(int v, const DynBitset& mask) const;
  std::size_t deg_c_in(int v, int c, const DynBitset& mask) const;

  // Bitset mode only: colour-c neighbourhood row, and the all-colours row.
  const DynBitset& row(int v, int c) const;
  const DynBitset& row_all(int v) const;
  // Works in both modes (materialises a copy under CSR).
  DynBitset row_copy(int v, int c) const;
  DynBitset row_all_copy(int v) const;

  // Calls f(u, v, colour) once per edge with u < v, ascending by (u, v).
  void for_each_edge(const std::function<void(int, int, int)>& f) const;
  // Calls f(u, colour) for each neighbour u of v, ascending by u.
  void for_each_neighbour(int v,
                          const std::function<void(int, int)>& f) const;

  std::vector<Edge> edge_list() const;

  // Edges of one colour as a plain graph.
  Graph mono_subgraph(int c) const;
  // All edges regardless of colour as a plain graph.
  Graph union_subgraph() const;

  // Subgraph induced on the vertices of `keep`, relabelled to 0..k-1 in
  // ascending old-id order. Optionally reports the old ids.
  ColouredGraph induced(const DynBitset& keep,
                        std::vector<int>* old_ids = nullptr) const;

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
  }
  int n_ = 0;
  int r_ = 0;
  bool bitset_mode_ = true;
  std::size_t num_edges_ = 0;
  // Bitset storage: rows_[c-1][v] and all_rows_[v].
  std::vector<std::vector<DynBitset>> rows_;
  std::vector<DynBitset> all_rows_;
  // CSR storage: neighbours of v are csr_adj_[csr_off_[v]..csr_off_[v+1]),
  // sorted by vertex, with parallel colours.
  std::vector<std::size_t> csr_off_;
  std::vector<int> csr_adj_;
  std::vector<int> csr_col_;
  std::vector<std::size_t> csr_deg_;
};

// Text format:
//   first non-comment line: "n r"
//   then one line per edge: "u v c" with 0 <= u,v < n, 1 <= c <= r.
// '#' starts a comment; blank lines are ignored.
ColouredGraph read_coloured_graph(std::istream& in);
ColouredGraph read_coloured_graph_file(const std::string& path);
void write_coloured_graph(std::ostream& out, const ColouredGraph& g);
void write_coloured_graph_file(const std::string& path, const ColouredGraph& g);

}  // namespace cyclepart
