#pragma once
#include <string>
#include <vector>

#include "cyclepart/graph.hpp"

namespace cyclepart {

// One piece of a partition into monochromatic cycles. Degenerate pieces are
// allowed: a single vertex (size 1) and a single edge (size 2) both count as
// cycles. For size >= 2 every edge of the piece, including the closing edge
// when size >= 3, must exist and carry `colour`. For size 1 the colour is
// ignored (stored as 0 by convention).
struct Piece {
  int colour = 0;
  std::vector<int> vertices;

  int order() const { return static_cast<int>(vertices.size()); }
};

using Family = std::vector<Piece>;

struct ValidationResult {
  bool ok = true;
  std::string message;  // empty iff ok
};

// Checks that every piece is a monochromatic cycle of g, that pieces are
// pairwise vertex-disjoint, and (when require_partition) that they cover V(g).
ValidationResult validate_family(const ColouredGraph& g, const Family& family,
                                 bool require_partition);

// Convenience: one piece per vertex (the always-available trivial partition).
Family trivial_partition(const ColouredGraph& g);

std::size_t family_order(const Family& family);

}  // namespace cyclepart
