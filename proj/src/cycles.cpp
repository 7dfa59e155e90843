#include "cyclepart/cycles.hpp"

#include <sstream>

namespace cyclepart {

namespace {
std::string piece_error(std::size_t idx, const std::string& what) {
  std::ostringstream ss;
  ss << "piece " << idx << ": " << what;
  return ss.str();
}
}  // namespace

ValidationResult validate_family(const ColouredGraph& g, const Family& family,
                                 bool require_partition) {
  DynBitset used(g.n());
  for (std::size_t pi = 0; pi < family.size(); ++pi) {
    const Piece& p = family[pi];
    const auto& vs = p.vertices;
    if (vs.empty()) return {false, piece_error(pi, "empty vertex list")};
    for (int v : vs) {
      if (v < 0 || v >= g.n())
        return {false, piece_error(pi, "vertex out of range")};
      if (used.test(v))
        return {false, piece_error(pi, "vertex " + std::to_string(v) +
                                           " appears twice")};
      used.set(v);
    }
    if (vs.size() >= 2) {
      if (p.colour < 1 || p.colour > g.r())
        return {false, piece_error(pi, "colour out of range")};
      std::size_t m = vs.size() == 2 ? 1 : vs.size();
      for (std::size_t i = 0; i < m; ++i) {
        int a = vs[i], b = vs[(i + 1) % vs.size()];
        int c = g.colour_of(a, b);
        if (c == 0)
          return {false, piece_error(pi, "missing edge " + std::to_string(a) +
                                             "-" + std::to_string(b))};
        if (c != p.colour)
          return {false,
                  piece_error(pi, "edge " + std::to_string(a) + "-" +
                                      std::to_string(b) + " has colour " +
                                      std::to_string(c) + ", expected " +
                                      std::to_string(p.colour))};
      }
    }
  }
  if (require_partition) {
    std::size_t covered = used.count();
    if (covered != static_cast<std::size_t>(g.n())) {
      std::ostringstream ss;
      ss << "covers " << covered << " of " << g.n() << " vertices";
      return {false, ss.str()};
    }
  }
  return {true, ""};
}

Family trivial_partition(const ColouredGraph& g) {
  Family f;
  f.reserve(g.n());
  for (int v = 0; v < g.n(); ++v) f.push_back(Piece{0, {v}});
  return f;
}

std::size_t family_order(const Family& family) {
  std::size_t s = 0;
  for (const Piece& p : family) s += p.vertices.size();
  return s;
}

}  // namespace cyclepart
