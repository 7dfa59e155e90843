#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cyclepart/clusters.hpp"
#include "cyclepart/params.hpp"

namespace cyclepart {

struct SampleSet {
  DynBitset a;  // the sampled set, disjoint from the forbidden set
  Frac p;
  uint64_t seed = 0;
  int attempts = 0;
  bool ok = false;
  bool window_ok = false;         // size window on p
  bool window_overridden = false;
  std::vector<ClauseRow> rows;    // pre rows plus the last attempt's clauses
  std::string message;
};

// Draws A from V minus `forbidden` by independent Bernoulli(p) picks and
// re-draws (up to `retries` attempts total) until A satisfies, exactly:
//   (a) |A| >= (p/2) n
//   (b) |A intersect V_i| <= 2p |V_i| for every cluster
//   (c) deg(v, A intersect V_i) >= (p/2) deg(v, V_i) for every v and i with
//       deg(v, V_i) > 30p |V_i|
//   (d) deg(v, A) >= |A|/100 for every v with deg(v, V minus forbidden) > n/40.
// Preconditions: V_0 inside forbidden, |forbidden intersect V_i| <= 10p |V_i|,
// and m log(n) / sqrt(n) < p < 1/100; the last is a size window that bench
// instances cannot meet, so allow_window_override records it instead of
// failing.
SampleSet sample_with_properties(const ColouredGraph& g,
                                 const ClusterPartition& cp,
                                 const DynBitset& forbidden, const Frac& p,
                                 uint64_t seed, int retries = 10,
                                 bool allow_window_override = false);

}  // namespace cyclepart
