#pragma once

// Exhaustive height-assignment oracle used to validate the lift algorithms.
// Walks all per-arc heights in [0, winding(left)] depth-first, pruning a
// branch only on a definite violation (range, or a fully assigned crossing
// whose stacks do not commute / disagree with the casing), and confirms any
// hit with verify_terrain.  Independent of the traversal/Bellman-Ford path.

#include <terralift/lift.hpp>

namespace ti {

using namespace terralift;

struct BruteForce {
  bool feasible = false;
  std::vector<int> heights;
  long long nodes = 0;
};

inline BruteForce brute_force_heights(const CurveDiagram& d, const Casing& casing) {
  BruteForce out;
  if (d.has_negative_winding()) return out;
  const int na = d.arc_count();
  // crossings become checkable once their last flanking arc is assigned
  std::vector<std::vector<int>> ready(na);
  for (int c = 0; c < d.crossing_count(); ++c) {
    int last = -1;
    for (int s = 0; s < 4; ++s) last = std::max(last, d.crossings[c].slot_arc[s]);
    ready[last].push_back(c);
  }
  std::vector<int> h(na, 0);
  auto rec = [&](auto&& self, int a) -> bool {
    if (a == na) {
      auto rep = verify_terrain(d, h, casing);
      return rep.ok();
    }
    int hi = d.winding[d.arcs[a].left_face];
    for (int v = 0; v <= hi; ++v) {
      ++out.nodes;
      h[a] = v;
      bool ok = true;
      for (int c : ready[a]) {
        auto bit = check_crossing_stacks(d, h, c);
        if (!bit || *bit != casing.bit(c)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, a + 1)) return true;
    }
    return false;
  };
  if (rec(rec, 0)) {
    out.feasible = true;
    out.heights = h;
  }
  return out;
}

}  // namespace ti
