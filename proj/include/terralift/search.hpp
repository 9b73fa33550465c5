#pragma once

// Decision procedures for uncased curves: the O(n 2^n) exhaustive casing
// loop, a pruned-but-complete branch and bound over casing bits backed by a
// difference-constraint relaxation, and a seeded random terrain synthesizer
// for property tests.

#include <random>
#include <thread>

#include "ingest.hpp"
#include "lift.hpp"

namespace terralift {

class search_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SearchReport {
  bool liftable = false;
  std::optional<Casing> witness_casing;
  std::optional<Terrain> witness_terrain;
  // component-reversal mask of the witness orientation (enumerate mode)
  std::uint64_t witness_orientation = 0;
  long long tried = 0;
  long long accepted = 0;
  long long ops = 0;
};

enum class OrientationMode { fixed, enumerate_all };

struct SearchOptions {
  OrientationMode orientations = OrientationMode::fixed;
  int max_n = 30;      // refuse the 2^n loop beyond this many crossings
  int threads = 1;
  bool all_witnesses = false;  // collect every accepted casing
};

struct SearchWitnessList {
  std::vector<std::pair<std::uint64_t, Casing>> accepted;  // (orientation mask, casing)
};

// ---------------------------------------------------------------------------
// lift_uncased: apply the cased test to all casings (and orientations).

inline SearchReport lift_uncased(const DiagramPtr& d, const SearchOptions& opt = {},
                                 SearchWitnessList* witnesses = nullptr) {
  const int n = d->crossing_count();
  const int k = d->component_count();
  if (n > opt.max_n)
    throw search_error("refused: " + std::to_string(n) +
                       " crossings exceeds the exhaustive-search cap; raise max_n to override");
  if (opt.orientations == OrientationMode::enumerate_all && k > 16)
    throw search_error("refused: too many components for orientation enumeration");

  SearchReport rep;
  const std::uint64_t ncasings = std::uint64_t{1} << n;
  const std::uint64_t nmasks =
      opt.orientations == OrientationMode::enumerate_all ? (std::uint64_t{1} << k) : 1;

  for (std::uint64_t mask = 0; mask < nmasks; ++mask) {
    DiagramPtr cur = d;
    for (int c = 0; c < k; ++c)
      if ((mask >> c) & 1) cur = reverse_orientation(*cur, c);

    const int nthreads = std::max(1, opt.threads);
    std::vector<long long> acc(nthreads, 0), ops(nthreads, 0);
    std::vector<std::uint64_t> first(nthreads, ncasings);
    std::vector<SearchWitnessList> wlists(nthreads);
    auto work = [&](int ti) {
      for (std::uint64_t bits = ti; bits < ncasings; bits += nthreads) {
        auto r = lift_cased_multi(cur, Casing(n, bits));
        ops[ti] += r.ops;
        if (r.ok()) {
          ++acc[ti];
          if (first[ti] == ncasings) first[ti] = bits;
          if (witnesses) wlists[ti].accepted.push_back({mask, Casing(n, bits)});
        }
      }
    };
    if (nthreads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    std::uint64_t best = ncasings;
    for (int t = 0; t < nthreads; ++t) {
      rep.tried += (ncasings + nthreads - 1 - t) / nthreads;
      rep.accepted += acc[t];
      rep.ops += ops[t];
      best = std::min(best, first[t]);
    }
    if (witnesses)
      for (auto& w : wlists)
        witnesses->accepted.insert(witnesses->accepted.end(), w.accepted.begin(),
                                   w.accepted.end());
    if (best < ncasings && !rep.liftable) {
      rep.liftable = true;
      rep.witness_orientation = mask;
      rep.witness_casing = Casing(n, best);
      rep.witness_terrain = lift_cased_multi(cur, *rep.witness_casing).terrain;
      if (!witnesses && !opt.all_witnesses) return rep;
    }
  }
  if (witnesses) {
    std::sort(witnesses->accepted.begin(), witnesses->accepted.end(),
              [](const auto& a, const auto& b) {
                return std::tie(a.first, a.second.bits) < std::tie(b.first, b.second.bits);
              });
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Difference-constraint relaxation over arc heights.
//
// A casing is liftable iff integer heights exist with, per arc a,
// 0 <= h(a) <= winding(left(a)), and per crossing: the under strand keeps
// its height, the over strand changes by its left-winding difference, and
// the over strand's thick-quadrant arc sits strictly above the under one's.
// All are difference constraints, so partial casings prune soundly via
// Bellman-Ford feasibility.

namespace detail_bb {

struct DiffSystem {
  // constraint x_to - x_from <= w encoded as edge (from -> to, w)
  struct E {
    int from, to;
    long long w;
  };
  int nvars = 0;  // arcs + 1 (last = the zero node)
  std::vector<E> fixed;                // range constraints
  std::vector<std::vector<E>> percross;  // constraints activated by a casing bit

  static DiffSystem build(const CurveDiagram& d) {
    DiffSystem s;
    const int na = d.arc_count();
    s.nvars = na + 1;
    const int zero = na;
    for (const Arc& a : d.arcs) {
      s.fixed.push_back({zero, a.id, d.winding[a.left_face]});  // h <= w_l
      s.fixed.push_back({a.id, zero, 0});                       // h >= 0
    }
    s.percross.resize(2 * d.crossing_count());
    for (int c = 0; c < d.crossing_count(); ++c)
      for (int bit = 0; bit < 2; ++bit) {
        auto& out = s.percross[2 * c + bit];
        const CrossingInfo& ci = d.crossings[c];
        int plus_pass = detail::pass_of_slot(ci, ci.plus_out_slot);
        for (int kk = 0; kk < 2; ++kk) {
          int in_arc = ci.slot_arc[ci.pass[kk].enter_slot];
          int out_arc = ci.slot_arc[ci.pass[kk].exit_slot()];
          bool over = (bit == 1) == (kk == plus_pass);
          long long dw = over ? d.winding[d.arcs[out_arc].left_face] -
                                    d.winding[d.arcs[in_arc].left_face]
                              : 0;
          out.push_back({in_arc, out_arc, dw});
          out.push_back({out_arc, in_arc, -dw});
        }
        auto q = crossing_quadrants(d, c);
        int dart1 = q.max_corner & 3, dart2 = (q.max_corner + 1) & 3;
        int arc1 = ci.slot_arc[dart1], arc2 = ci.slot_arc[dart2];
        bool first_is_plus = detail::pass_of_slot(ci, dart1) == plus_pass;
        int arc_plus = first_is_plus ? arc1 : arc2;
        int arc_minus = first_is_plus ? arc2 : arc1;
        int over_arc = bit ? arc_plus : arc_minus;
        int under_arc = bit ? arc_minus : arc_plus;
        out.push_back({over_arc, under_arc, -1});  // h_under - h_over <= -1
      }
    return s;
  }
};

// Bellman-Ford feasibility of fixed edges + the active per-crossing sets.
inline bool feasible(const DiffSystem& s, const std::vector<int>& bits,
                     long long* relaxations = nullptr) {
  std::vector<long long> dist(s.nvars, 0);
  const int V = s.nvars;
  for (int round = 0;; ++round) {
    bool changed = false;
    auto relax = [&](const DiffSystem::E& e) {
      if (relaxations) ++*relaxations;
      if (dist[e.from] + e.w < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.w;
        changed = true;
      }
    };
    for (const auto& e : s.fixed) relax(e);
    for (std::size_t c = 0; c < bits.size(); ++c)
      if (bits[c] >= 0)
        for (const auto& e : s.percross[2 * c + bits[c]]) relax(e);
    if (!changed) return true;
    if (round >= V) return false;  // negative cycle
  }
}

}  // namespace detail_bb

// Complete pruned search over casing bits (crossing by crossing).  Exact:
// explores the full 2^n tree but cuts branches whose difference-constraint
// relaxation is already infeasible; every leaf is confirmed by
// lift_cased_multi.  No output order guarantees beyond the witness being
// the first accepted leaf in most-constrained-first branch order.
inline SearchReport decide_uncased_pruned(const DiagramPtr& d) {
  const CurveDiagram& dd = *d;
  SearchReport rep;
  const int n = dd.crossing_count();
  if (dd.has_negative_winding()) {
    rep.tried = 1;
    return rep;
  }
  auto sys = detail_bb::DiffSystem::build(dd);
  std::vector<int> bits(n, -1);
  // branch order: crossings sorted by thick-quadrant winding descending
  // (deep crossings constrain the most), id as tiebreak
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto qa = crossing_quadrants(dd, a), qb = crossing_quadrants(dd, b);
    int wa = dd.winding[dd.corner_face(a, qa.max_corner)];
    int wb = dd.winding[dd.corner_face(b, qb.max_corner)];
    return std::tie(wb, a) < std::tie(wa, b);
  });
  auto rec = [&](auto&& self, int idx) -> bool {
    ++rep.tried;
    if (!detail_bb::feasible(sys, bits, &rep.ops)) return false;
    if (idx == n) {
      Casing cas(n, 0);
      for (int c = 0; c < n; ++c) cas.set(c, bits[c] == 1);
      auto r = lift_cased_multi(d, cas);
      rep.ops += r.ops;
      if (r.ok()) {
        rep.liftable = true;
        ++rep.accepted;
        rep.witness_casing = cas;
        rep.witness_terrain = std::move(r.terrain);
        return true;
      }
      return false;
    }
    for (int v = 0; v < 2; ++v) {
      bits[order[idx]] = v;
      if (self(self, idx + 1)) return true;
    }
    bits[order[idx]] = -1;
    return false;
  };
  rec(rec, 0);
  return rep;
}

// ---------------------------------------------------------------------------
// synthesize_random_terrain: seeded generator of valid desk-scale terrains
// built by stacking randomly placed clockwise convex patches.

struct SynthOptions {
  int patches = 3;        // 1..8
  int max_crossings = 14;
};

inline Terrain synthesize_random_terrain(std::uint64_t seed, const SynthOptions& opt = {}) {
  if (opt.patches < 1 || opt.patches > 8)
    throw search_error("SizeOutOfRange: patches must be in 1..8");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::uniform_real_distribution<double> center(25.0, 75.0);
    std::uniform_real_distribution<double> radius(9.0, 26.0);
    std::uniform_int_distribution<int> nvert(6, 9);
    std::uniform_real_distribution<double> jitter(-0.12, 0.12);
    std::vector<PolylineCurve> curves;
    for (int p = 0; p < opt.patches; ++p) {
      PolylineCurve c;
      c.id = p;
      double cx = center(rng), cy = center(rng), r = radius(rng);
      int m = nvert(rng);
      for (int v = 0; v < m; ++v) {
        // decreasing angle = clockwise
        double ang = -2.0 * M_PI * v / m + jitter(rng);
        double rr = r * (1.0 + jitter(rng));
        c.points.push_back({cx + rr * std::cos(ang), cy + rr * std::sin(ang)});
      }
      curves.push_back(std::move(c));
    }
    DiagramPtr d;
    try {
      d = arrange(curves);
    } catch (const ingest_error&) {
      continue;  // degenerate placement: redraw
    }
    if (d->crossing_count() > opt.max_crossings) continue;
    // random stacking order; the casing puts the higher patch on top
    std::vector<int> z(opt.patches);
    std::iota(z.begin(), z.end(), 0);
    std::shuffle(z.begin(), z.end(), rng);
    std::vector<int> rank(opt.patches);
    for (int i = 0; i < opt.patches; ++i) rank[z[i]] = i;
    Casing cas(d->crossing_count(), 0);
    for (int c = 0; c < d->crossing_count(); ++c) {
      const CrossingInfo& ci = d->crossings[c];
      int plus_pass = detail::pass_of_slot(ci, ci.plus_out_slot);
      int comp_plus = ci.pass_component[plus_pass];
      int comp_minus = ci.pass_component[1 - plus_pass];
      cas.set(c, rank[comp_plus] > rank[comp_minus]);
    }
    auto r = lift_cased_multi(d, cas);
    if (!r.ok())
      throw search_error("internal: stacked patches failed to lift");
    return std::move(*r.terrain);
  }
  throw search_error("could not synthesize a non-degenerate instance for this seed");
}

}  // namespace terralift
