#pragma once

// Deciding and constructing generalized-terrain liftings of cased curves.
//
// A terrain assigns every directed arc an integer height h(a), the number of
// surface layers below the boundary strand there.  Crossing an arc from its
// left face to its right face inserts the arc's bounded sheet at level h(a)
// into the stack of sheets, so 0 <= h(a) <= winding(left(a)).  At a crossing
// the under-strand keeps its height and the over-strand's height changes by
// the difference of its left-face windings; the strand whose bounded sheet
// sits higher in the thickest quadrant is the one that passes above.
//
// verify_terrain rebuilds the sheet stacks around every crossing from the
// heights alone and is the module's ground-truth oracle; the lift_cased_*
// fast paths are validated against it by the test suite.

#include <cstdint>
#include <limits>
#include <optional>

#include "diagram.hpp"

namespace terralift {

// ---------------------------------------------------------------------------
// sheet stacks (derived from heights)

struct SheetStacks {
  // stack[f] = sheet class labels from bottom to top, |stack[f]| = winding(f)
  std::vector<std::vector<int>> stack;
  int class_count = 0;
};

struct Terrain {
  DiagramPtr diagram;
  std::vector<int> heights;  // per arc
  std::vector<int> bases;    // per component (start-strand heights)
  Casing casing;             // casing induced by the heights
  SheetStacks stacks;
};

// ---------------------------------------------------------------------------
// verify_terrain

enum class verify_errc {
  ok,
  bad_size,
  negative_winding,
  height_out_of_range,
  stack_mismatch,
  casing_mismatch,
};

struct VerifyReport {
  verify_errc err = verify_errc::ok;
  int face = -1, arc = -1, crossing = -1;
  std::string detail;
  bool ok() const { return err == verify_errc::ok; }
};

namespace detail {

// The four darts around crossing c in corner order starting at the minimum
// corner: step k crosses the dart at slot (min+k)%4.  Insertion routes from
// the min corner to the diagonally opposite max corner:
//   route A: corners min -> min+1 -> min+2, crossing darts min+1, min+2
//   route B: corners min -> min+3 -> min+2, crossing darts min,   min+3
// Both cross each dart's arc from its left face to its right face.
struct CrossingRoutes {
  int arcA1, arcA2;  // route A in order
  int arcB1, arcB2;  // route B in order
  int strandA1, strandA2, strandB1, strandB2;  // pass index 0/1 owning each arc end
};

inline int pass_of_slot(const CrossingInfo& ci, int slot) {
  for (int k = 0; k < 2; ++k)
    if (ci.pass[k].enter_slot == slot || ci.pass[k].exit_slot() == slot) return k;
  return -1;
}

inline CrossingRoutes crossing_routes(const CurveDiagram& d, int c) {
  auto q = crossing_quadrants(d, c);
  const CrossingInfo& ci = d.crossings[c];
  int m = q.min_corner;
  CrossingRoutes r;
  r.arcA1 = ci.slot_arc[(m + 1) & 3];
  r.arcA2 = ci.slot_arc[(m + 2) & 3];
  r.arcB1 = ci.slot_arc[m & 3];
  r.arcB2 = ci.slot_arc[(m + 3) & 3];
  r.strandA1 = pass_of_slot(ci, (m + 1) & 3);
  r.strandA2 = pass_of_slot(ci, (m + 2) & 3);
  r.strandB1 = pass_of_slot(ci, m & 3);
  r.strandB2 = pass_of_slot(ci, (m + 3) & 3);
  return r;
}

// Insert `label` at position h into a small stack; -1 on range error.
inline bool stack_insert(std::vector<int>& st, int label, int h) {
  if (h < 0 || h > (int)st.size()) return false;
  st.insert(st.begin() + h, label);
  return true;
}

}  // namespace detail

// Induced casing bit at crossing c: compare the heights of the two arcs
// flanking the thickest quadrant; the +i strand is above iff its flanking
// arc is the higher one.  Heights must already be crossing-consistent.
inline std::optional<bool> induced_casing_bit(const CurveDiagram& d,
                                              const std::vector<int>& heights, int c) {
  auto q = crossing_quadrants(d, c);
  const CrossingInfo& ci = d.crossings[c];
  int dart1 = q.max_corner & 3;
  int dart2 = (q.max_corner + 1) & 3;
  int arc1 = ci.slot_arc[dart1], arc2 = ci.slot_arc[dart2];
  int s1 = detail::pass_of_slot(ci, dart1);
  int plus_pass = detail::pass_of_slot(ci, ci.plus_out_slot);
  int h_first = heights[arc1], h_second = heights[arc2];
  int h_plus = (s1 == plus_pass) ? h_first : h_second;
  int h_minus = (s1 == plus_pass) ? h_second : h_first;
  if (h_plus == h_minus) return std::nullopt;
  return h_plus > h_minus;
}

// Per-crossing stack consistency: both insertion routes from the thinnest
// quadrant to the thickest must produce the same stack.  Labels 0..W-1 are
// the through-sheets, -1 and -2 the bounded sheets of the two strands.
// Returns the induced casing bit, or nullopt when the stacks do not commute.
inline std::optional<bool> check_crossing_stacks(const CurveDiagram& d,
                                                 const std::vector<int>& heights, int c) {
  auto q = crossing_quadrants(d, c);
  auto r = detail::crossing_routes(d, c);
  const int wmin = d.winding[d.corner_face(c, q.min_corner)];
  std::vector<int> base(wmin);
  for (int j = 0; j < wmin; ++j) base[j] = j;
  std::vector<int> sa = base, sb = base;
  bool okA = detail::stack_insert(sa, -1 - r.strandA1, heights[r.arcA1]) &&
             detail::stack_insert(sa, -1 - r.strandA2, heights[r.arcA2]);
  bool okB = detail::stack_insert(sb, -1 - r.strandB1, heights[r.arcB1]) &&
             detail::stack_insert(sb, -1 - r.strandB2, heights[r.arcB2]);
  if (!okA || !okB || sa != sb) return std::nullopt;
  return induced_casing_bit(d, heights, c);
}

// O(1) crossing consistency used by the fast paths: the under strand keeps
// its height, the over strand's height changes by its left-winding change,
// and the over strand's sheet sits strictly higher in the thickest quadrant.
// Equivalent to the commuting-stack condition checked by verify_terrain.
inline std::optional<bool> check_crossing_fast(const CurveDiagram& d,
                                               const std::vector<int>& heights, int c) {
  auto bit = induced_casing_bit(d, heights, c);
  if (!bit) return std::nullopt;
  const CrossingInfo& ci = d.crossings[c];
  int plus_pass = detail::pass_of_slot(ci, ci.plus_out_slot);
  for (int k = 0; k < 2; ++k) {
    int in_arc = ci.slot_arc[ci.pass[k].enter_slot];
    int out_arc = ci.slot_arc[ci.pass[k].exit_slot()];
    bool over = (*bit == (k == plus_pass));
    if (over) {
      int dw = d.winding[d.arcs[out_arc].left_face] - d.winding[d.arcs[in_arc].left_face];
      if (heights[out_arc] - heights[in_arc] != dw) return std::nullopt;
    } else {
      if (heights[out_arc] != heights[in_arc]) return std::nullopt;
    }
  }
  return bit;
}

inline VerifyReport verify_terrain(const CurveDiagram& d, const std::vector<int>& heights,
                                   const Casing& casing) {
  VerifyReport rep;
  if ((int)heights.size() != d.arc_count() || casing.n != d.crossing_count()) {
    rep.err = verify_errc::bad_size;
    rep.detail = "heights/casing size mismatch";
    return rep;
  }
  for (int f = 0; f < d.face_count(); ++f)
    if (d.winding[f] < 0) {
      rep.err = verify_errc::negative_winding;
      rep.face = f;
      return rep;
    }
  for (const Arc& a : d.arcs) {
    int w = d.winding[a.left_face];
    if (heights[a.id] < 0 || heights[a.id] > w) {
      rep.err = verify_errc::height_out_of_range;
      rep.arc = a.id;
      return rep;
    }
  }
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto bit = check_crossing_stacks(d, heights, c);
    if (!bit) {
      rep.err = verify_errc::stack_mismatch;
      rep.crossing = c;
      rep.detail = "insertion routes disagree";
      return rep;
    }
    if (*bit != casing.bit(c)) {
      rep.err = verify_errc::casing_mismatch;
      rep.crossing = c;
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// stacks with sheet classes (cells glued across arcs)

inline SheetStacks compute_stacks(const CurveDiagram& d, const std::vector<int>& heights) {
  std::vector<int> offset(d.face_count() + 1, 0);
  for (int f = 0; f < d.face_count(); ++f) offset[f + 1] = offset[f] + d.winding[f];
  const int ncells = offset[d.face_count()];
  detail::UnionFind uf(ncells);
  for (const Arc& a : d.arcs) {
    int wl = d.winding[a.left_face];
    int h = heights[a.id];
    for (int j = 0; j < wl; ++j) {
      int rj = j < h ? j : j + 1;
      uf.unite(offset[a.left_face] + j, offset[a.right_face] + rj);
    }
  }
  SheetStacks out;
  out.stack.resize(d.face_count());
  std::vector<int> label(ncells, -1);
  int next = 0;
  for (int f = 0; f < d.face_count(); ++f) {
    out.stack[f].resize(d.winding[f]);
    for (int j = 0; j < d.winding[f]; ++j) {
      int r = uf.find(offset[f] + j);
      if (label[r] == -1) label[r] = next++;
      out.stack[f][j] = label[r];
    }
  }
  out.class_count = next;
  return out;
}

// ---------------------------------------------------------------------------
// lift results

enum class lift_errc {
  negative_winding,
  height_out_of_range,
  casing_mismatch,
  same_component_casing_conflict,
  negative_cycle,
  upper_bound_violated,
};

struct LiftRefusal {
  lift_errc kind;
  int face = -1, arc = -1, crossing = -1, component = -1;
  std::vector<int> cycle;  // component ids witnessing a negative cycle
  std::string detail;
};

struct LiftResult {
  std::optional<Terrain> terrain;
  std::optional<LiftRefusal> refusal;
  long long ops = 0;  // elementary operations of the decision procedure
  bool ok() const { return terrain.has_value(); }
};

namespace detail {

inline int component_arc_base(const CurveDiagram& d, int comp) {
  int base = 0;
  for (int c = 0; c < comp; ++c)
    base += std::max<std::size_t>(1, d.components[c].passes.size());
  return (int)base;
}

// Walk a component applying the casing rules, writing the height of the arc
// that follows each pass as an offset from the start arc's height.  Returns
// whether the offsets close up around the component (the net height change
// of a feasible casing is always zero; a non-closing trace means the casing
// is infeasible, but the inconsistency is left to surface in the later
// constraint checks so refusals carry the constraint-level witness).
inline bool trace_component(const CurveDiagram& d, const Casing& casing, int comp,
                            int start_arc, std::vector<int>& height, long long& ops) {
  const Component& co = d.components[comp];
  const int m = (int)co.passes.size();
  const int base = component_arc_base(d, comp);
  height[start_arc] = 0;
  if (m == 0) return true;
  const int start_index = d.arcs[start_arc].index;
  int cur = 0;
  bool closed = true;
  for (int t = 1; t <= m; ++t) {
    ++ops;
    const int pi = (start_index + t) % m;
    const Pass& p = co.passes[pi];
    const CrossingInfo& ci = d.crossings[p.crossing];
    const bool we_are_plus = p.exit_slot() == ci.plus_out_slot;
    const bool over = casing.bit(p.crossing) == we_are_plus;
    if (over) cur += we_are_plus ? +1 : -1;
    if (pi == start_index) {
      closed = (cur == 0);
    } else {
      height[base + pi] = cur;
    }
  }
  return closed;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Theorem 1: single-component cased curve, linear time.

inline LiftResult lift_cased_single(const DiagramPtr& dp, const Casing& casing) {
  const CurveDiagram& d = *dp;
  if (d.component_count() != 1)
    throw std::invalid_argument("lift_cased_single needs a one-component diagram");
  if (casing.n != d.crossing_count())
    throw diagram_error(diagram_errc::bad_input, "LengthMismatch: casing width");
  LiftResult res;
  for (int f = 0; f < d.face_count(); ++f) {
    ++res.ops;
    if (d.winding[f] < 0) {
      res.refusal = LiftRefusal{lift_errc::negative_winding, f};
      return res;
    }
  }
  // start on an arc bordering the outer face (outer face on its left; such an
  // arc exists whenever all windings are non-negative)
  int start = -1;
  for (const Arc& a : d.arcs) {
    ++res.ops;
    if (a.left_face == d.outer_face) {
      start = a.id;
      break;
    }
  }
  std::vector<int> h(d.arc_count(), 0);
  const bool closed = detail::trace_component(d, casing, 0, start, h, res.ops);
  for (const Arc& a : d.arcs) {
    ++res.ops;
    if (h[a.id] < 0 || h[a.id] > d.winding[a.left_face]) {
      res.refusal = LiftRefusal{lift_errc::height_out_of_range, -1, a.id};
      return res;
    }
  }
  // condition (2): the casing induced by the heights must match the input;
  // a non-closing traversal always fails here or above.
  for (int c = 0; c < d.crossing_count(); ++c) {
    ++res.ops;
    auto bit = check_crossing_fast(d, h, c);
    if (!bit || *bit != casing.bit(c)) {
      res.refusal = LiftRefusal{lift_errc::casing_mismatch, -1, -1, c};
      return res;
    }
  }
  if (!closed) {
    // cannot happen once every crossing verifies; keep as a safety net
    res.refusal = LiftRefusal{lift_errc::casing_mismatch};
    res.refusal->detail = "traversal does not close";
    return res;
  }
  Terrain t;
  t.diagram = dp;
  t.heights = std::move(h);
  t.bases = {0};
  t.casing = casing;
  t.stacks = compute_stacks(d, t.heights);
  res.terrain = std::move(t);
  return res;
}

// ---------------------------------------------------------------------------
// Theorem 2: oriented multi-component cased curve, O(min(nk, n+k^3)).

inline LiftResult lift_cased_multi(const DiagramPtr& dp, const Casing& casing) {
  const CurveDiagram& d = *dp;
  if (casing.n != d.crossing_count())
    throw diagram_error(diagram_errc::bad_input, "LengthMismatch: casing width");
  LiftResult res;
  const int k = d.component_count();

  for (int f = 0; f < d.face_count(); ++f) {
    ++res.ops;
    if (d.winding[f] < 0) {
      res.refusal = LiftRefusal{lift_errc::negative_winding, f};
      return res;
    }
  }

  // (b) per-component offsets from a minimal-thickness start strand,
  // normalized so the minimum offset is zero
  std::vector<int> gamma(d.arc_count(), 0);
  std::vector<int> upper(k, std::numeric_limits<int>::max());  // B_i
  std::vector<int> upper_arc(k, -1);
  std::vector<char> closed(k, 1);
  for (int ci = 0; ci < k; ++ci) {
    const int base = detail::component_arc_base(d, ci);
    const int narcs = std::max<std::size_t>(1, d.components[ci].passes.size());
    int start = base;
    for (int a = base; a < base + narcs; ++a) {
      ++res.ops;
      if (d.winding[d.arcs[a].left_face] < d.winding[d.arcs[start].left_face]) start = a;
    }
    closed[ci] = detail::trace_component(d, casing, ci, start, gamma, res.ops);
    int lo = std::numeric_limits<int>::max();
    for (int a = base; a < base + narcs; ++a) lo = std::min(lo, gamma[a]);
    for (int a = base; a < base + narcs; ++a) {
      gamma[a] -= lo;
      int room = d.winding[d.arcs[a].left_face] - gamma[a];
      if (room < upper[ci]) {
        upper[ci] = room;
        upper_arc[ci] = a;
      }
      ++res.ops;
    }
  }

  // (c)/(d) casing constraints per crossing, via the two arcs flanking the
  // thickest quadrant (their heights are the strands' sheet levels there)
  struct Edge {
    int from, to;  // b[to] >= b[from] - len
    long long len;
    int crossing;
  };
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, std::size_t> edge_at;
  for (int c = 0; c < d.crossing_count(); ++c) {
    ++res.ops;
    auto q = crossing_quadrants(d, c);
    const CrossingInfo& cin = d.crossings[c];
    int dart1 = q.max_corner & 3, dart2 = (q.max_corner + 1) & 3;
    int arc1 = cin.slot_arc[dart1], arc2 = cin.slot_arc[dart2];
    int pass1 = detail::pass_of_slot(cin, dart1);
    int plus_pass = detail::pass_of_slot(cin, cin.plus_out_slot);
    // order (plus strand, minus strand)
    int arc_plus = (pass1 == plus_pass) ? arc1 : arc2;
    int arc_minus = (pass1 == plus_pass) ? arc2 : arc1;
    int comp_plus = d.arcs[arc_plus].component;
    int comp_minus = d.arcs[arc_minus].component;
    bool plus_over = casing.bit(c);
    int arc_over = plus_over ? arc_plus : arc_minus;
    int arc_under = plus_over ? arc_minus : arc_plus;
    int comp_over = plus_over ? comp_plus : comp_minus;
    int comp_under = plus_over ? comp_minus : comp_plus;
    if (comp_over == comp_under) {
      // constraint (3): decided by offsets alone
      if (gamma[arc_over] <= gamma[arc_under]) {
        res.refusal = LiftRefusal{lift_errc::same_component_casing_conflict, -1, -1, c,
                                  comp_over};
        return res;
      }
      continue;
    }
    // constraint (4): b_over + gamma_over >= b_under + gamma_under + 1
    long long delta = (long long)gamma[arc_over] - gamma[arc_under] - 1;
    auto key = std::make_pair(comp_under, comp_over);
    auto it = edge_at.find(key);
    if (it == edge_at.end()) {
      edge_at.emplace(key, edges.size());
      edges.push_back(Edge{comp_under, comp_over, delta, c});
    } else if (delta < edges[it->second].len) {
      edges[it->second] = Edge{comp_under, comp_over, delta, c};
    }
  }

  // Bellman-Ford with implicit zero-length source edges to every component:
  // dist starts at 0; a negative cycle is a set of type-(4) constraints that
  // cannot be met simultaneously.
  std::vector<long long> dist(k, 0);
  std::vector<int> pred(k, -1);
  int changed_at = -1;
  for (int round = 0; round < k; ++round) {
    bool changed = false;
    for (const Edge& e : edges) {
      ++res.ops;
      if (dist[e.from] + e.len < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.len;
        pred[e.to] = e.from;
        changed = true;
        changed_at = e.to;
      }
    }
    if (!changed) break;
    if (round == k - 1) {
      // walk predecessors to land on the cycle, then extract it
      int v = changed_at;
      for (int i = 0; i < k; ++i) v = pred[v];
      std::vector<int> cyc;
      int u = v;
      do {
        cyc.push_back(u);
        u = pred[u];
      } while (u != v);
      std::reverse(cyc.begin(), cyc.end());
      LiftRefusal ref{lift_errc::negative_cycle};
      ref.cycle = cyc;
      res.refusal = ref;
      return res;
    }
  }

  std::vector<int> bases(k);
  for (int i = 0; i < k; ++i) {
    bases[i] = (int)-dist[i];
    if (bases[i] > upper[i]) {
      LiftRefusal ref{lift_errc::upper_bound_violated};
      ref.component = i;
      ref.arc = upper_arc[i];
      res.refusal = ref;
      return res;
    }
  }
  for (int i = 0; i < k; ++i) {
    if (!closed[i]) {
      // a feasible casing always closes; the survivors of the constraint
      // checks with a non-closing trace are inconsistent within a component
      LiftRefusal ref{lift_errc::same_component_casing_conflict};
      ref.component = i;
      ref.detail = "height offsets do not close up around the component";
      res.refusal = ref;
      return res;
    }
  }

  std::vector<int> h(d.arc_count());
  for (const Arc& a : d.arcs) h[a.id] = bases[a.component] + gamma[a.id];

  Terrain t;
  t.diagram = dp;
  t.heights = std::move(h);
  t.bases = std::move(bases);
  t.casing = casing;
  t.stacks = compute_stacks(d, t.heights);
  res.terrain = std::move(t);
  return res;
}

// ---------------------------------------------------------------------------
// project_terrain: read the diagram and the casing induced by sheet levels.

class terrain_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::pair<DiagramPtr, Casing> project_terrain(const Terrain& t) {
  const CurveDiagram& d = *t.diagram;
  Casing c(d.crossing_count(), 0);
  for (int i = 0; i < d.crossing_count(); ++i) {
    auto bit = induced_casing_bit(d, t.heights, i);
    if (!bit) throw terrain_error("InvalidTerrain: strand sheets at equal level");
    c.set(i, *bit);
  }
  auto rep = verify_terrain(d, t.heights, c);
  if (!rep.ok()) throw terrain_error("InvalidTerrain: " + rep.detail);
  return {t.diagram, c};
}

// ---------------------------------------------------------------------------
// classify_surface: Euler characteristic of the sheet complex determined by
// the windings, and the (genus, boundary) classification when consistent.

struct SurfaceClass {
  long long euler = 0;
  int boundary = 0;
  long long genus = 0;
  bool orientable = true;
};

enum class classify_errc { ok, negative_winding, no_surface };

struct ClassifyResult {
  classify_errc err = classify_errc::ok;
  SurfaceClass cls;
  int face = -1;  // negative winding witness
  bool ok() const { return err == classify_errc::ok; }
};

inline ClassifyResult classify_surface(const CurveDiagram& d) {
  ClassifyResult r;
  for (int f = 0; f < d.face_count(); ++f)
    if (d.winding[f] < 0) {
      r.err = classify_errc::negative_winding;
      r.face = f;
      return r;
    }
  long long V = 0, E = 0, F = 0;
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto q = crossing_quadrants(d, c);
    V += d.winding[d.corner_face(c, q.min_corner)] + 2;
  }
  for (const Arc& a : d.arcs) {
    E += d.winding[a.left_face] + 1;
    if (a.loop) V += d.winding[a.left_face] + 1;  // artificial subdivision point
  }
  for (int f = 0; f < d.face_count(); ++f) F += d.winding[f];
  r.cls.euler = V - E + F;
  r.cls.boundary = d.component_count();
  long long g2 = 2 - r.cls.boundary - r.cls.euler;
  if (g2 < 0 || (g2 & 1)) {
    r.err = classify_errc::no_surface;
    return r;
  }
  r.cls.genus = g2 / 2;
  return r;
}

// Euler characteristic of the explicit cell complex of a terrain: cells are
// the per-face sheets, edges the sheet gluings across arcs plus the boundary
// strands, vertices the through-sheets and strand points over crossings and
// over the artificial loop subdivision points.
inline long long complex_euler_characteristic(const Terrain& t) {
  const CurveDiagram& d = *t.diagram;
  long long F = 0, E = 0, V = 0;
  for (int f = 0; f < d.face_count(); ++f) F += (long long)t.stacks.stack[f].size();
  for (const Arc& a : d.arcs) {
    E += (long long)t.stacks.stack[a.left_face].size() + 1;
    if (a.loop) V += (long long)t.stacks.stack[a.left_face].size() + 1;
  }
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto q = crossing_quadrants(d, c);
    V += (long long)t.stacks.stack[d.corner_face(c, q.min_corner)].size() + 2;
  }
  return V - E + F;
}

}  // namespace terralift
