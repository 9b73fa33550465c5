#pragma once

// Immersed surfaces as sheet complexes, the crossing multigraph of their
// boundary self-intersections, and lifting algorithms driven by it.
//
// Sheets are kept per face (|sheets(f)| = winding(f)); every directed arc
// carries an injection of the left-face sheets into the right-face sheets
// and names the one right-face sheet it bounds.  The crossing multigraph
// links two crossings when a curve traced inside one layer alongside the
// other layer's boundary strand connects them; its cycles admit exactly two
// alternating casings each.

#include <set>

#include "search.hpp"

namespace terralift {

class immersion_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ImmersedSurface {
  DiagramPtr diagram;
  std::vector<int> sheet_count;   // per face
  std::vector<int> sheet_offset;  // global sheet id = sheet_offset[f] + k
  struct Gluing {
    std::vector<int> to;  // left sheet index -> global right sheet id
    int bounded = -1;     // global right sheet id not in the image
  };
  std::vector<Gluing> gluings;       // per arc
  std::vector<std::string> sheet_tag;  // optional provenance per global sheet

  int total_sheets() const {
    return sheet_offset.empty() ? 0 : sheet_offset.back() + sheet_count.back();
  }
  int face_of_sheet(int s) const {
    int lo = 0, hi = (int)sheet_offset.size() - 1;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (sheet_offset[mid] <= s) lo = mid;
      else hi = mid - 1;
    }
    return lo;
  }
};

// ---------------------------------------------------------------------------
// validation

struct ImmersionReport {
  bool ok = true;
  std::vector<std::string> problems;
  void fail(std::string msg) {
    ok = false;
    problems.push_back(std::move(msg));
  }
};

namespace detail_imm {

// Move a sheet over the face at corner `from` across the shared dart to the
// face at corner `to` (adjacent corners around crossing c).  Returns -1 when
// the move is blocked (the sheet is the arc's bounded sheet, or missing).
inline int transport(const ImmersedSurface& s, int c, int from, int to, int sheet) {
  const CurveDiagram& d = *s.diagram;
  from &= 3;
  to &= 3;
  int dart = (to == ((from + 1) & 3)) ? (to & 3) : (from & 3);
  int arc = d.crossings[c].slot_arc[dart];
  const Arc& a = d.arcs[arc];
  const auto& g = s.gluings[arc];
  if (d.corner_face(c, from) == a.left_face) {
    int idx = sheet - s.sheet_offset[a.left_face];
    if (idx < 0 || idx >= (int)g.to.size()) return -1;
    return g.to[idx];
  }
  if (sheet == g.bounded) return -1;
  for (int i = 0; i < (int)g.to.size(); ++i)
    if (g.to[i] == sheet) return s.sheet_offset[a.left_face] + i;
  return -1;
}

}  // namespace detail_imm

inline ImmersionReport validate_immersion(const ImmersedSurface& s) {
  ImmersionReport rep;
  const CurveDiagram& d = *s.diagram;
  if ((int)s.sheet_count.size() != d.face_count() ||
      (int)s.gluings.size() != d.arc_count()) {
    rep.fail("sheet/gluing table sizes do not match the diagram");
    return rep;
  }
  for (int f = 0; f < d.face_count(); ++f) {
    if (d.winding[f] < 0) rep.fail("negative winding at face " + std::to_string(f));
    else if (s.sheet_count[f] != d.winding[f])
      rep.fail("face " + std::to_string(f) + " has " + std::to_string(s.sheet_count[f]) +
               " sheets, winding is " + std::to_string(d.winding[f]));
  }
  if (!rep.ok) return rep;
  if (s.sheet_count[d.outer_face] != 0) rep.fail("outer face has sheets");
  auto in_face = [&](int sheet, int f) {
    return sheet >= s.sheet_offset[f] && sheet < s.sheet_offset[f] + s.sheet_count[f];
  };
  for (const Arc& a : d.arcs) {
    const auto& g = s.gluings[a.id];
    if ((int)g.to.size() != s.sheet_count[a.left_face]) {
      rep.fail("arc " + std::to_string(a.id) + ": gluing arity mismatch");
      continue;
    }
    std::set<int> image;
    for (int v : g.to) {
      if (!in_face(v, a.right_face)) rep.fail("arc " + std::to_string(a.id) + ": image outside right face");
      if (!image.insert(v).second) rep.fail("arc " + std::to_string(a.id) + ": gluing not injective");
    }
    if (!in_face(g.bounded, a.right_face))
      rep.fail("arc " + std::to_string(a.id) + ": bounded sheet outside right face");
    else if (image.count(g.bounded))
      rep.fail("arc " + std::to_string(a.id) + ": bounded sheet in the gluing image");
  }
  if (!rep.ok) return rep;
  // crossing conditions: commuting square on thin-quadrant sheets, bounded
  // sheets transported through the crossing, distinct strand sheets on top
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto q = crossing_quadrants(d, c);
    const int m = q.min_corner;
    const int fmin = d.corner_face(c, m);
    for (int j = 0; j < s.sheet_count[fmin]; ++j) {
      int x = s.sheet_offset[fmin] + j;
      int a1 = detail_imm::transport(s, c, m, m + 1, x);
      int a2 = a1 < 0 ? -1 : detail_imm::transport(s, c, m + 1, m + 2, a1);
      int b1 = detail_imm::transport(s, c, m, m + 3, x);
      int b2 = b1 < 0 ? -1 : detail_imm::transport(s, c, m + 3, m + 2, b1);
      if (a2 < 0 || b2 < 0 || a2 != b2) {
        rep.fail("crossing " + std::to_string(c) + ": through-sheet routes disagree");
        break;
      }
    }
    const CrossingInfo& ci = d.crossings[c];
    auto arc_at = [&](int slot) { return ci.slot_arc[slot & 3]; };
    // strand p: ends at darts m and m+2; strand q: darts m+1 and m+3
    int bp_min = s.gluings[arc_at(m)].bounded;        // over corner m+3's face
    int bp_max = s.gluings[arc_at(m + 2)].bounded;    // over the max corner
    int bq_min = s.gluings[arc_at(m + 1)].bounded;    // over corner m+1's face
    int bq_max = s.gluings[arc_at(m + 3)].bounded;    // over the max corner
    int tp = detail_imm::transport(s, c, m + 3, m + 2, bp_min);
    int tq = detail_imm::transport(s, c, m + 1, m + 2, bq_min);
    if (tp != bp_max)
      rep.fail("crossing " + std::to_string(c) + ": strand sheet not carried through");
    if (tq != bq_max)
      rep.fail("crossing " + std::to_string(c) + ": strand sheet not carried through");
    if (bp_max == bq_max)
      rep.fail("crossing " + std::to_string(c) + ": strands bound the same sheet");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// boundary_of / immersion_from_terrain / canonical form

inline DiagramPtr boundary_of(const ImmersedSurface& s) { return s.diagram; }

inline ImmersedSurface immersion_from_terrain(const Terrain& t) {
  const CurveDiagram& d = *t.diagram;
  ImmersedSurface s;
  s.diagram = t.diagram;
  s.sheet_count.resize(d.face_count());
  s.sheet_offset.resize(d.face_count());
  int acc = 0;
  for (int f = 0; f < d.face_count(); ++f) {
    s.sheet_count[f] = d.winding[f];
    s.sheet_offset[f] = acc;
    acc += d.winding[f];
  }
  s.gluings.resize(d.arc_count());
  for (const Arc& a : d.arcs) {
    int wl = d.winding[a.left_face];
    int h = t.heights[a.id];
    auto& g = s.gluings[a.id];
    g.to.resize(wl);
    for (int j = 0; j < wl; ++j) g.to[j] = s.sheet_offset[a.right_face] + (j < h ? j : j + 1);
    g.bounded = s.sheet_offset[a.right_face] + h;
  }
  s.sheet_tag.assign(acc, "");
  return s;
}

// Deterministic relabeling: sheets are renumbered by first reach in a
// breadth-first sweep seeded by the bounded sheets in arc order, so two
// structurally equal complexes get identical tables regardless of the
// stacking order they were built from.
inline ImmersedSurface canonicalize(const ImmersedSurface& s,
                                    std::vector<int>* remap_out = nullptr) {
  const CurveDiagram& d = *s.diagram;
  const int total = s.total_sheets();
  std::vector<int> rank(total, -1);
  int next = 0;
  std::vector<int> queue;
  auto visit = [&](int x) {
    if (x >= 0 && x < total && rank[x] == -1) {
      rank[x] = next++;
      queue.push_back(x);
    }
  };
  for (const Arc& a : d.arcs) visit(s.gluings[a.id].bounded);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int x = queue[qi];
    int f = s.face_of_sheet(x);
    for (const Arc& a : d.arcs) {
      if (a.left_face == f) {
        int idx = x - s.sheet_offset[f];
        if (idx < (int)s.gluings[a.id].to.size()) visit(s.gluings[a.id].to[idx]);
      }
      if (a.right_face == f) {
        for (int i = 0; i < (int)s.gluings[a.id].to.size(); ++i)
          if (s.gluings[a.id].to[i] == x) visit(s.sheet_offset[a.left_face] + i);
      }
    }
  }
  for (int x = 0; x < total; ++x) visit(x);  // unreachable sheets, stable order

  // new index of a sheet within its face = rank order among that face's sheets
  ImmersedSurface out;
  out.diagram = s.diagram;
  out.sheet_count = s.sheet_count;
  out.sheet_offset = s.sheet_offset;
  std::vector<int> remap(total);
  for (int f = 0; f < d.face_count(); ++f) {
    std::vector<int> ids(s.sheet_count[f]);
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      return rank[s.sheet_offset[f] + a] < rank[s.sheet_offset[f] + b];
    });
    for (int pos = 0; pos < (int)ids.size(); ++pos)
      remap[s.sheet_offset[f] + ids[pos]] = s.sheet_offset[f] + pos;
  }
  out.gluings.resize(d.arc_count());
  for (const Arc& a : d.arcs) {
    const auto& g = s.gluings[a.id];
    auto& og = out.gluings[a.id];
    og.to.resize(g.to.size());
    for (int i = 0; i < (int)g.to.size(); ++i) {
      int from = s.sheet_offset[a.left_face] + i;
      og.to[remap[from] - s.sheet_offset[a.left_face]] = remap[g.to[i]];
    }
    og.bounded = remap[g.bounded];
  }
  out.sheet_tag.resize(total);
  if ((int)s.sheet_tag.size() == total)
    for (int x = 0; x < total; ++x) out.sheet_tag[remap[x]] = s.sheet_tag[x];
  if (remap_out) *remap_out = remap;
  return out;
}

inline bool same_immersion(const ImmersedSurface& a, const ImmersedSurface& b) {
  if (a.diagram != b.diagram &&
      !(a.diagram->source.components == b.diagram->source.components &&
        a.diagram->source.outer == b.diagram->source.outer))
    return false;
  auto ca = canonicalize(a), cb = canonicalize(b);
  if (ca.sheet_count != cb.sheet_count) return false;
  for (std::size_t i = 0; i < ca.gluings.size(); ++i)
    if (ca.gluings[i].to != cb.gluings[i].to || ca.gluings[i].bounded != cb.gluings[i].bounded)
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// crossing multigraph

struct CrossingGraphEdge {
  int end_a = -1, end_b = -1;  // end id = 2*crossing + tracked pass index
  std::vector<int> path_arcs;  // arcs walked by the trace
  std::vector<int> through;    // crossings passed without stopping
  int max_thickness = 0;       // max layer count over any traced point
};

struct CrossingCycle {
  std::vector<int> crossings;  // in cycle order
  std::vector<int> edge_ids;
  bool relevant = false;
  // Cycles of a liftable immersion always have even length; an odd cycle
  // admits no alternating casing and certifies that no lifting exists.
  bool alternating = true;
  // the two alternating casings, restricted to the member crossings; the
  // first one puts the lowest member crossing's +i strand on top
  std::array<std::vector<std::pair<int, bool>>, 2> phase_bits;
};

struct CrossingGraph {
  std::vector<CrossingGraphEdge> edges;
  std::vector<CrossingCycle> cycles;  // sorted by smallest member crossing
  int relevant_count = 0;
  int deep_crossings = 0;  // crossings within >= 3 layers
};

namespace detail_imm {

inline int point_thickness_of_arc(const CurveDiagram& d, int arc) {
  return d.winding[d.arcs[arc].right_face];
}

inline int crossing_thickness(const CurveDiagram& d, int c) {
  auto q = crossing_quadrants(d, c);
  return d.winding[d.corner_face(c, q.max_corner)];
}

struct TraceOutcome {
  int arrival_end = -1;
  std::vector<int> path_arcs;
  std::vector<int> through;
  int max_thickness = 0;
};

inline TraceOutcome trace_end(const ImmersedSurface& s, int end) {
  const CurveDiagram& d = *s.diagram;
  const int c0 = end / 2, k = end & 1;
  const CrossingInfo& ci = d.crossings[c0];
  const int t_in = ci.pass[k].enter_slot;
  TraceOutcome out;
  // tracked layer = strand k's bounded sheets; walk along the other strand,
  // leaving through the dart counterclockwise-next from strand k's entry
  int exit_dart = (t_in + 1) & 3;
  int arc = ci.slot_arc[exit_dart];
  bool fwd = d.arcs[arc].tail == Dart{c0, exit_dart};
  int cellR = s.gluings[ci.slot_arc[t_in]].bounded;            // over Q(t_in)
  int cellL = s.gluings[ci.slot_arc[ci.pass[k].exit_slot()]].bounded;  // over Q(t_in+1)
  const long long guard = 4LL * d.arc_count() * std::max(1, s.total_sheets()) + 16;
  for (long long step = 0; step < guard; ++step) {
    out.path_arcs.push_back(arc);
    out.max_thickness = std::max(out.max_thickness, point_thickness_of_arc(d, arc));
    const Arc& a = d.arcs[arc];
    if (a.loop) throw immersion_error("trace entered a crossing-free loop");
    Dart at = fwd ? a.head : a.tail;
    const int w = at.crossing, s_arr = at.slot;
    const CrossingInfo& cw = d.crossings[w];
    int kx = detail::pass_of_slot(cw, (s_arr + 1) & 3);  // the transversal strand
    int x_in = cw.pass[kx].enter_slot;
    if (x_in == ((s_arr + 3) & 3)) {
      // transversal strand's sheets face us: stop if they are the tracked ones
      int bl_bounded = s.gluings[cw.slot_arc[x_in]].bounded;
      int br_bounded = s.gluings[cw.slot_arc[cw.pass[kx].exit_slot()]].bounded;
      bool match_l = (bl_bounded == cellL), match_r = (br_bounded == cellR);
      if (match_l != match_r)
        throw immersion_error("inconsistent stop condition at crossing " + std::to_string(w));
      if (match_l) {
        out.arrival_end = 2 * w + kx;
        return out;
      }
    }
    // carry the tracked sheets through the crossing
    int nl = transport(s, w, s_arr + 3, s_arr + 2, cellL);
    int nr = transport(s, w, s_arr + 0, s_arr + 1, cellR);
    if (nl < 0 || nr < 0)
      throw immersion_error("tracked sheet lost at crossing " + std::to_string(w));
    cellL = nl;
    cellR = nr;
    out.through.push_back(w);
    out.max_thickness = std::max(out.max_thickness, crossing_thickness(d, w));
    int next_dart = (s_arr + 2) & 3;
    arc = cw.slot_arc[next_dart];
    fwd = d.arcs[arc].tail == Dart{w, next_dart};
  }
  throw immersion_error("crossing-graph trace did not terminate");
}

}  // namespace detail_imm

inline CrossingGraph crossing_graph(const ImmersedSurface& s) {
  const CurveDiagram& d = *s.diagram;
  auto rep = validate_immersion(s);
  if (!rep.ok) throw immersion_error("InvalidImmersion: " + rep.problems.front());
  const int n = d.crossing_count();
  CrossingGraph g;
  if (n == 0) return g;

  std::vector<detail_imm::TraceOutcome> traces(2 * n);
  for (int e = 0; e < 2 * n; ++e) traces[e] = detail_imm::trace_end(s, e);
  for (int e = 0; e < 2 * n; ++e) {
    int f = traces[e].arrival_end;
    if (f == e) throw immersion_error("self-loop in the crossing graph");
    if (traces[f].arrival_end != e)
      throw immersion_error("crossing-graph traces are not symmetric");
  }
  std::vector<int> edge_of_end(2 * n, -1);
  for (int e = 0; e < 2 * n; ++e) {
    int f = traces[e].arrival_end;
    if (e < f) {
      CrossingGraphEdge edge;
      edge.end_a = e;
      edge.end_b = f;
      edge.path_arcs = traces[e].path_arcs;
      edge.through = traces[e].through;
      edge.max_thickness = std::max(traces[e].max_thickness, traces[f].max_thickness);
      edge_of_end[e] = edge_of_end[f] = (int)g.edges.size();
      g.edges.push_back(std::move(edge));
    }
  }

  // cycles: alternate edge / sibling-end steps
  std::vector<bool> seen(2 * n, false);
  for (int e0 = 0; e0 < 2 * n; ++e0) {
    if (seen[e0]) continue;
    CrossingCycle cyc;
    // value = "tracked layer lies above" at each visited end; the two
    // alternating casings come from the two choices at the start end
    std::vector<std::pair<int, bool>> ends_with_value;  // (end, value for phase 0)
    int e = e0;
    bool val = false;
    while (!seen[e]) {
      seen[e] = true;
      cyc.crossings.push_back(e / 2);
      cyc.edge_ids.push_back(edge_of_end[e]);
      ends_with_value.push_back({e, val});
      int f = traces[e].arrival_end;  // edge keeps the value
      seen[f] = true;
      ends_with_value.push_back({f, val});
      e = (f ^ 1);  // sibling end at the same crossing flips it
      val = !val;
    }
    if (e != e0)
      throw immersion_error("crossing-graph cycle walk did not close");
    if (cyc.crossings.empty())
      throw immersion_error("empty crossing-graph cycle");
    cyc.alternating = cyc.crossings.size() % 2 == 0;
    // relevance: any vertex or traced point within three or more layers
    cyc.relevant = false;
    for (int c : cyc.crossings)
      if (detail_imm::crossing_thickness(d, c) >= 3) cyc.relevant = true;
    for (int eid : cyc.edge_ids)
      if (g.edges[eid].max_thickness >= 3) cyc.relevant = true;
    // the two casings (only even cycles admit an alternating assignment)
    if (cyc.alternating) {
      for (int phase = 0; phase < 2; ++phase) {
        std::map<int, bool> bits;
        for (auto [endid, v0] : ends_with_value) {
          bool v = (phase == 0) ? v0 : !v0;
          int c = endid / 2, k = endid & 1;
          const CrossingInfo& ci = d.crossings[c];
          int plus_pass = detail::pass_of_slot(ci, ci.plus_out_slot);
          bool bit = (k == plus_pass) ? v : !v;
          auto it = bits.find(c);
          if (it != bits.end() && it->second != bit)
            throw immersion_error("cycle casing propagation inconsistent");
          bits[c] = bit;
        }
        for (auto [c, b] : bits) cyc.phase_bits[phase].push_back({c, b});
      }
      int lowest = *std::min_element(cyc.crossings.begin(), cyc.crossings.end());
      auto bit_at = [&](int phase) {
        for (auto [c, b] : cyc.phase_bits[phase])
          if (c == lowest) return b;
        return false;
      };
      if (!bit_at(0) && bit_at(1)) std::swap(cyc.phase_bits[0], cyc.phase_bits[1]);
    }
    g.cycles.push_back(std::move(cyc));
  }
  std::sort(g.cycles.begin(), g.cycles.end(), [](const CrossingCycle& a, const CrossingCycle& b) {
    return *std::min_element(a.crossings.begin(), a.crossings.end()) <
           *std::min_element(b.crossings.begin(), b.crossings.end());
  });
  for (const auto& cyc : g.cycles)
    if (cyc.relevant) ++g.relevant_count;
  for (int c = 0; c < n; ++c)
    if (detail_imm::crossing_thickness(d, c) >= 3) ++g.deep_crossings;
  return g;
}

// ---------------------------------------------------------------------------
// enumerate_liftings / lift_immersion_fpt / parameter_report

struct Embedding {
  Casing casing;
  Terrain terrain;
};

struct EmbeddingSet {
  std::vector<Embedding> embeddings;
  long long tried = 0;
};

namespace detail_imm {

inline Casing combine_phases(const CurveDiagram& d, const CrossingGraph& g,
                             const std::vector<int>& phase) {
  Casing cas(d.crossing_count(), 0);
  for (std::size_t i = 0; i < g.cycles.size(); ++i)
    for (auto [c, b] : g.cycles[i].phase_bits[phase[i]]) cas.set(c, b);
  return cas;
}

}  // namespace detail_imm

inline EmbeddingSet enumerate_liftings(const ImmersedSurface& s) {
  const CurveDiagram& d = *s.diagram;
  CrossingGraph g = crossing_graph(s);
  EmbeddingSet out;
  for (const auto& cyc : g.cycles)
    if (!cyc.alternating) return out;  // odd cycle: no lifting exists
  if ((int)g.cycles.size() > 30)
    throw immersion_error("too many cycles to enumerate; use the decision procedures");
  const std::uint64_t total = std::uint64_t{1} << g.cycles.size();
  for (std::uint64_t combo = 0; combo < total; ++combo) {
    std::vector<int> phase(g.cycles.size());
    for (std::size_t i = 0; i < g.cycles.size(); ++i) phase[i] = (combo >> i) & 1;
    Casing cas = detail_imm::combine_phases(d, g, phase);
    ++out.tried;
    auto r = lift_cased_multi(s.diagram, cas);
    if (r.ok() && verify_terrain(d, r.terrain->heights, cas).ok())
      out.embeddings.push_back({cas, std::move(*r.terrain)});
  }
  std::sort(out.embeddings.begin(), out.embeddings.end(),
            [](const Embedding& a, const Embedding& b) { return a.casing.bits < b.casing.bits; });
  return out;
}

struct FptResult {
  std::optional<Terrain> terrain;
  Casing casing;
  long long tried = 0;
  int relevant_cycles = 0;
  bool ok() const { return terrain.has_value(); }
};

inline FptResult lift_immersion_fpt(const ImmersedSurface& s) {
  const CurveDiagram& d = *s.diagram;
  CrossingGraph g = crossing_graph(s);
  FptResult out;
  std::vector<int> relevant;
  for (std::size_t i = 0; i < g.cycles.size(); ++i)
    if (g.cycles[i].relevant) relevant.push_back((int)i);
  out.relevant_cycles = (int)relevant.size();
  for (const auto& cyc : g.cycles)
    if (!cyc.alternating) return out;  // odd cycle: no lifting exists
  if (out.relevant_cycles > 30)
    throw immersion_error("too many relevant cycles for the fpt search");
  std::vector<int> phase(g.cycles.size(), 0);  // irrelevant cycles: first casing
  const std::uint64_t total = std::uint64_t{1} << relevant.size();
  for (std::uint64_t combo = 0; combo < total; ++combo) {
    for (std::size_t i = 0; i < relevant.size(); ++i) phase[relevant[i]] = (combo >> i) & 1;
    Casing cas = detail_imm::combine_phases(d, g, phase);
    ++out.tried;
    auto r = lift_cased_multi(s.diagram, cas);
    if (r.ok()) {
      out.casing = cas;
      out.terrain = std::move(r.terrain);
      return out;
    }
  }
  return out;
}

struct ParameterReport {
  int relevant_cycles = 0;   // k
  int deep_crossings = 0;    // c: crossings within >= 3 layers
  // every relevant cycle contains a deep crossing or a two-layer crossing
  // arc-adjacent to a deep one
  bool charge_check = true;
};

inline ParameterReport parameter_report(const ImmersedSurface& s) {
  const CurveDiagram& d = *s.diagram;
  CrossingGraph g = crossing_graph(s);
  ParameterReport out;
  out.relevant_cycles = g.relevant_count;
  out.deep_crossings = g.deep_crossings;
  // arc adjacency between crossings
  std::vector<std::set<int>> adj(d.crossing_count());
  for (const Arc& a : d.arcs) {
    if (a.loop) continue;
    adj[a.tail.crossing].insert(a.head.crossing);
    adj[a.head.crossing].insert(a.tail.crossing);
  }
  auto deep = [&](int c) { return detail_imm::crossing_thickness(d, c) >= 3; };
  for (const auto& cyc : g.cycles) {
    if (!cyc.relevant) continue;
    bool charged = false;
    for (int c : cyc.crossings) {
      if (deep(c)) charged = true;
      if (detail_imm::crossing_thickness(d, c) == 2)
        for (int u : adj[c])
          if (deep(u)) charged = true;
    }
    if (!charged) out.charge_check = false;
  }
  return out;
}

// Complete pruned decision over relevant-cycle casings; irrelevant cycles
// keep their first casing.  Cross-validated against enumerate_liftings on
// small instances; scales to reduction-sized inputs where 2^k is not.
inline SearchReport decide_liftable(const ImmersedSurface& s) {
  const CurveDiagram& d = *s.diagram;
  CrossingGraph g = crossing_graph(s);
  SearchReport rep;
  if (d.has_negative_winding()) return rep;
  for (const auto& cyc : g.cycles)
    if (!cyc.alternating) return rep;  // odd cycle: no lifting exists
  auto sys = detail_bb::DiffSystem::build(d);
  std::vector<int> bits(d.crossing_count(), -1);
  std::vector<int> relevant;
  for (std::size_t i = 0; i < g.cycles.size(); ++i) {
    if (g.cycles[i].relevant) relevant.push_back((int)i);
    else
      for (auto [c, b] : g.cycles[i].phase_bits[0]) bits[c] = b ? 1 : 0;
  }
  auto rec = [&](auto&& self, std::size_t idx) -> bool {
    ++rep.tried;
    if (!detail_bb::feasible(sys, bits, &rep.ops)) return false;
    if (idx == relevant.size()) {
      Casing cas(d.crossing_count(), 0);
      for (int c = 0; c < d.crossing_count(); ++c) cas.set(c, bits[c] == 1);
      auto r = lift_cased_multi(s.diagram, cas);
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
    const auto& cyc = g.cycles[relevant[idx]];
    for (int phase = 0; phase < 2; ++phase) {
      for (auto [c, b] : cyc.phase_bits[phase]) bits[c] = b ? 1 : 0;
      if (self(self, idx + 1)) return true;
    }
    for (auto [c, b] : cyc.phase_bits[0]) bits[c] = -1;
    return false;
  };
  rec(rec, 0);
  return rep;
}

}  // namespace terralift
