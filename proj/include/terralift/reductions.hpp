#pragma once

// Executable hardness constructions: instance generators for the curve and
// immersion reductions, curve rewrite surgeries, and desk-scale exhaustive
// oracles used to validate them end to end.

#include <sstream>

#include "immersion.hpp"

namespace terralift {

class reduction_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// instance types

struct PlanarGraphInstance {
  struct Vertex {
    int id;
    double x, y;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;
};

struct DigraphInstance {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // u -> v, no self loops
};

struct NaeFormula {
  int variables = 0;
  std::vector<std::array<int, 3>> clauses;  // signed 1-based literals
};

// text formats ----------------------------------------------------------------

inline PlanarGraphInstance parse_planar_graph(const std::string& text) {
  PlanarGraphInstance g;
  std::istringstream in(text);
  std::string tok;
  std::map<int, int> index;
  while (in >> tok) {
    if (tok == "v") {
      PlanarGraphInstance::Vertex v{};
      in >> v.id >> v.x >> v.y;
      index[v.id] = (int)g.vertices.size();
      g.vertices.push_back(v);
    } else if (tok == "e") {
      int a, b;
      in >> a >> b;
      g.edges.push_back({a, b});
    } else {
      throw reduction_error("planar graph file: unknown token '" + tok + "'");
    }
  }
  for (auto& [a, b] : g.edges)
    if (!index.count(a) || !index.count(b))
      throw reduction_error("planar graph file: edge endpoint unknown");
  return g;
}

inline DigraphInstance parse_digraph(const std::string& text) {
  DigraphInstance g;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "n") in >> g.vertices;
    else if (tok == "e") {
      int a, b;
      in >> a >> b;
      g.edges.push_back({a, b});
    } else
      throw reduction_error("digraph file: unknown token '" + tok + "'");
  }
  for (auto& [a, b] : g.edges) {
    if (a == b) throw reduction_error("digraph has a self loop");
    if (a < 0 || b < 0 || a >= g.vertices || b >= g.vertices)
      throw reduction_error("digraph edge out of range");
  }
  return g;
}

inline NaeFormula parse_nae(const std::string& text) {
  NaeFormula f;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "p") in >> f.variables;
    else {
      std::array<int, 3> cl{};
      cl[0] = std::stoi(tok);
      in >> cl[1] >> cl[2];
      for (int x : cl)
        if (x == 0 || std::abs(x) > f.variables)
          throw reduction_error("nae literal out of range");
      f.clauses.push_back(cl);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// exhaustive oracles (desk scale)

inline bool oracle_3color(const PlanarGraphInstance& g, std::vector<int>* witness = nullptr) {
  const int n = (int)g.vertices.size();
  if (n > 20) throw reduction_error("SizeOutOfRange: 3-coloring oracle limited to 20 vertices");
  std::map<int, int> index;
  for (int i = 0; i < n; ++i) index[g.vertices[i].id] = i;
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : g.edges) {
    adj[index.at(a)].push_back(index.at(b));
    adj[index.at(b)].push_back(index.at(a));
  }
  std::vector<int> color(n, -1);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (int u : adj[v])
        if (color[u] == c) ok = false;
      if (!ok) continue;
      color[v] = c;
      if (self(self, v + 1)) return true;
      color[v] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return false;
  if (witness) *witness = color;
  return true;
}

struct AcyclicPartitionResult {
  bool ok = false;
  std::uint64_t side_mask = 0;  // bit v set = vertex v in part 1
};

inline AcyclicPartitionResult oracle_acyclic_partition(const DigraphInstance& g) {
  if (g.vertices > 20)
    throw reduction_error("SizeOutOfRange: partition oracle limited to 20 vertices");
  AcyclicPartitionResult res;
  std::vector<std::vector<int>> out(g.vertices);
  for (auto [a, b] : g.edges) out[a].push_back(b);
  auto side_acyclic = [&](std::uint64_t mask, bool side) {
    // Kahn-style check on the induced subgraph
    std::vector<int> indeg(g.vertices, 0);
    auto in_side = [&](int v) { return (((mask >> v) & 1) != 0) == side; };
    int count = 0;
    for (int v = 0; v < g.vertices; ++v)
      if (in_side(v)) ++count;
    for (auto [a, b] : g.edges)
      if (in_side(a) && in_side(b)) ++indeg[b];
    std::vector<int> stack;
    for (int v = 0; v < g.vertices; ++v)
      if (in_side(v) && indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++seen;
      for (int u : out[v])
        if (in_side(u) && --indeg[u] == 0) stack.push_back(u);
    }
    return seen == count;
  };
  const std::uint64_t total = std::uint64_t{1} << g.vertices;
  for (std::uint64_t mask = 0; mask < total; ++mask)
    if (side_acyclic(mask, false) && side_acyclic(mask, true)) {
      res.ok = true;
      res.side_mask = mask;
      return res;
    }
  return res;
}

inline bool oracle_nae(const NaeFormula& f, std::uint64_t* witness = nullptr) {
  if (f.variables > 20)
    throw reduction_error("SizeOutOfRange: nae oracle limited to 20 variables");
  const std::uint64_t total = std::uint64_t{1} << f.variables;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool ok = true;
    for (const auto& cl : f.clauses) {
      int truecnt = 0;
      for (int lit : cl) {
        bool v = (mask >> (std::abs(lit) - 1)) & 1;
        if (lit < 0) v = !v;
        truecnt += v;
      }
      if (truecnt == 0 || truecnt == 3) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (witness) *witness = mask;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// NAE-3SAT -> Acyclic Partition: 2-cycle per variable pair, 3-cycle per
// clause, 2-cycles linking each clause position to its term's literal vertex.

inline DigraphInstance gen_acyclic_partition(const NaeFormula& f) {
  DigraphInstance g;
  const int nv = f.variables;
  g.vertices = 2 * nv + 3 * (int)f.clauses.size();
  auto lit_vertex = [&](int lit) { return 2 * (std::abs(lit) - 1) + (lit < 0 ? 1 : 0); };
  for (int x = 0; x < nv; ++x) {
    g.edges.push_back({2 * x, 2 * x + 1});
    g.edges.push_back({2 * x + 1, 2 * x});
  }
  for (int c = 0; c < (int)f.clauses.size(); ++c) {
    int base = 2 * nv + 3 * c;
    for (int j = 0; j < 3; ++j) g.edges.push_back({base + j, base + (j + 1) % 3});
    for (int j = 0; j < 3; ++j) {
      int lv = lit_vertex(f.clauses[c][j]);
      g.edges.push_back({base + j, lv});
      g.edges.push_back({lv, base + j});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Planar 3-colorability -> oriented curve family C_G.

struct ColoringCurvesOptions {
  int circle_points = 24;  // sampling of the vertex disks
};

// Counterclockwise vertex-curves (disk around each vertex extended along
// half-ribbons of its edges; adjacent curves overlap in a two-crossing lens
// past the edge midpoint) plus three clockwise curves surrounding everything.
inline std::vector<PolylineCurve> gen_coloring_curves(const PlanarGraphInstance& g,
                                                      const ColoringCurvesOptions& opt = {}) {
  const int n = (int)g.vertices.size();
  if (n == 0) throw reduction_error("empty graph");
  std::map<int, int> index;
  for (int i = 0; i < n; ++i) index[g.vertices[i].id] = i;
  auto P = [&](int i) { return geo::P2{g.vertices[i].x, g.vertices[i].y}; };

  // plane drawing check: straight edges may only share endpoints
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
      auto [a1, b1] = g.edges[i];
      auto [a2, b2] = g.edges[j];
      if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) continue;
      geo::P2 p1 = P(index.at(a1)), q1 = P(index.at(b1));
      geo::P2 p2 = P(index.at(a2)), q2 = P(index.at(b2));
      double d1 = geo::orient(p1, q1, p2), d2 = geo::orient(p1, q1, q2);
      double d3 = geo::orient(p2, q2, p1), d4 = geo::orient(p2, q2, q1);
      if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)))
        throw reduction_error("DrawingNotPlane: edges cross");
    }
  for (auto [a, b] : g.edges) {
    int ia = index.at(a), ib = index.at(b);
    for (int v = 0; v < n; ++v) {
      if (v == ia || v == ib) continue;
      if (geo::seg_point_dist(P(ia), P(ib), P(v)) < 1e-9)
        throw reduction_error("DrawingNotPlane: vertex on an edge");
    }
  }

  // clearance: smallest feature controls the disk radius and ribbon widths
  double feature = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      feature = std::min(feature, geo::norm(geo::sub(P(i), P(j))));
  for (auto [a, b] : g.edges) {
    int ia = index.at(a), ib = index.at(b);
    for (int v = 0; v < n; ++v)
      if (v != ia && v != ib)
        feature = std::min(feature, 2.0 * geo::seg_point_dist(P(ia), P(ib), P(v)));
  }
  if (!(feature > 0) || feature > 1e200) feature = 1.0;
  const double r = 0.22 * feature;    // vertex disk radius
  const double ov = 0.3 * r;          // ribbon overlap past the edge midpoint
  if (r < 1e-6) throw reduction_error("RibbonClearanceFailure: drawing too tight");

  std::vector<PolylineCurve> curves;
  for (int v = 0; v < n; ++v) {
    // incident edges sorted by angle; ribbon from the lower-id endpoint is
    // wider so the two ribbons of an edge cross instead of overlapping
    struct Rib {
      double ang;
      double len;
      double width;
    };
    std::vector<Rib> ribs;
    for (auto [a, b] : g.edges) {
      int ia = index.at(a), ib = index.at(b);
      if (ia != v && ib != v) continue;
      int o = ia == v ? ib : ia;
      geo::P2 dvec = geo::sub(P(o), P(v));
      double len = geo::norm(dvec) / 2.0 + ov;
      double width = (v < o ? 0.38 : 0.26) * r;
      ribs.push_back({std::atan2(dvec[1], dvec[0]), len, width});
    }
    std::sort(ribs.begin(), ribs.end(), [](const Rib& a, const Rib& b) { return a.ang < b.ang; });

    PolylineCurve c;
    c.id = v;
    geo::P2 o = P(v);
    auto at = [&](double ang, double rad) {
      return geo::P2{o[0] + rad * std::cos(ang), o[1] + rad * std::sin(ang)};
    };
    // counterclockwise walk: circle arcs between ribbon attachments, each
    // ribbon walked out along one side, across the tip and back
    const int m = (int)ribs.size();
    auto arc_points = [&](double from, double to) {
      while (to <= from) to += 2 * M_PI;
      int steps = std::max(2, (int)((to - from) / (2 * M_PI) * opt.circle_points));
      for (int s = 1; s < steps; ++s)
        c.points.push_back(at(from + (to - from) * s / steps, r));
    };
    if (m == 0) {
      for (int s = 0; s < opt.circle_points; ++s)
        c.points.push_back(at(2 * M_PI * s / opt.circle_points, r));
    } else {
      for (int e = 0; e < m; ++e) {
        const Rib& rb = ribs[e];
        double half = std::asin(std::clamp(rb.width / r, 0.0, 0.9));
        // entry on the clockwise side of the ribbon axis, exit on the ccw side
        c.points.push_back(at(rb.ang - half, r));
        geo::P2 axis{std::cos(rb.ang), std::sin(rb.ang)};
        geo::P2 nrm{-axis[1], axis[0]};
        geo::P2 tip{o[0] + axis[0] * rb.len, o[1] + axis[1] * rb.len};
        c.points.push_back({tip[0] - nrm[0] * rb.width, tip[1] - nrm[1] * rb.width});
        c.points.push_back({tip[0] + nrm[0] * rb.width, tip[1] + nrm[1] * rb.width});
        c.points.push_back(at(rb.ang + half, r));
        double next = ribs[(e + 1) % m].ang - std::asin(std::clamp(ribs[(e + 1) % m].width / r, 0.0, 0.9));
        arc_points(rb.ang + half, next);
      }
    }
    curves.push_back(std::move(c));
  }

  // three clockwise enclosing octagons around the drawing
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& c : curves)
    for (auto p : c.points) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, p[1]);
      ymax = std::max(ymax, p[1]);
    }
  double cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
  double rad = 0.75 * std::max(xmax - xmin, ymax - ymin) + 2.0 * feature;
  for (int ring = 0; ring < 3; ++ring) {
    PolylineCurve c;
    c.id = n + ring;
    double rr = rad * (1.0 + 0.17 * ring);
    for (int s = 0; s < 12; ++s) {
      double ang = 0.13 - 2 * M_PI * s / 12;  // decreasing angle: clockwise
      c.points.push_back({cx + rr * std::cos(ang), cy + rr * std::sin(ang)});
    }
    curves.push_back(std::move(c));
  }

  // the construction must realize exactly two crossings per graph edge
  try {
    auto d = arrange(curves);
    if (d->crossing_count() != 2 * (int)g.edges.size())
      throw reduction_error("RibbonClearanceFailure: unexpected crossing count " +
                            std::to_string(d->crossing_count()));
  } catch (const ingest_error& e) {
    throw reduction_error(std::string("RibbonClearanceFailure: ") + e.what());
  }
  return curves;
}

// ---------------------------------------------------------------------------
// orientation gadget: a single curve with two self-intersections admitting
// non-negative windings in exactly one orientation class (a clockwise loop
// with two once-nested inner kinks; windings 0,1,2,2).

inline PolylineCurve gen_orientation_gadget(double x = 0, double y = 0, double scale = 1) {
  if (!(scale > 0)) throw reduction_error("gadget scale must be positive");
  PolylineCurve c;
  c.id = 0;
  const double raw[][2] = {
      {0, 10},  {7, 7},  {10, 3},  {3, -2},  {5, 2},   {10, -3}, {7, -7},
      {0, -10}, {-7, -7}, {-10, -3}, {-3, 2}, {-5, -2}, {-10, 3}, {-7, 7},
  };
  for (auto& p : raw) c.points.push_back({x + scale * p[0], y + scale * p[1]});
  return c;
}

// ---------------------------------------------------------------------------
// strip splicing shared by merge_to_single_curve and cut_curve

namespace detail_red {

using geo::P2;

struct StripEnd {
  int curve = -1, seg = -1;
  double t = 0.5;  // fractional position on the segment
};

// offset a polyline to both sides by w/2 (miter joints)
inline std::pair<std::vector<P2>, std::vector<P2>> offset_rails(const std::vector<P2>& center,
                                                                double w) {
  auto normal = [](P2 a, P2 b) {
    P2 d = geo::sub(b, a);
    double n = geo::norm(d);
    return P2{-d[1] / n, d[0] / n};
  };
  std::vector<P2> left, right;
  for (std::size_t i = 0; i < center.size(); ++i) {
    P2 nrm{};
    if (i == 0) nrm = normal(center[0], center[1]);
    else if (i + 1 == center.size()) nrm = normal(center[i - 1], center[i]);
    else {
      P2 n1 = normal(center[i - 1], center[i]);
      P2 n2 = normal(center[i], center[i + 1]);
      nrm = {n1[0] + n2[0], n1[1] + n2[1]};
      double nn = geo::norm(nrm);
      if (nn < 1e-9) nrm = n1;
      else nrm = {nrm[0] / nn, nrm[1] / nn};
    }
    left.push_back({center[i][0] + nrm[0] * w / 2, center[i][1] + nrm[1] * w / 2});
    right.push_back({center[i][0] - nrm[0] * w / 2, center[i][1] - nrm[1] * w / 2});
  }
  return {left, right};
}

inline P2 seg_point(const PolylineCurve& c, int seg, double t) {
  const P2& a = c.points[seg];
  const P2& b = c.points[(seg + 1) % c.points.size()];
  return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
}

// Splice curves A and B into one closed curve with a strip running along
// `center` (center.front() on A's segment, center.back() on B's segment).
// Orientation of both pieces is preserved.  Returns the merged polyline.
inline PolylineCurve splice_strip(const PolylineCurve& A, StripEnd ea, const PolylineCurve& B,
                                  StripEnd eb, const std::vector<P2>& center, double width) {
  // The caller guarantees the strip leaves both segments perpendicularly, so
  // the rail start/end points (offset by the first/last strip normals) lie
  // on the segments themselves.
  auto [railL, railR] = offset_rails(center, width);
  // identify upstream/downstream rail starts by projection on A's tangent
  P2 a0 = A.points[ea.seg];
  P2 a1 = A.points[(ea.seg + 1) % A.points.size()];
  P2 tanA = geo::sub(a1, a0);
  bool left_is_down_a = geo::dot(geo::sub(railL.front(), railR.front()), tanA) > 0;
  // downstream rail start = the one farther along A's direction
  const std::vector<P2>& railFromUp = left_is_down_a ? railR : railL;   // starts upstream
  const std::vector<P2>& railFromDown = left_is_down_a ? railL : railR; // starts downstream
  // at B: the traversal lands and continues downstream along B
  P2 b0 = B.points[eb.seg];
  P2 b1 = B.points[(eb.seg + 1) % B.points.size()];
  P2 tanB = geo::sub(b1, b0);
  bool up_rail_lands_down_b = geo::dot(geo::sub(railFromUp.back(), railFromDown.back()), tanB) > 0;
  if (!up_rail_lands_down_b)
    throw reduction_error("CorridorBlocked: strip would reverse the target orientation");

  PolylineCurve out;
  out.id = A.id;
  const int na = (int)A.points.size(), nb = (int)B.points.size();
  // A from just after its segment start around to the segment, then foot
  for (int i = 0; i <= ea.seg; ++i) out.points.push_back(A.points[i]);
  out.points.push_back(railFromUp.front());
  for (std::size_t i = 1; i < railFromUp.size(); ++i) out.points.push_back(railFromUp[i]);
  // B: continue downstream from the landing, all the way around
  for (int i = 1; i <= nb; ++i) out.points.push_back(B.points[(eb.seg + i) % nb]);
  // back along the other rail
  for (std::size_t i = railFromDown.size(); i-- > 1;) out.points.push_back(railFromDown[i]);
  out.points.push_back(railFromDown.front());
  for (int i = ea.seg + 1; i < na; ++i) out.points.push_back(A.points[i]);
  return out;
}

// shrink a rail slightly at both ends so attachment contacts with the host
// segments do not count as degenerate in the clearance test
inline std::vector<P2> trim_rail(std::vector<P2> rail, double amount) {
  auto pull = [&](P2& a, const P2& b) {
    P2 d = geo::sub(b, a);
    double n = geo::norm(d);
    double f = std::min(0.4, amount / std::max(n, 1e-12));
    a = {a[0] + d[0] * f, a[1] + d[1] * f};
  };
  if (rail.size() >= 2) {
    pull(rail.front(), rail[1]);
    pull(rail.back(), rail[rail.size() - 2]);
  }
  return rail;
}

// clearance of a candidate strip: every rail segment must either clearly
// miss or properly cross every existing segment, staying away from vertices
// and existing crossing points
inline bool strip_clear(const std::vector<std::vector<P2>>& rails,
                        const std::vector<PolylineCurve>& curves,
                        const std::vector<P2>& keepout, double margin) {
  auto seg_seg_bad = [&](P2 a, P2 b, P2 c, P2 e) {
    double d1 = geo::orient(a, b, c), d2 = geo::orient(a, b, e);
    double d3 = geo::orient(c, e, a), d4 = geo::orient(c, e, b);
    double m = geo::norm(geo::sub(b, a)) * geo::norm(geo::sub(e, c));
    double thr = 1e-7 * std::max(m, 1.0);
    bool sep = (d1 > thr && d2 > thr) || (d1 < -thr && d2 < -thr) || (d3 > thr && d4 > thr) ||
               (d3 < -thr && d4 < -thr);
    if (sep) return false;
    if (std::abs(d1) <= thr || std::abs(d2) <= thr || std::abs(d3) <= thr || std::abs(d4) <= thr)
      return true;  // ambiguous contact
    return false;   // proper crossing: allowed
  };
  for (const auto& rail : rails)
    for (std::size_t i = 0; i + 1 < rail.size(); ++i) {
      for (const auto& c : curves)
        for (std::size_t s = 0; s < c.points.size(); ++s) {
          P2 a = c.points[s], b = c.points[(s + 1) % c.points.size()];
          if (seg_seg_bad(rail[i], rail[i + 1], a, b)) return false;
        }
      for (const auto& c : curves)
        for (const auto& v : c.points)
          if (geo::seg_point_dist(rail[i], rail[i + 1], v) < margin) return false;
      for (const auto& v : keepout)
        if (geo::seg_point_dist(rail[i], rail[i + 1], v) < margin) return false;
    }
  // rails must not touch each other
  for (std::size_t i = 0; i + 1 < rails[0].size(); ++i)
    for (std::size_t j = 0; j + 1 < rails[1].size(); ++j)
      if (seg_seg_bad(rails[0][i], rails[0][i + 1], rails[1][j], rails[1][j + 1])) return false;
  return true;
}

inline std::vector<P2> crossing_points(const std::vector<PolylineCurve>& curves) {
  std::vector<P2> pts;
  for (std::size_t ci = 0; ci < curves.size(); ++ci)
    for (std::size_t cj = ci; cj < curves.size(); ++cj)
      for (std::size_t si = 0; si < curves[ci].points.size(); ++si)
        for (std::size_t sj = (ci == cj ? si + 2 : 0); sj < curves[cj].points.size(); ++sj) {
          if (ci == cj && si == 0 && sj + 1 == curves[cj].points.size()) continue;
          P2 a = curves[ci].points[si],
             b = curves[ci].points[(si + 1) % curves[ci].points.size()];
          P2 c = curves[cj].points[sj],
             e = curves[cj].points[(sj + 1) % curves[cj].points.size()];
          double d1 = geo::orient(a, b, c), d2 = geo::orient(a, b, e);
          double d3 = geo::orient(c, e, a), d4 = geo::orient(c, e, b);
          if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) {
            P2 ab = geo::sub(b, a), ce = geo::sub(e, c), ac = geo::sub(c, a);
            double t = geo::cross(ac, ce) / geo::cross(ab, ce);
            pts.push_back({a[0] + t * ab[0], a[1] + t * ab[1]});
          }
        }
  return pts;
}

}  // namespace detail_red

// ---------------------------------------------------------------------------
// merge_to_single_curve: attach every component to the largest one through
// strips that leave perpendicular to a boundary segment, run radially out
// past everything, around, and back in from the outside.  Liftability is
// preserved (cut/uncross lemmas); validated against the oracles in tests.

inline PolylineCurve merge_to_single_curve(std::vector<PolylineCurve> curves) {
  using detail_red::P2;
  if (curves.empty()) throw reduction_error("nothing to merge");
  // the main curve: largest bounding box (the outer enclosing curve in C_G)
  auto bbox_size = [](const PolylineCurve& c) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto p : c.points) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, p[1]);
      ymax = std::max(ymax, p[1]);
    }
    return std::max(xmax - xmin, ymax - ymin);
  };
  std::size_t main_idx = 0;
  for (std::size_t i = 1; i < curves.size(); ++i)
    if (bbox_size(curves[i]) > bbox_size(curves[main_idx])) main_idx = i;
  std::swap(curves[0], curves[main_idx]);

  int pass = 0;
  while (curves.size() > 1) {
    // global geometry for the escape circle
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& c : curves)
      for (auto p : c.points) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
      }
    P2 O{(xmin + xmax) / 2, (ymin + ymax) / 2};
    double R = 0.75 * std::hypot(xmax - xmin, ymax - ymin) + 1.0 + 0.06 * (xmax - xmin) * pass;
    double margin = 0.004 * (xmax - xmin + ymax - ymin);
    double width = 2.5 * margin;
    auto keepout = detail_red::crossing_points(curves);

    const PolylineCurve& src = curves[1];
    bool done = false;
    // candidate exits: each source segment, leaving along its outward normal
    for (std::size_t sseg = 0; sseg < src.points.size() && !done; ++sseg) {
      P2 a = src.points[sseg], b = src.points[(sseg + 1) % src.points.size()];
      if (geo::norm(geo::sub(b, a)) < 6 * width) continue;
      P2 mid{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
      P2 t = geo::sub(b, a);
      double tn = geo::norm(t);
      P2 nrm{t[1] / tn, -t[0] / tn};  // right side of travel: try both
      for (int side = 0; side < 2 && !done; ++side, nrm = {-nrm[0], -nrm[1]}) {
        // main attach candidates
        const PolylineCurve& dst = curves[0];
        for (std::size_t dseg = 0; dseg < dst.points.size() && !done; ++dseg) {
          P2 c = dst.points[dseg], e = dst.points[(dseg + 1) % dst.points.size()];
          if (geo::norm(geo::sub(e, c)) < 6 * width) continue;
          P2 dmid{(c[0] + e[0]) / 2, (c[1] + e[1]) / 2};
          P2 dt = geo::sub(e, c);
          double dtn = geo::norm(dt);
          P2 dn{dt[1] / dtn, -dt[0] / dtn};
          for (int dside = 0; dside < 2 && !done; ++dside, dn = {-dn[0], -dn[1]}) {
            // centerline: out along nrm to the circle, around, in along dn
            auto to_circle = [&](P2 p, P2 dir) {
              // solve |p + s dir - O| = R
              P2 po = geo::sub(p, O);
              double bq = geo::dot(po, dir), cq = geo::dot(po, po) - R * R;
              double disc = bq * bq - cq;
              if (disc < 0) return -1.0;
              return -bq + std::sqrt(disc);
            };
            double s1 = to_circle(mid, nrm), s2 = to_circle(dmid, dn);
            if (s1 <= 0 || s2 <= 0) continue;
            P2 A1{mid[0] + nrm[0] * s1, mid[1] + nrm[1] * s1};
            P2 B1{dmid[0] + dn[0] * s2, dmid[1] + dn[1] * s2};
            std::vector<P2> center{mid, A1};
            double angA = std::atan2(A1[1] - O[1], A1[0] - O[0]);
            double angB = std::atan2(B1[1] - O[1], B1[0] - O[0]);
            while (angB <= angA) angB += 2 * M_PI;
            int steps = std::max(3, (int)((angB - angA) / 0.3));
            for (int st = 1; st < steps; ++st) {
              double ang = angA + (angB - angA) * st / steps;
              center.push_back({O[0] + R * std::cos(ang), O[1] + R * std::sin(ang)});
            }
            center.push_back(B1);
            center.push_back(dmid);
            auto [railL, railR] = detail_red::offset_rails(center, width);
            if (!detail_red::strip_clear({detail_red::trim_rail(railL, 2 * margin),
                                          detail_red::trim_rail(railR, 2 * margin)},
                                         curves, keepout, margin))
              continue;
            PolylineCurve merged;
            try {
              merged = detail_red::splice_strip(curves[0], {0, (int)dseg, 0.5}, curves[1],
                                                {1, (int)sseg, 0.5}, [&] {
                                                  std::vector<P2> rev(center.rbegin(), center.rend());
                                                  return rev;
                                                }(), width);
            } catch (const reduction_error&) {
              continue;
            }
            curves[0] = std::move(merged);
            curves.erase(curves.begin() + 1);
            done = true;
          }
        }
      }
    }
    if (!done) throw reduction_error("CorridorBlocked: no clear strip found");
    ++pass;
  }
  curves[0].id = 0;
  return curves[0];
}

// ---------------------------------------------------------------------------
// cut_curve: break the curve at two points on the boundary of a winding-one
// face and join the breaks by a pair of parallel curves inside it.

struct CutResult {
  DiagramPtr diagram;
  std::vector<PolylineCurve> curves;  // the rewritten polylines
};

inline std::vector<PolylineCurve> diagram_polylines(const CurveDiagram& d) {
  if (d.geometry.empty())
    throw reduction_error("operation needs a diagram with geometry (built by arrange)");
  std::vector<PolylineCurve> out;
  for (const Component& comp : d.components) {
    PolylineCurve c;
    c.id = comp.id;
    const int base = detail::component_arc_base(d, comp.id);
    const int m = std::max<std::size_t>(1, comp.passes.size());
    for (int j = 0; j < m; ++j) {
      const auto& ap = d.geometry.arc_points[base + j];
      for (std::size_t i = 0; i + 1 < ap.size(); ++i) c.points.push_back(ap[i]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline CutResult cut_curve(const CurveDiagram& d, int face, int arc1, int arc2) {
  using detail_red::P2;
  if (face < 0 || face >= d.face_count() || d.winding[face] != 1)
    throw reduction_error("RegionNotThicknessOne");
  auto touches = [&](int arc) {
    return d.arcs[arc].left_face == face || d.arcs[arc].right_face == face;
  };
  if (!touches(arc1) || !touches(arc2))
    throw reduction_error("break arcs must border the cut face");
  if (d.geometry.empty()) throw reduction_error("cut_curve needs geometry");

  auto curves = diagram_polylines(d);
  auto keepout = detail_red::crossing_points(curves);
  // candidate break points on the two arcs' polylines, joined by a straight
  // corridor that crosses nothing (it stays inside the face)
  const auto& ap1 = d.geometry.arc_points[arc1];
  const auto& ap2 = d.geometry.arc_points[arc2];
  double scale = 0;
  for (const auto& c : curves)
    for (auto p : c.points) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  double margin = 0.002 * scale, width = 2.5 * margin;

  auto locate = [&](P2 p, int comp_hint) -> detail_red::StripEnd {
    // find the (curve, segment) containing p
    for (std::size_t ci = 0; ci < curves.size(); ++ci)
      for (std::size_t s = 0; s < curves[ci].points.size(); ++s) {
        P2 a = curves[ci].points[s], b = curves[ci].points[(s + 1) % curves[ci].points.size()];
        if (geo::seg_point_dist(a, b, p) < 1e-9 * std::max(1.0, scale)) {
          double t = geo::dot(geo::sub(p, a), geo::sub(b, a)) /
                     std::max(1e-300, geo::dot(geo::sub(b, a), geo::sub(b, a)));
          if (t > 0.01 && t < 0.99) return {(int)ci, (int)s, t};
        }
      }
    (void)comp_hint;
    throw reduction_error("break point not on a segment interior");
  };

  for (std::size_t i1 = 0; i1 + 1 < ap1.size(); ++i1)
    for (std::size_t i2 = (arc1 == arc2 ? i1 + 1 : 0); i2 + 1 < ap2.size(); ++i2)
      for (double f1 : {0.5, 0.3, 0.7})
        for (double f2 : {0.5, 0.3, 0.7}) {
          P2 p{ap1[i1][0] + f1 * (ap1[i1 + 1][0] - ap1[i1][0]),
               ap1[i1][1] + f1 * (ap1[i1 + 1][1] - ap1[i1][1])};
          P2 q{ap2[i2][0] + f2 * (ap2[i2 + 1][0] - ap2[i2][0]),
               ap2[i2][1] + f2 * (ap2[i2 + 1][1] - ap2[i2][1])};
          if (geo::norm(geo::sub(p, q)) < 8 * width) continue;
          std::vector<P2> center{p, q};
          auto [railL, railR] = detail_red::offset_rails(center, width);
          if (!detail_red::strip_clear({detail_red::trim_rail(railL, 2 * margin),
                                        detail_red::trim_rail(railR, 2 * margin)},
                                       curves, keepout, margin))
            continue;
          // the corridor must cross nothing (it has to stay inside the face)
          bool crosses = false;
          for (const auto& rail : {railL, railR})
            for (const auto& c : curves)
              for (std::size_t s = 0; s < c.points.size() && !crosses; ++s) {
                P2 a = c.points[s], b = c.points[(s + 1) % c.points.size()];
                double d1 = geo::orient(rail[0], rail[1], a), d2 = geo::orient(rail[0], rail[1], b);
                double d3 = geo::orient(a, b, rail[0]), d4 = geo::orient(a, b, rail[1]);
                if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) crosses = true;
              }
          if (crosses) continue;
          // perpendicular approach at both breaks keeps the rail feet on the
          // broken segments
          auto ea = locate(p, -1);
          auto eb = locate(q, -1);
          P2 dirpq = geo::sub(q, p);
          P2 sa = geo::sub(curves[ea.curve].points[(ea.seg + 1) % curves[ea.curve].points.size()],
                           curves[ea.curve].points[ea.seg]);
          if (std::abs(geo::dot(sa, dirpq)) > 0.1 * geo::norm(sa) * geo::norm(dirpq)) continue;
          P2 sb = geo::sub(curves[eb.curve].points[(eb.seg + 1) % curves[eb.curve].points.size()],
                           curves[eb.curve].points[eb.seg]);
          if (std::abs(geo::dot(sb, dirpq)) > 0.1 * geo::norm(sb) * geo::norm(dirpq)) continue;

          std::vector<PolylineCurve> next;
          if (ea.curve == eb.curve) {
            // Same component: the cut splits it in two.  Each piece keeps the
            // traversal orientation and its closing edge is one wall of the
            // removed strip (the cut face lies on the same side of both break
            // strands, so their directions are anti-aligned).
            const PolylineCurve& C = curves[ea.curve];
            const int nsegs = (int)C.points.size();
            detail_red::StripEnd e1 = ea, e2 = eb;
            if (std::make_pair(e1.seg, e1.t) > std::make_pair(e2.seg, e2.t)) std::swap(e1, e2);
            P2 p1 = detail_red::seg_point(C, e1.seg, e1.t);
            P2 p2 = detail_red::seg_point(C, e2.seg, e2.t);
            auto unit = [&](int seg) {
              P2 v = geo::sub(C.points[(seg + 1) % nsegs], C.points[seg]);
              double n = geo::norm(v);
              return P2{v[0] / n, v[1] / n};
            };
            P2 t1 = unit(e1.seg), t2 = unit(e2.seg);
            if (geo::dot(t1, t2) > -0.8) continue;  // strip would be twisted
            const double h = width / 2;
            P2 f1a{p1[0] - h * t1[0], p1[1] - h * t1[1]};
            P2 f1b{p1[0] + h * t1[0], p1[1] + h * t1[1]};
            P2 f2a{p2[0] - h * t2[0], p2[1] - h * t2[1]};
            P2 f2b{p2[0] + h * t2[0], p2[1] + h * t2[1]};
            PolylineCurve piece1, piece2;
            piece1.points.push_back(f1b);
            for (int s = e1.seg + 1; s <= e2.seg; ++s) piece1.points.push_back(C.points[s]);
            piece1.points.push_back(f2a);  // closing edge f2a -> f1b is a wall
            piece2.points.push_back(f2b);
            for (int s = e2.seg + 1; s <= e1.seg + nsegs; ++s)
              piece2.points.push_back(C.points[s % nsegs]);
            piece2.points.push_back(f1a);  // closing edge f1a -> f2b is a wall
            next = curves;
            next[ea.curve] = piece1;
            next.push_back(piece2);
          } else {
            // different components: the cut joins them into one
            PolylineCurve merged = detail_red::splice_strip(curves[ea.curve], ea, curves[eb.curve],
                                                            eb, center, width);
            next = curves;
            next[std::min(ea.curve, eb.curve)] = merged;
            next.erase(next.begin() + std::max(ea.curve, eb.curve));
          }
          for (int i = 0; i < (int)next.size(); ++i) next[i].id = i;
          try {
            CutResult res;
            res.curves = next;
            res.diagram = arrange(next);
            return res;
          } catch (const ingest_error&) {
            continue;
          }
        }
  throw reduction_error("CorridorBlocked: no clear cut corridor found");
}

// ---------------------------------------------------------------------------
// uncross: remove the two crossings bounding a two-sided face by deforming
// one of its bounding strands across the other.

inline CutResult uncross(const CurveDiagram& d, int face) {
  using detail_red::P2;
  if (face < 0 || face >= d.face_count())
    throw reduction_error("PreconditionViolated: no such face");
  if (d.faces[face].walks.size() != 1 || d.faces[face].walks[0].size() != 2)
    throw reduction_error("PreconditionViolated: region is not bounded by two arcs");
  ArcSide s1 = d.faces[face].walks[0][0], s2 = d.faces[face].walks[0][1];
  const Arc& a1 = d.arcs[s1.arc];
  const Arc& a2 = d.arcs[s2.arc];
  if (a1.loop || a2.loop) throw reduction_error("PreconditionViolated: loop arc");
  // neighbor thickness must drop on at least one side
  int w = d.winding[face];
  int n1 = d.winding[s1.forward ? a1.right_face : a1.left_face];
  int n2 = d.winding[s2.forward ? a2.right_face : a2.left_face];
  if (n1 >= w && n2 >= w)
    throw reduction_error("PreconditionViolated: no thinner neighboring region");
  if (d.geometry.empty()) throw reduction_error("uncross needs geometry");

  // deform arc a2's strand across a1: replace a2's polyline by an offset of
  // a1's polyline on the far side, joined to a2's endpoints
  const auto& poly1 = d.geometry.arc_points[a1.id];
  const auto& poly2 = d.geometry.arc_points[a2.id];
  auto curves = diagram_polylines(d);

  double scale = 0;
  for (const auto& c : curves)
    for (auto p : c.points) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});

  for (double frac : {0.02, 0.01, 0.04, 0.005}) {
    double delta = frac * scale;
    // offset poly1 to the side away from the face; the face lies on side
    // (s1.forward ? left : right) of a1, so push toward the other side
    std::vector<P2> detour;
    auto [offL, offR] = detail_red::offset_rails(poly1, 2 * delta);
    const std::vector<P2>& off = s1.forward ? offR : offL;
    detour.assign(off.begin(), off.end());
    // orient the detour from a2's start point to a2's end point
    if (geo::norm(geo::sub(detour.front(), poly2.front())) >
        geo::norm(geo::sub(detour.back(), poly2.front())))
      std::reverse(detour.begin(), detour.end());
    // replace a2's interior: new polyline from poly2.front() via detour
    std::vector<P2> newarc{poly2.front()};
    for (const auto& p : detour) newarc.push_back(p);
    newarc.push_back(poly2.back());

    // stitch into the component polyline: rebuild the component of a2 with
    // this arc's points swapped
    std::vector<PolylineCurve> next;
    for (const Component& comp : d.components) {
      PolylineCurve c;
      c.id = comp.id;
      const int base = detail::component_arc_base(d, comp.id);
      const int m = std::max<std::size_t>(1, comp.passes.size());
      for (int j = 0; j < m; ++j) {
        const auto& ap = (base + j == a2.id) ? newarc : d.geometry.arc_points[base + j];
        for (std::size_t i = 0; i + 1 < ap.size(); ++i) c.points.push_back(ap[i]);
      }
      next.push_back(std::move(c));
    }
    try {
      CutResult res;
      res.curves = next;
      res.diagram = arrange(next);
      if (res.diagram->crossing_count() == d.crossing_count() - 2) return res;
    } catch (const ingest_error&) {
    }
  }
  throw reduction_error("PreconditionViolated: could not pull the strands apart");
}


// ---------------------------------------------------------------------------
// Acyclic Partition -> liftability of an immersed disk.
//
// A single central rectangle, one slightly larger nested rectangle per
// digraph vertex, a hairpin bridge from the central
// rectangle out past everything and back onto each vertex rectangle, and,
// per edge v->w, a tab of v's rectangle attached over the whole bridge of w.
// All coordinates are integers and all segments axis-aligned, so sheets can
// be reconstructed exactly on the coordinate grid.

struct LiftabilityInstance {
  ImmersedSurface surface;
  std::vector<PolylineCurve> curve;        // the single boundary polyline
  std::vector<std::string> patch_name;     // per patch id
  int core_face = -1;                      // the face under every rectangle
};

namespace detail_lift {

struct IRect {
  long long x1, y1, x2, y2;
  bool contains(double x, double y) const { return x > x1 && x < x2 && y > y1 && y < y2; }
};

struct Patch {
  std::string name;
  std::vector<IRect> rects;
  bool covers(double x, double y) const {
    for (const auto& r : rects)
      if (r.contains(x, y)) return true;
    return false;
  }
};

struct Gap {
  long long y, x1, x2;
  int below_patch, above_patch;
};

}  // namespace detail_lift

inline LiftabilityInstance gen_liftability_instance(const DigraphInstance& g) {
  using detail_lift::Gap;
  using detail_lift::IRect;
  using detail_lift::Patch;
  const int k = g.vertices;
  if (k > 8) throw reduction_error("SizeOutOfRange: at most 8 vertices");
  for (auto [a, b] : g.edges)
    if (a == b) throw reduction_error("digraph has a self loop");

  const long long W = 200 + 120LL * k, H = 300;
  auto m_of = [&](int v) { return 20 + 25LL * v; };
  auto slot = [&](int v) { return 80 + 120LL * v; };
  const long long MTOP = k ? m_of(k - 1) : 0;
  auto btop = [&](int v) { return H + MTOP + 40 + 6LL * v; };

  // patches: 0 = central, 1..k = vertex rects, then bridges, then tabs
  std::vector<Patch> patches;
  std::vector<std::string> names;
  patches.push_back({"central", {{0, 0, W, H}}});
  for (int v = 0; v < k; ++v) {
    long long m = m_of(v);
    patches.push_back({"rect:" + std::to_string(v), {{-m, -m, W + m, H + m}}});
  }
  const int bridge_patch0 = (int)patches.size();
  for (int v = 0; v < k; ++v) {
    long long a = slot(v), bt = btop(v), m = m_of(v);
    Patch p{"bridge:" + std::to_string(v), {}};
    p.rects.push_back({a, H, a + 12, bt});              // up leg (into the turn)
    p.rects.push_back({a, bt - 12, a + 34, bt});        // turn block
    p.rects.push_back({a + 22, H + m, a + 34, bt});     // down leg
    patches.push_back(std::move(p));
  }
  // tab ranks: in-neighbours of w sorted ascending
  std::map<std::pair<int, int>, int> tab_rank;
  std::map<std::pair<int, int>, int> tab_patch;
  for (int w = 0; w < k; ++w) {
    std::vector<int> in;
    for (auto [a, b] : g.edges)
      if (b == w) in.push_back(a);
    std::sort(in.begin(), in.end());
    for (int r = 0; r < (int)in.size(); ++r) tab_rank[{in[r], w}] = r;
  }
  struct TabGeom {
    int v, w, rank;
    long long x1, x2, top;
  };
  std::vector<TabGeom> tabs;
  for (auto [v, w] : g.edges) {
    int r = tab_rank.at({v, w});
    TabGeom t{v, w, r, slot(w) - 6 - 6LL * r, slot(w) + 40 + 6LL * r, btop(w) + 10 + 6LL * r};
    tab_patch[{v, w}] = (int)patches.size();
    patches.push_back({"tab:" + std::to_string(v) + ">" + std::to_string(w),
                       {{t.x1, H + m_of(v), t.x2, t.top}}});
    tabs.push_back(t);
  }
  for (const auto& p : patches) names.push_back(p.name);

  // gaps (all on horizontal top edges)
  std::vector<Gap> gaps;
  for (int v = 0; v < k; ++v) {
    gaps.push_back({H, slot(v), slot(v) + 12, 0, bridge_patch0 + v});               // on central
    gaps.push_back({H + m_of(v), slot(v) + 22, slot(v) + 34, 1 + v, bridge_patch0 + v});
  }
  for (const auto& t : tabs)
    gaps.push_back({H + m_of(t.v), t.x1, t.x2, 1 + t.v, tab_patch.at({t.v, t.w})});

  // ---- contour -------------------------------------------------------------
  using geo::P2;
  std::vector<P2> pts;
  std::vector<int> seg_patch;  // patch owning segment (pts[i] -> pts[i+1])
  auto emit = [&](double x, double y, int patch) {
    // `patch` tags the segment that STARTS at this point
    pts.push_back({x, y});
    seg_patch.push_back(patch);
  };

  // gap events per rect patch top edge, sorted by x
  struct Event {
    long long x1, x2;
    int kind;  // 0 = bridge diversion (central), 1 = tab blister
    int payload;
  };
  std::vector<std::vector<Event>> rect_events(1 + k);
  for (int v = 0; v < k; ++v) rect_events[0].push_back({slot(v), slot(v) + 12, 0, v});
  for (const auto& t : tabs)
    rect_events[1 + t.v].push_back({t.x1, t.x2, 1, tab_patch.at({t.v, t.w})});
  for (auto& ev : rect_events)
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.x1 < b.x1; });

  // walk a vertex rectangle from its bridge landing all the way around back
  // to the bridge gap's west end, handling its tab blisters inline
  auto walk_rect = [&](int v) {
    const long long m = m_of(v), a = slot(v);
    const long long ytop = H + m;
    const int pid = 1 + v;
    // eastward along the top from x = a+34, tabs with x1 > a+34
    for (const Event& e : rect_events[1 + v]) {
      if (e.x1 <= a + 34) continue;
      emit((double)e.x1, (double)ytop, e.payload);
      emit((double)e.x1, (double)patches[e.payload].rects[0].y2, e.payload);
      emit((double)e.x2, (double)patches[e.payload].rects[0].y2, e.payload);
      emit((double)e.x2, (double)ytop, pid);
    }
    emit((double)(W + m), (double)ytop, pid);
    emit((double)(W + m), (double)-m, pid);
    emit((double)-m, (double)-m, pid);
    emit((double)-m, (double)ytop, pid);
    for (const Event& e : rect_events[1 + v]) {
      if (e.x1 > a + 34) continue;
      emit((double)e.x1, (double)ytop, e.payload);
      emit((double)e.x1, (double)patches[e.payload].rects[0].y2, e.payload);
      emit((double)e.x2, (double)patches[e.payload].rects[0].y2, e.payload);
      emit((double)e.x2, (double)ytop, pid);
    }
  };

  // central rectangle, clockwise from the SW corner
  emit(0, 0, 0);
  emit(0, (double)H, 0);
  for (const Event& e : rect_events[0]) {
    const int v = e.payload;
    const int bpid = bridge_patch0 + v;
    const long long a = slot(v), bt = btop(v), m = m_of(v);
    // outer bridge side: up, across the turn, down to the rect landing
    emit((double)a, (double)H, bpid);
    emit((double)a, (double)bt, bpid);
    emit((double)(a + 34), (double)bt, bpid);
    emit((double)(a + 34), (double)(H + m), 1 + v);
    walk_rect(v);
    // inner bridge side: from the rect gap's west end back to central
    emit((double)(a + 22), (double)(H + m), bpid);
    emit((double)(a + 22), (double)(bt - 12), bpid);
    emit((double)(a + 12), (double)(bt - 12), bpid);
    emit((double)(a + 12), (double)H, 0);
  }
  emit((double)W, (double)H, 0);
  emit((double)W, 0, 0);

  PolylineCurve contour;
  contour.id = 0;
  contour.points = pts;

  auto d = arrange({contour});

  // ---- sheets on the coordinate grid ---------------------------------------
  std::vector<double> xs, ys;
  for (auto p : pts) {
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  xs.insert(xs.begin(), xs.front() - 50);
  xs.push_back(xs.back() + 50);
  ys.insert(ys.begin(), ys.front() - 50);
  ys.push_back(ys.back() + 50);
  const int NX = (int)xs.size() - 1, NY = (int)ys.size() - 1;
  auto cell_id = [&](int i, int j) { return j * NX + i; };
  auto cell_mid = [&](int c) {
    int i = c % NX, j = c / NX;
    return P2{(xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2};
  };
  auto find_cell = [&](double x, double y) {
    int i = (int)(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
    int j = (int)(std::upper_bound(ys.begin(), ys.end(), y) - ys.begin()) - 1;
    i = std::clamp(i, 0, NX - 1);
    j = std::clamp(j, 0, NY - 1);
    return cell_id(i, j);
  };

  // curve segments, split by axis
  std::map<double, std::vector<std::pair<double, double>>> verts, horiz;
  const int nseg = (int)pts.size();
  for (int i = 0; i < nseg; ++i) {
    P2 a = pts[i], b = pts[(i + 1) % nseg];
    if (a[0] == b[0]) verts[a[0]].push_back({std::min(a[1], b[1]), std::max(a[1], b[1])});
    else horiz[a[1]].push_back({std::min(a[0], b[0]), std::max(a[0], b[0])});
  }
  auto blocked_v = [&](double x, double ylo, double yhi) {
    auto it = verts.find(x);
    if (it == verts.end()) return false;
    for (auto [lo, hi] : it->second)
      if (lo <= ylo && hi >= yhi) return true;
    return false;
  };
  auto blocked_h = [&](double y, double xlo, double xhi) {
    auto it = horiz.find(y);
    if (it == horiz.end()) return false;
    for (auto [lo, hi] : it->second)
      if (lo <= xlo && hi >= xhi) return true;
    return false;
  };

  // flood fill cells into arrangement faces
  std::vector<int> cell_face(NX * NY, -1);
  int ngroups = 0;
  for (int c0 = 0; c0 < NX * NY; ++c0) {
    if (cell_face[c0] != -1) continue;
    int gid = ngroups++;
    std::vector<int> stack{c0};
    cell_face[c0] = gid;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      int i = c % NX, j = c / NX;
      auto push = [&](int c2) {
        if (cell_face[c2] == -1) {
          cell_face[c2] = gid;
          stack.push_back(c2);
        }
      };
      if (i > 0 && !blocked_v(xs[i], ys[j], ys[j + 1])) push(cell_id(i - 1, j));
      if (i + 1 < NX && !blocked_v(xs[i + 1], ys[j], ys[j + 1])) push(cell_id(i + 1, j));
      if (j > 0 && !blocked_h(ys[j], xs[i], xs[i + 1])) push(cell_id(i, j - 1));
      if (j + 1 < NY && !blocked_h(ys[j + 1], xs[i], xs[i + 1])) push(cell_id(i, j + 1));
    }
  }
  if (ngroups != d->face_count())
    throw reduction_error("internal: grid faces disagree with the arrangement");

  // map flood groups to diagram face ids via each arc's first segment
  std::vector<int> group_face(ngroups, -1);
  for (const Arc& a : d->arcs) {
    const auto& ap = d->geometry.arc_points[a.id];
    for (std::size_t s = 0; s + 1 < ap.size(); ++s) {
      P2 u = ap[s], w = ap[s + 1];
      P2 mid{(u[0] + w[0]) / 2, (u[1] + w[1]) / 2};
      const double off = 0.25;
      P2 lft, rgt;
      if (u[0] == w[0]) {  // vertical
        double dirup = w[1] > u[1] ? 1.0 : -1.0;
        lft = {mid[0] - off * dirup, mid[1]};
        rgt = {mid[0] + off * dirup, mid[1]};
      } else {
        double direast = w[0] > u[0] ? 1.0 : -1.0;
        lft = {mid[0], mid[1] + off * direast};
        rgt = {mid[0], mid[1] - off * direast};
      }
      int gl = cell_face[find_cell(lft[0], lft[1])];
      int gr = cell_face[find_cell(rgt[0], rgt[1])];
      if (group_face[gl] == -1) group_face[gl] = a.left_face;
      if (group_face[gr] == -1) group_face[gr] = a.right_face;
      if (group_face[gl] != a.left_face || group_face[gr] != a.right_face)
        throw reduction_error("internal: inconsistent grid face identification");
    }
  }

  // sheet units: (cell, patch), glued within faces and through gaps
  const int npatch = (int)patches.size();
  std::vector<std::vector<int>> cover(NX * NY);
  for (int c = 0; c < NX * NY; ++c) {
    P2 m = cell_mid(c);
    for (int p = 0; p < npatch; ++p)
      if (patches[p].covers(m[0], m[1])) cover[c].push_back(p);
  }
  detail::UnionFind uf(NX * NY * npatch);
  auto unit = [&](int c, int p) { return c * npatch + p; };
  for (int j = 0; j < NY; ++j)
    for (int i = 0; i < NX; ++i) {
      int c = cell_id(i, j);
      if (i + 1 < NX && cell_face[c] == cell_face[cell_id(i + 1, j)] &&
          !blocked_v(xs[i + 1], ys[j], ys[j + 1]))
        for (int p : cover[c])
          if (patches[p].covers(cell_mid(cell_id(i + 1, j))[0], cell_mid(cell_id(i + 1, j))[1]))
            uf.unite(unit(c, p), unit(cell_id(i + 1, j), p));
      if (j + 1 < NY && cell_face[c] == cell_face[cell_id(i, j + 1)] &&
          !blocked_h(ys[j + 1], xs[i], xs[i + 1]))
        for (int p : cover[c])
          if (patches[p].covers(cell_mid(cell_id(i, j + 1))[0], cell_mid(cell_id(i, j + 1))[1]))
            uf.unite(unit(c, p), unit(cell_id(i, j + 1), p));
    }
  for (const Gap& gp : gaps) {
    for (int i = 0; i < NX; ++i) {
      if (!(xs[i] >= gp.x1 && xs[i + 1] <= gp.x2)) continue;
      int jb = -1, ja = -1;
      for (int j = 0; j + 1 <= NY; ++j) {
        if (j < NY && ys[j + 1] == (double)gp.y) jb = j;
        if (j < NY && ys[j] == (double)gp.y) ja = j;
      }
      if (jb < 0 || ja < 0) throw reduction_error("internal: gap off the grid");
      int cb = cell_id(i, jb), ca = cell_id(i, ja);
      if (cell_face[cb] != cell_face[ca])
        throw reduction_error("internal: gap separates faces");
      uf.unite(unit(cb, gp.below_patch), unit(ca, gp.above_patch));
    }
  }

  // collect sheets per face
  const int nfaces = d->face_count();
  std::vector<std::vector<long long>> face_classes(nfaces);  // root ids, sorted
  std::map<long long, int> class_index;                      // root -> global sheet id
  ImmersedSurface s;
  s.diagram = d;
  s.sheet_count.assign(nfaces, 0);
  s.sheet_offset.assign(nfaces, 0);
  {
    std::vector<std::set<long long>> roots(nfaces);
    for (int c = 0; c < NX * NY; ++c)
      for (int p : cover[c]) roots[group_face[cell_face[c]]].insert(uf.find(unit(c, p)));
    int acc = 0;
    for (int f = 0; f < nfaces; ++f) {
      s.sheet_offset[f] = acc;
      s.sheet_count[f] = (int)roots[f].size();
      for (long long r : roots[f]) {
        face_classes[f].push_back(r);
        class_index[r] = acc++;
      }
    }
    s.sheet_tag.assign(acc, "");
    for (int c = 0; c < NX * NY; ++c)
      for (int p : cover[c]) {
        int sid = class_index.at(uf.find(unit(c, p)));
        if (s.sheet_tag[sid].empty() || patches[p].name < s.sheet_tag[sid])
          s.sheet_tag[sid] = patches[p].name;
      }
  }
  for (int f = 0; f < nfaces; ++f)
    if (s.sheet_count[f] != d->winding[f])
      throw reduction_error("internal: sheet count does not match winding at face " +
                            std::to_string(f));

  // locate the owning contour segment of a point (axis-aligned lookup)
  auto owner_patch = [&](P2 a, P2 b) -> int {
    P2 mid{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
    for (int i = 0; i < nseg; ++i) {
      P2 u = pts[i], w = pts[(i + 1) % nseg];
      if (u[0] == w[0]) {
        if (a[0] == u[0] && b[0] == u[0] && mid[1] > std::min(u[1], w[1]) &&
            mid[1] < std::max(u[1], w[1]))
          return seg_patch[i];
      } else {
        if (a[1] == u[1] && b[1] == u[1] && mid[0] > std::min(u[0], w[0]) &&
            mid[0] < std::max(u[0], w[0]))
          return seg_patch[i];
      }
    }
    throw reduction_error("internal: contour segment not found");
  };

  // gluings
  s.gluings.resize(d->arc_count());
  for (const Arc& a : d->arcs) {
    const auto& ap = d->geometry.arc_points[a.id];
    P2 u = ap[0], w = ap[1];
    P2 mid{(u[0] + w[0]) / 2, (u[1] + w[1]) / 2};
    const double off = 0.25;
    P2 lft, rgt;
    if (u[0] == w[0]) {
      double dirup = w[1] > u[1] ? 1.0 : -1.0;
      lft = {mid[0] - off * dirup, mid[1]};
      rgt = {mid[0] + off * dirup, mid[1]};
    } else {
      double direast = w[0] > u[0] ? 1.0 : -1.0;
      lft = {mid[0], mid[1] + off * direast};
      rgt = {mid[0], mid[1] - off * direast};
    }
    int cl = find_cell(lft[0], lft[1]), cr = find_cell(rgt[0], rgt[1]);
    auto& gl = s.gluings[a.id];
    gl.to.assign(s.sheet_count[a.left_face], -1);
    for (int p : cover[cl]) {
      int from = class_index.at(uf.find(unit(cl, p)));
      int to = class_index.at(uf.find(unit(cr, p)));
      gl.to[from - s.sheet_offset[a.left_face]] = to;
    }
    for (int v : gl.to)
      if (v < 0) throw reduction_error("internal: left sheet without continuation");
    int own = owner_patch(u, w);
    bool owner_on_right = false;
    for (int p : cover[cr]) owner_on_right |= (p == own);
    if (!owner_on_right || patches[own].covers(cell_mid(cl)[0], cell_mid(cl)[1]))
      throw reduction_error("internal: boundary owner on the wrong side");
    gl.bounded = class_index.at(uf.find(unit(cr, own)));
  }

  auto rep = validate_immersion(s);
  if (!rep.ok)
    throw reduction_error("internal: generated immersion invalid: " + rep.problems.front());

  LiftabilityInstance out;
  out.surface = std::move(s);
  out.curve = {contour};
  out.patch_name = names;
  out.core_face = group_face[cell_face[find_cell(W / 2.0, H / 2.0)]];
  return out;
}

// Bottom-to-top patch names over a face of an accepted lifting of the
// generated instance (reads off the vertical order of the rectangles).
// The lifting's sheet complex must equal the generated one; canonical
// relabeling aligns the two sheet tables.
inline std::vector<std::string> stack_order_tags(const LiftabilityInstance& inst,
                                                 const Terrain& t, int face) {
  auto mine = immersion_from_terrain(t);
  std::vector<int> remap_mine, remap_gen;
  canonicalize(mine, &remap_mine);
  canonicalize(inst.surface, &remap_gen);
  if (!same_immersion(mine, inst.surface))
    throw reduction_error("lifting does not realize the generated immersion");
  std::vector<int> canon_to_gen(inst.surface.total_sheets(), -1);
  for (int x = 0; x < (int)remap_gen.size(); ++x) canon_to_gen[remap_gen[x]] = x;
  std::vector<std::string> order;
  for (int lvl = 0; lvl < (int)t.stacks.stack[face].size(); ++lvl) {
    int sheet = mine.sheet_offset[face] + lvl;
    order.push_back(inst.surface.sheet_tag[canon_to_gen[remap_mine[sheet]]]);
  }
  return order;
}

}  // namespace terralift
