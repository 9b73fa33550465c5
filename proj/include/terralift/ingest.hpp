#pragma once

// Geometric ingestion: closed polylines -> arrangement -> CurveDiagram.
//
// Inputs must be in general position: only proper pairwise transversal
// crossings, no tangencies, triple points, vertex-on-segment contacts or
// overlaps within epsilon.  Degeneracies are rejected, never perturbed.

#include <cmath>
#include <sstream>

#include "diagram.hpp"

namespace terralift {

struct PolylineCurve {
  int id = -1;
  std::vector<std::array<double, 2>> points;  // implicitly closed
};

enum class ingest_errc { degenerate_input, bad_input };

class ingest_error : public std::runtime_error {
public:
  ingest_error(ingest_errc k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
  ingest_errc kind;
};

struct ArrangeOptions {
  double eps = 1e-9;
};

namespace geo {

using P2 = std::array<double, 2>;

inline P2 sub(P2 a, P2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline double cross(P2 a, P2 b) { return a[0] * b[1] - a[1] * b[0]; }
inline double dot(P2 a, P2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(P2 a) { return std::sqrt(dot(a, a)); }

// Signed area of triangle abc; positive when c lies left of a->b.
inline double orient(P2 a, P2 b, P2 c) { return cross(sub(b, a), sub(c, a)); }

inline double seg_point_dist(P2 a, P2 b, P2 p) {
  P2 ab = sub(b, a);
  double t = dot(sub(p, a), ab) / std::max(dot(ab, ab), 1e-300);
  t = std::clamp(t, 0.0, 1.0);
  P2 q{a[0] + t * ab[0], a[1] + t * ab[1]};
  return norm(sub(p, q));
}

}  // namespace geo

namespace detail_ingest {

struct SegRef {
  int curve = -1, seg = -1;
  friend auto operator<=>(const SegRef&, const SegRef&) = default;
};

struct CrossingRec {
  geo::P2 point{};
  SegRef sa, sb;
  double ta = 0, tb = 0;  // params on sa, sb
  int id = -1;
};

}  // namespace detail_ingest

inline DiagramPtr arrange(const std::vector<PolylineCurve>& curves,
                          const ArrangeOptions& opt = {}) {
  using geo::P2;
  using detail_ingest::CrossingRec;
  using detail_ingest::SegRef;
  const double eps = opt.eps;

  if (curves.empty()) throw ingest_error(ingest_errc::bad_input, "no curves");

  // normalize: drop a repeated closing point, validate shape
  std::vector<std::vector<P2>> pts(curves.size());
  double scale = 0;
  for (int ci = 0; ci < (int)curves.size(); ++ci) {
    pts[ci] = curves[ci].points;
    auto& v = pts[ci];
    if (v.size() >= 2 && geo::norm(geo::sub(v.front(), v.back())) <= eps) v.pop_back();
    if (v.size() < 3)
      throw ingest_error(ingest_errc::bad_input, "polyline needs at least 3 points");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const P2& a = v[i];
      const P2& b = v[(i + 1) % v.size()];
      if (geo::norm(geo::sub(b, a)) <= eps)
        throw ingest_error(ingest_errc::degenerate_input, "repeated consecutive points");
      scale = std::max({scale, std::abs(a[0]), std::abs(a[1])});
    }
  }
  const double tol = std::max(eps, eps * scale);

  auto seg = [&](SegRef s) -> std::pair<P2, P2> {
    const auto& v = pts[s.curve];
    return {v[s.seg], v[(s.seg + 1) % v.size()]};
  };
  auto nsegs = [&](int c) { return (int)pts[c].size(); };

  // vertex-on-segment / near-contact rejection
  for (int ci = 0; ci < (int)curves.size(); ++ci)
    for (int vi = 0; vi < (int)pts[ci].size(); ++vi)
      for (int cj = 0; cj < (int)curves.size(); ++cj)
        for (int sj = 0; sj < nsegs(cj); ++sj) {
          if (ci == cj) {
            int d = (vi - sj + nsegs(cj)) % nsegs(cj);
            if (d == 0 || d == 1) continue;  // vertex belongs to this segment
          }
          auto [a, b] = seg({cj, sj});
          if (geo::seg_point_dist(a, b, pts[ci][vi]) <= tol)
            throw ingest_error(ingest_errc::degenerate_input,
                               "vertex within epsilon of a segment");
        }

  // pairwise proper intersections
  std::vector<CrossingRec> crossings;
  for (int ci = 0; ci < (int)curves.size(); ++ci)
    for (int si = 0; si < nsegs(ci); ++si)
      for (int cj = ci; cj < (int)curves.size(); ++cj)
        for (int sj = (cj == ci ? si + 1 : 0); sj < nsegs(cj); ++sj) {
          if (ci == cj) {
            int d = (sj - si + nsegs(ci)) % nsegs(ci);
            if (d == 1 || d == nsegs(ci) - 1) continue;  // adjacent segments
          }
          auto [a, b] = seg({ci, si});
          auto [c, e] = seg({cj, sj});
          double d1 = geo::orient(a, b, c), d2 = geo::orient(a, b, e);
          double d3 = geo::orient(c, e, a), d4 = geo::orient(c, e, b);
          double m = geo::norm(geo::sub(b, a)) * geo::norm(geo::sub(e, c));
          const double thr = tol * std::max(m, 1.0);
          // clear separation?
          if ((d1 > thr && d2 > thr) || (d1 < -thr && d2 < -thr) ||
              (d3 > thr && d4 > thr) || (d3 < -thr && d4 < -thr))
            continue;
          const bool amb1 = std::abs(d1) <= thr, amb2 = std::abs(d2) <= thr;
          const bool amb3 = std::abs(d3) <= thr, amb4 = std::abs(d4) <= thr;
          if (amb1 && amb2 && amb3 && amb4) {
            // collinear: degenerate only if the spans overlap
            P2 ab = geo::sub(b, a);
            double ab2 = geo::dot(ab, ab);
            double tc = geo::dot(geo::sub(c, a), ab) / ab2;
            double te = geo::dot(geo::sub(e, a), ab) / ab2;
            double lo = std::min(tc, te), hi = std::max(tc, te);
            double slack = tol / std::sqrt(ab2);
            if (hi < -slack || lo > 1 + slack) continue;
            throw ingest_error(ingest_errc::degenerate_input,
                               "overlapping collinear segments");
          }
          // a near-zero orientation with no clean separation means a contact
          // at or next to a segment endpoint
          if (amb1 || amb2 || amb3 || amb4)
            throw ingest_error(ingest_errc::degenerate_input,
                               "non-transversal contact between segments");
          if ((d1 > 0) == (d2 > 0) || (d3 > 0) == (d4 > 0)) continue;
          CrossingRec r;
          r.sa = {ci, si};
          r.sb = {cj, sj};
          {  // solve a + ta*(b-a) = c + tb*(e-c)
            P2 ab = geo::sub(b, a), ce = geo::sub(e, c), ac = geo::sub(c, a);
            double den = geo::cross(ab, ce);
            r.ta = geo::cross(ac, ce) / den;
            r.tb = geo::cross(ac, ab) / den;
            r.point = {a[0] + r.ta * ab[0], a[1] + r.ta * ab[1]};
          }
          if (r.ta <= tol || r.ta >= 1 - tol || r.tb <= tol || r.tb >= 1 - tol)
            throw ingest_error(ingest_errc::degenerate_input,
                               "intersection at a segment endpoint");
          crossings.push_back(r);
        }

  // triple points / coincident crossings
  for (std::size_t i = 0; i < crossings.size(); ++i)
    for (std::size_t j = i + 1; j < crossings.size(); ++j)
      if (geo::norm(geo::sub(crossings[i].point, crossings[j].point)) <= tol)
        throw ingest_error(ingest_errc::degenerate_input, "triple point or tangency");

  // deterministic crossing ids: sort by the lexicographically smaller
  // (curve, seg, t) endpoint reference
  auto key = [](const CrossingRec& r) {
    auto ka = std::make_tuple(r.sa.curve, r.sa.seg, r.ta);
    auto kb = std::make_tuple(r.sb.curve, r.sb.seg, r.tb);
    return std::min(ka, kb);
  };
  std::sort(crossings.begin(), crossings.end(),
            [&](const CrossingRec& x, const CrossingRec& y) { return key(x) < key(y); });
  for (int i = 0; i < (int)crossings.size(); ++i) crossings[i].id = i;

  // events per (curve, seg)
  struct Event {
    double t;
    int crossing;
    bool strand_a;  // whether this event is the crossing's sa strand
  };
  std::vector<std::vector<std::vector<Event>>> events(curves.size());
  for (int ci = 0; ci < (int)curves.size(); ++ci) events[ci].resize(nsegs(ci));
  for (const CrossingRec& r : crossings) {
    events[r.sa.curve][r.sa.seg].push_back({r.ta, r.id, true});
    events[r.sb.curve][r.sb.seg].push_back({r.tb, r.id, false});
  }
  for (auto& percurve : events)
    for (auto& ev : percurve)
      std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.t < b.t; });

  // slot order at each crossing: the four darts sorted counterclockwise
  struct Slots {
    // slot index of: sa out, sa in, sb out, sb in
    int a_out, a_in, b_out, b_in;
  };
  std::vector<Slots> slot_of(crossings.size());
  for (const CrossingRec& r : crossings) {
    auto [a1, a2] = seg(r.sa);
    auto [b1, b2] = seg(r.sb);
    P2 da = geo::sub(a2, a1), db = geo::sub(b2, b1);
    std::array<std::pair<double, int>, 4> darts{{
        {std::atan2(da[1], da[0]), 0},    // sa out
        {std::atan2(-da[1], -da[0]), 1},  // sa in
        {std::atan2(db[1], db[0]), 2},    // sb out
        {std::atan2(-db[1], -db[0]), 3},  // sb in
    }};
    std::sort(darts.begin(), darts.end());
    Slots s{};
    for (int k = 0; k < 4; ++k) {
      switch (darts[k].second) {
        case 0: s.a_out = k; break;
        case 1: s.a_in = k; break;
        case 2: s.b_out = k; break;
        case 3: s.b_in = k; break;
      }
    }
    if (((s.a_in ^ s.a_out) != 2) || ((s.b_in ^ s.b_out) != 2))
      throw ingest_error(ingest_errc::degenerate_input, "crossing darts do not alternate");
    slot_of[r.id] = s;
  }

  // passes per curve, in traversal order
  DiagramInput in;
  in.crossings = (int)crossings.size();
  in.components.resize(curves.size());
  // arc bookkeeping: per curve the flat list of events in traversal order
  struct FlatEvent {
    int seg;
    double t;
    int crossing;
    bool strand_a;
  };
  std::vector<std::vector<FlatEvent>> flat(curves.size());
  for (int ci = 0; ci < (int)curves.size(); ++ci) {
    for (int si = 0; si < nsegs(ci); ++si)
      for (const Event& e : events[ci][si]) flat[ci].push_back({si, e.t, e.crossing, e.strand_a});
    for (const FlatEvent& e : flat[ci]) {
      const Slots& s = slot_of[e.crossing];
      in.components[ci].push_back(Pass{e.crossing, e.strand_a ? s.a_in : s.b_in});
    }
  }

  // ---- nesting (geometric) -------------------------------------------------
  detail::UnionFind uf((int)curves.size());
  for (const CrossingRec& r : crossings) uf.unite(r.sa.curve, r.sb.curve);
  std::map<int, std::vector<int>> piece_curves;
  for (int ci = 0; ci < (int)curves.size(); ++ci) piece_curves[uf.find(ci)].push_back(ci);

  // arc id of a point along a curve, identified by (seg, t)
  int arc_base_acc = 0;
  std::vector<int> arc_base(curves.size());
  for (int ci = 0; ci < (int)curves.size(); ++ci) {
    arc_base[ci] = arc_base_acc;
    arc_base_acc += std::max<std::size_t>(1, flat[ci].size());
  }
  auto arc_at_param = [&](int ci, int si, double t) -> int {
    const auto& fl = flat[ci];
    if (fl.empty()) return arc_base[ci];
    // arc j follows event j; find the last event <= (si, t)
    int lo = -1;
    for (int j = 0; j < (int)fl.size(); ++j)
      if (fl[j].seg < si || (fl[j].seg == si && fl[j].t <= t)) lo = j;
    if (lo == -1) lo = (int)fl.size() - 1;  // before the first event: last arc wraps
    return arc_base[ci] + lo;
  };

  // deterministic "generic" ray shooting: returns hit with the smallest s
  struct Hit {
    int curve = -1, seg = -1;
    double t = 0, s = 0;
  };
  auto shoot = [&](P2 origin, P2 dir, const std::vector<int>& targets) -> std::optional<Hit> {
    Hit best;
    bool found = false;
    for (int ci : targets)
      for (int si = 0; si < nsegs(ci); ++si) {
        auto [a, b] = seg({ci, si});
        P2 ab = geo::sub(b, a);
        double den = geo::cross(dir, ab);
        if (std::abs(den) <= 1e-12 * std::max(1.0, geo::norm(ab))) {
          // parallel: retry when the segment is close to the ray line
          if (std::abs(geo::cross(dir, geo::sub(a, origin))) <= tol)
            throw std::domain_error("retry");
          continue;
        }
        P2 ao = geo::sub(a, origin);
        double s = geo::cross(ao, ab) / den;
        double t = geo::cross(ao, dir) / den;
        if (s <= tol) continue;
        if (t <= 1e-7 || t >= 1 - 1e-7) {
          if (t > -1e-7 && t < 1 + 1e-7) throw std::domain_error("retry");  // near endpoint
          continue;
        }
        if (!found || s < best.s) {
          best = {ci, si, t, s};
          found = true;
        }
      }
    if (!found) return std::nullopt;
    return best;
  };
  auto shoot_generic = [&](P2 origin, const std::vector<int>& targets) -> std::optional<Hit> {
    for (int k = 0; k < 64; ++k) {
      double ang = 0.7548776662 + k * 2.399963;  // fixed irrational-step sequence
      P2 dir{std::cos(ang), std::sin(ang)};
      try {
        return shoot(origin, dir, targets);
      } catch (const std::domain_error&) {
        continue;
      }
    }
    throw ingest_error(ingest_errc::degenerate_input, "no generic ray found");
  };

  const bool single_piece = piece_curves.size() == 1;
  std::vector<std::pair<int, bool>> piece_boundary;  // (arc, is_left) per piece order
  std::vector<int> piece_rep;                        // representative curve
  for (auto& [root, members] : piece_curves) {
    piece_rep.push_back(members.front());
    // the first hit of a downward ray through the piece's x-range comes from
    // above, so the face on its upper side is the piece's local outer face
    double xmin = 1e300, xmax = -1e300, ymax = -1e300;
    for (int ci : members)
      for (const P2& v : pts[ci]) {
        xmin = std::min(xmin, v[0]);
        xmax = std::max(xmax, v[0]);
        ymax = std::max(ymax, v[1]);
      }
    std::optional<Hit> hit;
    for (int k = 0; k < 64 && !hit; ++k) {
      double frac = 0.5 + 0.6180339887 * k;
      frac -= std::floor(frac);
      P2 origin{xmin + (xmax - xmin) * frac, ymax + 1.0};
      try {
        auto h = shoot(origin, P2{0.0, -1.0}, members);
        if (h) hit = h;
      } catch (const std::domain_error&) {
      }
    }
    if (!hit) throw ingest_error(ingest_errc::degenerate_input, "cannot locate outer face");
    auto [a, b] = seg({hit->curve, hit->seg});
    bool left_is_up = (b[0] - a[0]) > 0;  // left of travel faces up iff heading east
    piece_boundary.push_back({arc_at_param(hit->curve, hit->seg, hit->t), left_is_up});
  }

  if (single_piece) {
    in.outer = piece_boundary.front();
  } else {
    const int np = (int)piece_rep.size();
    // Build each piece's own sub-diagram (its topmost point fixes the local
    // outer face); containment of a point is then decided by identifying the
    // point's local face from the first segment hit of a generic ray.
    std::vector<std::vector<int>> piece_members(np);
    {
      int p = 0;
      for (auto& [root, members] : piece_curves) piece_members[p++] = members;
    }
    // global arc id -> piece-local arc id
    std::vector<int> local_arc(arc_base_acc, -1);
    std::vector<DiagramPtr> sub(np);
    for (int p = 0; p < np; ++p) {
      const auto& members = piece_members[p];
      std::map<int, int> cross_local;
      DiagramInput pin;
      pin.components.resize(members.size());
      int lbase = 0;
      for (int mi = 0; mi < (int)members.size(); ++mi) {
        int ci = members[mi];
        for (const FlatEvent& e : flat[ci]) {
          if (!cross_local.count(e.crossing))
            cross_local.emplace(e.crossing, (int)cross_local.size());
          const Slots& s = slot_of[e.crossing];
          pin.components[mi].push_back(
              Pass{cross_local[e.crossing], e.strand_a ? s.a_in : s.b_in});
        }
        const int m = std::max<std::size_t>(1, flat[ci].size());
        for (int j = 0; j < m; ++j) local_arc[arc_base[ci] + j] = lbase + j;
        lbase += m;
      }
      pin.crossings = (int)cross_local.size();
      pin.outer = std::make_pair(local_arc[piece_boundary[p].first], piece_boundary[p].second);
      sub[p] = build_diagram(pin);
    }
    // containment: first hit of a generic ray identifies the local face
    auto locate = [&](P2 origin, int q) -> std::optional<std::pair<int, bool>> {
      auto h = shoot_generic(origin, piece_members[q]);
      if (!h) return std::nullopt;  // ray to infinity missed: in the outer face
      auto [a, b] = seg({h->curve, h->seg});
      bool left = geo::orient(a, b, origin) > 0;
      return std::make_pair(arc_at_param(h->curve, h->seg, h->t), left);
    };
    auto contained = [&](P2 origin, int q) -> std::optional<std::pair<int, bool>> {
      auto loc = locate(origin, q);
      if (!loc) return std::nullopt;
      const Arc& la = sub[q]->arcs[local_arc[loc->first]];
      int face = loc->second ? la.left_face : la.right_face;
      if (face == sub[q]->outer_face) return std::nullopt;
      return loc;  // global (arc, side) of the containing face
    };
    std::vector<std::vector<int>> containers(np);
    std::vector<std::optional<std::pair<int, bool>>> parent_face(np);
    std::vector<std::optional<std::pair<int, bool>>> in_face(np * np);
    for (int p = 0; p < np; ++p) {
      P2 origin = pts[piece_rep[p]][0];
      for (int q = 0; q < np; ++q) {
        if (p == q) continue;
        in_face[p * np + q] = contained(origin, q);
        if (in_face[p * np + q]) containers[p].push_back(q);
      }
    }
    for (int p = 0; p < np; ++p) {
      // innermost container = the container contained in all other containers
      int inner = -1;
      for (int q : containers[p])
        if (inner == -1 || (int)containers[q].size() > (int)containers[inner].size())
          inner = q;
      if (inner != -1) parent_face[p] = in_face[p * np + inner];
    }
    for (int p = 0; p < np; ++p) {
      NestingEntry e;
      e.component = piece_rep[p];
      e.boundary_arc = piece_boundary[p].first;
      e.boundary_left = piece_boundary[p].second;
      e.in = parent_face[p];
      in.nesting.push_back(e);
    }
  }

  auto dp = build_diagram(in);

  // attach geometry: crossing coordinates and per-arc polylines
  auto d = std::const_pointer_cast<CurveDiagram>(dp);
  d->geometry.crossing_pos.resize(crossings.size());
  for (const CrossingRec& r : crossings) d->geometry.crossing_pos[r.id] = r.point;
  d->geometry.arc_points.resize(d->arc_count());
  for (int ci = 0; ci < (int)curves.size(); ++ci) {
    const auto& fl = flat[ci];
    const int m = (int)fl.size();
    if (m == 0) {
      auto& ap = d->geometry.arc_points[arc_base[ci]];
      ap = pts[ci];
      ap.push_back(pts[ci].front());
      continue;
    }
    auto point_at = [&](const FlatEvent& e) -> P2 {
      auto [a, b] = seg({ci, e.seg});
      return {a[0] + e.t * (b[0] - a[0]), a[1] + e.t * (b[1] - a[1])};
    };
    for (int j = 0; j < m; ++j) {
      const FlatEvent& from = fl[j];
      const FlatEvent& to = fl[(j + 1) % m];
      std::vector<P2> ap{point_at(from)};
      const bool same_seg_ahead = (from.seg == to.seg) && (to.t > from.t) && (m > 1);
      if (!same_seg_ahead) {
        int si = from.seg;
        do {  // vertices strictly between the events, plus to.seg's start vertex
          si = (si + 1) % nsegs(ci);
          ap.push_back(pts[ci][si]);
        } while (si != to.seg);
      }
      ap.push_back(point_at(to));
      d->geometry.arc_points[arc_base[ci] + j] = std::move(ap);
    }
  }
  return dp;
}

// ---------------------------------------------------------------------------
// polyline text format: one component per line, "id: x1,y1 x2,y2 ..."

inline std::vector<PolylineCurve> parse_polylines(const std::string& text) {
  std::vector<PolylineCurve> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ingest_error(ingest_errc::bad_input, "polyline line needs 'id:'");
    PolylineCurve c;
    c.id = std::stoi(line.substr(0, colon));
    std::istringstream rest(line.substr(colon + 1));
    std::string tok;
    while (rest >> tok) {
      auto comma = tok.find(',');
      if (comma == std::string::npos)
        throw ingest_error(ingest_errc::bad_input, "point needs 'x,y'");
      c.points.push_back({std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))});
    }
    out.push_back(std::move(c));
  }
  if (out.empty()) throw ingest_error(ingest_errc::bad_input, "no polylines");
  return out;
}

inline std::string format_polylines(const std::vector<PolylineCurve>& curves) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& c : curves) {
    os << c.id << ":";
    for (const auto& p : c.points) os << " " << p[0] << "," << p[1];
    os << "\n";
  }
  return os.str();
}

}  // namespace terralift
