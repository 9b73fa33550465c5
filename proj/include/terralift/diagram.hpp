#pragma once

// Combinatorial model of generic closed curves in the plane.
//
// Conventions used throughout the library:
//  * Each crossing has four half-edge slots numbered 0..3 in counterclockwise
//    order.  A strand pass enters at slot s and exits at slot (s+2)%4, so the
//    two passes through a crossing occupy the opposite slot pairs {0,2} and
//    {1,3}.
//  * Arcs are directed by the component orientation.  Face walks keep the
//    face on the left: arriving at a crossing through the dart at slot s, the
//    walk departs through the dart at slot (s+3)%4.
//  * Crossing an arc from its left face to its right face raises the winding
//    number by one (clockwise turns count positive, so a clockwise simple
//    circle has winding 1 inside).
//  * At a crossing the outgoing dart immediately clockwise of the other
//    outgoing dart carries the label +i; the other carries -i.  Casing bit i
//    is set iff the strand leaving through the +i dart passes above.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace terralift {

// ---------------------------------------------------------------------------
// errors

enum class diagram_errc {
  malformed_rotation,
  non_planar,
  ambiguous_outer_face,
  bad_input,
};

class diagram_error : public std::runtime_error {
public:
  diagram_error(diagram_errc k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
  diagram_errc kind;
};

// ---------------------------------------------------------------------------
// basic pieces

struct Dart {
  int crossing = -1;
  int slot = -1;
  bool valid() const { return crossing >= 0; }
  friend bool operator==(const Dart& a, const Dart& b) {
    return a.crossing == b.crossing && a.slot == b.slot;
  }
};

struct Pass {
  int crossing = -1;
  int enter_slot = -1;  // exits at (enter_slot+2)%4
  int exit_slot() const { return (enter_slot + 2) & 3; }
  friend bool operator==(const Pass&, const Pass&) = default;
};

struct Component {
  int id = -1;
  std::vector<Pass> passes;  // empty => crossing-free closed loop
  bool is_loop() const { return passes.empty(); }
};

struct Arc {
  int id = -1;
  int component = -1;
  int index = -1;   // arc follows passes[index] within its component
  bool loop = false;
  Dart tail;        // exit dart of the preceding pass (invalid for loops)
  Dart head;        // entry dart of the following pass (invalid for loops)
  int left_face = -1;
  int right_face = -1;
};

// One directed arc side; face boundary walks are lists of these.
struct ArcSide {
  int arc = -1;
  bool forward = true;
  friend bool operator==(const ArcSide&, const ArcSide&) = default;
};

struct Face {
  int id = -1;
  bool is_outer = false;
  // Boundary cycles (one per local face merged into this face; nested
  // arrangements give faces with several boundary cycles).
  std::vector<std::vector<ArcSide>> walks;
};

struct CrossingInfo {
  std::array<int, 4> slot_arc{{-1, -1, -1, -1}};
  std::array<bool, 4> slot_is_head{{false, false, false, false}};
  // corner_face[s] = face of the quadrant between the darts at slots s, s+1
  std::array<int, 4> corner_face{{-1, -1, -1, -1}};
  // the two passes through this crossing, in traversal discovery order
  std::array<Pass, 2> pass{};
  std::array<int, 2> pass_component{{-1, -1}};
  int plus_out_slot = -1;   // outgoing dart labeled +i
  int minus_out_slot = -1;  // outgoing dart labeled -i
};

// Optional coordinates carried along from geometric ingestion.
struct DiagramGeometry {
  std::vector<std::array<double, 2>> crossing_pos;
  // polyline per arc, tail to head (closed ring for loop arcs)
  std::vector<std::vector<std::array<double, 2>>> arc_points;
  bool empty() const { return arc_points.empty(); }
};

// Explicit nesting data for arrangements with several connected pieces.
// `boundary` designates the piece's own outermost local face (by an arc of
// the piece and a side), `in` the face of another piece that contains it
// (absent = the piece lies in the global outer face).
struct NestingEntry {
  int component = -1;
  int boundary_arc = -1;
  bool boundary_left = true;
  std::optional<std::pair<int, bool>> in;  // arc id, is_left
};

struct DiagramInput {
  int crossings = 0;
  std::vector<std::vector<Pass>> components;
  std::optional<std::pair<int, bool>> outer;  // arc id, is_left
  std::vector<NestingEntry> nesting;
  std::string casing;  // optional; bit per crossing, '0'/'1'
};

// ---------------------------------------------------------------------------
// Casing

struct Casing {
  int n = 0;
  std::uint64_t bits = 0;
  Casing() = default;
  Casing(int n_, std::uint64_t bits_) : n(n_), bits(bits_) {}
  bool bit(int i) const { return (bits >> i) & 1u; }
  void set(int i, bool v) {
    if (v) bits |= (std::uint64_t{1} << i);
    else bits &= ~(std::uint64_t{1} << i);
  }
  std::string to_string() const {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i) s[i] = bit(i) ? '1' : '0';
    return s;
  }
  friend bool operator==(const Casing&, const Casing&) = default;
};

// n-bit casing <-> integer; bijective for fixed n.
inline std::uint64_t casing_to_integer(const Casing& c) { return c.bits; }

inline Casing casing_from_integer(int n, std::uint64_t v) {
  if (n < 0 || n > 62) throw diagram_error(diagram_errc::bad_input, "casing width out of range");
  if (n < 62 && (v >> n) != 0)
    throw diagram_error(diagram_errc::bad_input, "LengthMismatch: integer does not fit casing width");
  return Casing(n, v);
}

inline Casing casing_from_string(int n, const std::string& s) {
  if ((int)s.size() != n)
    throw diagram_error(diagram_errc::bad_input, "LengthMismatch: casing string width");
  Casing c(n, 0);
  for (int i = 0; i < n; ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw diagram_error(diagram_errc::bad_input, "casing string must be binary");
    c.set(i, s[i] == '1');
  }
  return c;
}

// ---------------------------------------------------------------------------
// CurveDiagram

class CurveDiagram;
using DiagramPtr = std::shared_ptr<const CurveDiagram>;

class CurveDiagram {
public:
  std::vector<Component> components;
  std::vector<Arc> arcs;
  std::vector<CrossingInfo> crossings;
  std::vector<Face> faces;
  int outer_face = -1;
  std::vector<int> winding;          // per face, from stored orientations
  std::vector<int> component_piece;  // connected piece per component
  int piece_count = 0;
  std::optional<Casing> casing;      // as given in the input, if any
  DiagramGeometry geometry;
  DiagramInput source;               // the input this diagram was built from

  int crossing_count() const { return (int)crossings.size(); }
  int component_count() const { return (int)components.size(); }
  int arc_count() const { return (int)arcs.size(); }
  int face_count() const { return (int)faces.size(); }

  const Arc& arc(int id) const { return arcs.at(id); }

  // arc whose endpoint occupies the given dart
  int arc_at(const Dart& d) const { return crossings[d.crossing].slot_arc[d.slot]; }

  int winding_of(int face) const { return winding.at(face); }

  // The face in the quadrant between slots s and s+1 at a crossing.
  int corner_face(int crossing, int s) const { return crossings[crossing].corner_face[s & 3]; }

  // Arc leaving crossing c through the +i (resp. -i) dart.
  int plus_arc(int c) const { return crossings[c].slot_arc[crossings[c].plus_out_slot]; }
  int minus_arc(int c) const { return crossings[c].slot_arc[crossings[c].minus_out_slot]; }

  bool has_negative_winding() const {
    return std::any_of(winding.begin(), winding.end(), [](int w) { return w < 0; });
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    p[b] = a;
    return true;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// build_diagram

inline DiagramPtr build_diagram(const DiagramInput& in) {
  auto dptr = std::make_shared<CurveDiagram>();
  CurveDiagram& d = *dptr;
  d.source = in;
  const int n = in.crossings;
  if (n < 0) throw diagram_error(diagram_errc::bad_input, "negative crossing count");
  if (in.components.empty())
    throw diagram_error(diagram_errc::bad_input, "diagram needs at least one component");

  d.crossings.assign(n, CrossingInfo{});
  std::vector<int> passes_seen(n, 0);

  for (int ci = 0; ci < (int)in.components.size(); ++ci) {
    Component comp;
    comp.id = ci;
    comp.passes = in.components[ci];
    for (const Pass& p : comp.passes) {
      if (p.crossing < 0 || p.crossing >= n || p.enter_slot < 0 || p.enter_slot > 3)
        throw diagram_error(diagram_errc::bad_input, "pass out of range");
      int k = passes_seen[p.crossing]++;
      if (k > 1)
        throw diagram_error(diagram_errc::malformed_rotation,
                            "crossing visited more than twice");
      d.crossings[p.crossing].pass[k] = p;
      d.crossings[p.crossing].pass_component[k] = ci;
    }
    d.components.push_back(std::move(comp));
  }
  for (int c = 0; c < n; ++c)
    if (passes_seen[c] != 2)
      throw diagram_error(diagram_errc::malformed_rotation,
                          "crossing must be visited exactly twice");

  // arcs + slot occupancy
  for (Component& comp : d.components) {
    const int m = (int)comp.passes.size();
    if (m == 0) {
      Arc a;
      a.id = (int)d.arcs.size();
      a.component = comp.id;
      a.index = 0;
      a.loop = true;
      d.arcs.push_back(a);
      continue;
    }
    for (int j = 0; j < m; ++j) {
      Arc a;
      a.id = (int)d.arcs.size();
      a.component = comp.id;
      a.index = j;
      const Pass& from = comp.passes[j];
      const Pass& to = comp.passes[(j + 1) % m];
      a.tail = Dart{from.crossing, from.exit_slot()};
      a.head = Dart{to.crossing, to.enter_slot};
      d.arcs.push_back(a);
    }
  }
  for (const Arc& a : d.arcs) {
    if (a.loop) continue;
    for (int end = 0; end < 2; ++end) {
      const Dart& dt = end ? a.head : a.tail;
      CrossingInfo& ci = d.crossings[dt.crossing];
      if (ci.slot_arc[dt.slot] != -1)
        throw diagram_error(diagram_errc::malformed_rotation, "slot used twice");
      ci.slot_arc[dt.slot] = a.id;
      ci.slot_is_head[dt.slot] = (end == 1);
    }
  }
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s)
      if (d.crossings[c].slot_arc[s] == -1)
        throw diagram_error(diagram_errc::malformed_rotation, "unused slot");

  // +/- outgoing darts: +i is immediately clockwise of the other out-dart
  for (int c = 0; c < n; ++c) {
    CrossingInfo& ci = d.crossings[c];
    int x0 = ci.pass[0].exit_slot();
    int x1 = ci.pass[1].exit_slot();
    if (((x0 ^ x1) & 1) == 0)
      throw diagram_error(diagram_errc::malformed_rotation,
                          "strand passes must occupy opposite slot pairs");
    if (((x0 + 1) & 3) == x1) {
      ci.plus_out_slot = x0;
      ci.minus_out_slot = x1;
    } else {
      ci.plus_out_slot = x1;
      ci.minus_out_slot = x0;
    }
  }

  // ---- face traversal over arc sides -------------------------------------
  const int nsides = 2 * (int)d.arcs.size();
  auto side_id = [](const ArcSide& s) { return 2 * s.arc + (s.forward ? 0 : 1); };
  auto next_side = [&](const ArcSide& s) -> ArcSide {
    const Arc& a = d.arcs[s.arc];
    if (a.loop) return s;
    Dart at = s.forward ? a.head : a.tail;
    int dep = (at.slot + 3) & 3;
    int b = d.crossings[at.crossing].slot_arc[dep];
    bool fwd = !d.crossings[at.crossing].slot_is_head[dep];
    return ArcSide{b, fwd};
  };

  std::vector<int> side_face(nsides, -1);
  std::vector<Face> local_faces;
  for (int sid = 0; sid < nsides; ++sid) {
    if (side_face[sid] != -1) continue;
    Face f;
    f.id = (int)local_faces.size();
    std::vector<ArcSide> walk;
    ArcSide cur{sid / 2, sid % 2 == 0};
    while (true) {
      int id = side_id(cur);
      if (side_face[id] != -1) break;
      side_face[id] = f.id;
      walk.push_back(cur);
      const Arc& a = d.arcs[cur.arc];
      if (!a.loop) {
        Dart at = cur.forward ? a.head : a.tail;
        int dep = (at.slot + 3) & 3;
        d.crossings[at.crossing].corner_face[dep] = f.id;
      }
      cur = next_side(cur);
    }
    f.walks.push_back(std::move(walk));
    local_faces.push_back(std::move(f));
  }
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s)
      if (d.crossings[c].corner_face[s] == -1)
        throw diagram_error(diagram_errc::non_planar, "corner not reached by face walk");

  // ---- connected pieces ----------------------------------------------------
  detail::UnionFind uf((int)d.components.size());
  for (int c = 0; c < n; ++c)
    uf.unite(d.crossings[c].pass_component[0], d.crossings[c].pass_component[1]);
  std::map<int, int> piece_of_root;
  d.component_piece.resize(d.components.size());
  for (int ci = 0; ci < (int)d.components.size(); ++ci) {
    int r = uf.find(ci);
    auto it = piece_of_root.find(r);
    if (it == piece_of_root.end())
      it = piece_of_root.emplace(r, (int)piece_of_root.size()).first;
    d.component_piece[ci] = it->second;
  }
  d.piece_count = (int)piece_of_root.size();

  std::vector<int> face_piece(local_faces.size(), -1);
  for (const Face& f : local_faces)
    face_piece[f.id] = d.component_piece[d.arcs[f.walks[0][0].arc].component];

  // Euler check per piece: V - E + F == 2, with one artificial degree-2
  // vertex per crossing-free loop.
  {
    std::vector<int> V(d.piece_count, 0), E(d.piece_count, 0), F(d.piece_count, 0);
    for (int c = 0; c < n; ++c) V[d.component_piece[d.crossings[c].pass_component[0]]]++;
    for (const Component& comp : d.components)
      if (comp.is_loop()) V[d.component_piece[comp.id]]++;
    for (const Arc& a : d.arcs) E[d.component_piece[a.component]]++;
    for (const Face& f : local_faces) F[face_piece[f.id]]++;
    for (int p = 0; p < d.piece_count; ++p)
      if (V[p] - E[p] + F[p] != 2)
        throw diagram_error(diagram_errc::non_planar, "Euler check failed for piece " +
                                                          std::to_string(p));
  }

  // ---- outer face & nesting ------------------------------------------------
  auto local_face_of = [&](int arc, bool left) {
    return side_face[2 * arc + (left ? 0 : 1)];
  };

  // merged[i] groups local faces into global faces
  detail::UnionFind fuf((int)local_faces.size() + 1);
  const int OUTER = (int)local_faces.size();  // virtual global-outer node

  if (d.piece_count == 1) {
    int oa = 0;
    bool ol = true;
    if (in.outer) { oa = in.outer->first; ol = in.outer->second; }
    else if (!in.nesting.empty()) {
      oa = in.nesting.front().boundary_arc;
      ol = in.nesting.front().boundary_left;
    }
    if (oa < 0 || oa >= (int)d.arcs.size())
      throw diagram_error(diagram_errc::bad_input, "outer arc out of range");
    fuf.unite(OUTER, local_face_of(oa, ol));
  } else {
    if (in.nesting.empty())
      throw diagram_error(diagram_errc::ambiguous_outer_face,
                          "disconnected arrangement requires nesting data");
    std::vector<int> piece_boundary_face(d.piece_count, -1);
    std::vector<std::optional<std::pair<int, bool>>> piece_in(d.piece_count);
    std::vector<bool> covered(d.piece_count, false);
    for (const NestingEntry& e : in.nesting) {
      if (e.component < 0 || e.component >= (int)d.components.size())
        throw diagram_error(diagram_errc::bad_input, "nesting component out of range");
      int p = d.component_piece[e.component];
      if (covered[p])
        throw diagram_error(diagram_errc::bad_input, "duplicate nesting entry for piece");
      covered[p] = true;
      if (e.boundary_arc < 0 || e.boundary_arc >= (int)d.arcs.size() ||
          d.component_piece[d.arcs[e.boundary_arc].component] != p)
        throw diagram_error(diagram_errc::bad_input, "nesting boundary arc not in piece");
      piece_boundary_face[p] = local_face_of(e.boundary_arc, e.boundary_left);
      piece_in[p] = e.in;
    }
    for (int p = 0; p < d.piece_count; ++p)
      if (!covered[p])
        throw diagram_error(diagram_errc::ambiguous_outer_face,
                            "piece without nesting entry");
    // containment must form a forest over pieces
    {
      std::vector<int> parent(d.piece_count, -1);
      for (int p = 0; p < d.piece_count; ++p) {
        if (!piece_in[p]) continue;
        auto [arc, left] = *piece_in[p];
        if (arc < 0 || arc >= (int)d.arcs.size())
          throw diagram_error(diagram_errc::bad_input, "nesting arc out of range");
        parent[p] = d.component_piece[d.arcs[arc].component];
        if (parent[p] == p)
          throw diagram_error(diagram_errc::bad_input, "piece nested in itself");
      }
      for (int p = 0; p < d.piece_count; ++p) {
        int steps = 0, q = p;
        while (q != -1) {
          q = parent[q];
          if (++steps > d.piece_count)
            throw diagram_error(diagram_errc::bad_input, "nesting contains a cycle");
        }
      }
    }
    for (int p = 0; p < d.piece_count; ++p) {
      if (piece_in[p]) {
        auto [arc, left] = *piece_in[p];
        fuf.unite(local_face_of(arc, left), piece_boundary_face[p]);
      } else {
        fuf.unite(OUTER, piece_boundary_face[p]);
      }
    }
  }

  // build global faces
  std::map<int, int> root_to_face;
  auto global_of = [&](int local) {
    int r = fuf.find(local);
    auto it = root_to_face.find(r);
    if (it == root_to_face.end())
      it = root_to_face.emplace(r, (int)root_to_face.size()).first;
    return it->second;
  };
  d.outer_face = global_of(OUTER);
  std::vector<int> local_to_global(local_faces.size());
  for (int lf = 0; lf < (int)local_faces.size(); ++lf)
    local_to_global[lf] = global_of(lf);
  d.faces.resize(root_to_face.size());
  for (int g = 0; g < (int)d.faces.size(); ++g) d.faces[g].id = g;
  d.faces[d.outer_face].is_outer = true;
  for (int lf = 0; lf < (int)local_faces.size(); ++lf)
    d.faces[local_to_global[lf]].walks.push_back(std::move(local_faces[lf].walks[0]));

  for (Arc& a : d.arcs) {
    a.left_face = local_to_global[local_face_of(a.id, true)];
    a.right_face = local_to_global[local_face_of(a.id, false)];
  }
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s)
      d.crossings[c].corner_face[s] = local_to_global[d.crossings[c].corner_face[s]];

  // ---- winding numbers (raw; may be negative) ------------------------------
  {
    d.winding.assign(d.faces.size(), INT32_MIN);
    d.winding[d.outer_face] = 0;
    std::vector<int> queue{d.outer_face};
    std::vector<std::vector<std::pair<int, int>>> adj(d.faces.size());  // face -> (face, delta)
    for (const Arc& a : d.arcs) {
      adj[a.left_face].push_back({a.right_face, +1});
      adj[a.right_face].push_back({a.left_face, -1});
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int f = queue[qi];
      for (auto [g, delta] : adj[f]) {
        int w = d.winding[f] + delta;
        if (d.winding[g] == INT32_MIN) {
          d.winding[g] = w;
          queue.push_back(g);
        } else if (d.winding[g] != w) {
          throw diagram_error(diagram_errc::non_planar, "inconsistent winding assignment");
        }
      }
    }
    if (queue.size() != d.faces.size())
      throw diagram_error(diagram_errc::non_planar, "dual graph not connected");
  }

  if (!in.casing.empty())
    d.casing = casing_from_string(n, in.casing);

  return dptr;
}

// ---------------------------------------------------------------------------
// winding_numbers: public query; rejects negative windings (Theorem 2 step).

struct WindingResult {
  bool ok = false;
  std::vector<int> winding;  // valid when ok
  int negative_face = -1;    // witness when !ok
};

inline WindingResult winding_numbers(const CurveDiagram& d) {
  WindingResult r;
  for (int f = 0; f < d.face_count(); ++f)
    if (d.winding[f] < 0) {
      r.negative_face = f;
      return r;
    }
  r.ok = true;
  r.winding = d.winding;
  return r;
}

// ---------------------------------------------------------------------------
// Dowker-style labeling (modified: +i / -i tags on outgoing darts, listed in
// traversal order from a start arc on the outer face).

struct DowkerLabeling {
  int component = -1;
  int start_arc = -1;
  std::vector<int> labels;  // +-(crossing+1) in traversal order
};

class label_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline DowkerLabeling dowker_label(const CurveDiagram& d, int component, int start_arc) {
  if (component < 0 || component >= d.component_count())
    throw label_error("component out of range");
  const Component& comp = d.components[component];
  if (start_arc < 0 || start_arc >= d.arc_count() ||
      d.arcs[start_arc].component != component)
    throw label_error("start arc not on component");
  if (d.arcs[start_arc].left_face != d.outer_face)
    throw label_error("StartNotOnRequiredFace: start arc must have the outer face on its left");
  DowkerLabeling out;
  out.component = component;
  out.start_arc = start_arc;
  const int m = (int)comp.passes.size();
  const int first = (d.arcs[start_arc].index + 1) % std::max(m, 1);
  for (int t = 0; t < m; ++t) {
    const Pass& p = comp.passes[(first + t) % m];
    const CrossingInfo& ci = d.crossings[p.crossing];
    int lab = p.crossing + 1;
    out.labels.push_back(p.exit_slot() == ci.plus_out_slot ? lab : -lab);
  }
  return out;
}

// ---------------------------------------------------------------------------
// reverse_orientation: flips one component; arc ids of that component are
// remapped (arc j -> (m-2-j) mod m) and sides referencing them swap.

inline DiagramPtr reverse_orientation(const CurveDiagram& d, int component) {
  if (component < 0 || component >= d.component_count())
    throw diagram_error(diagram_errc::bad_input, "component out of range");
  DiagramInput in = d.source;
  const int m = (int)in.components[component].size();
  std::vector<Pass> rev;
  for (int j = m - 1; j >= 0; --j) {
    Pass p = in.components[component][j];
    rev.push_back(Pass{p.crossing, p.exit_slot()});
  }
  in.components[component] = rev;

  // arc id remap: arcs of `component` permute, sides flip
  int base = 0;
  for (int ci = 0; ci < component; ++ci)
    base += std::max(1, (int)in.components[ci].size());
  auto remap = [&](std::pair<int, bool> ref) -> std::pair<int, bool> {
    int arc = ref.first;
    const Arc& a = d.arcs[arc];
    if (a.component != component) return ref;
    if (a.loop) return {arc, !ref.second};
    int j = a.index;
    int nj = ((m - 2 - j) % m + m) % m;
    return {base + nj, !ref.second};
  };
  if (in.outer) in.outer = remap(*in.outer);
  for (NestingEntry& e : in.nesting) {
    auto b = remap({e.boundary_arc, e.boundary_left});
    e.boundary_arc = b.first;
    e.boundary_left = b.second;
    if (e.in) e.in = remap(*e.in);
  }
  return build_diagram(in);
}

// ---------------------------------------------------------------------------
// crossing-local helpers shared by lift / immersion code

// Quadrant corners s=0..3 (corner s lies between darts s and s+1).  The
// corner windings around a crossing form either (a,a+1,a+2,a+1) or
// (a,a+1,a,a+1)-type patterns; in both the minimum corner is unique up to
// value and the maximum corner is diagonally opposite a minimum one.
struct CrossingQuadrants {
  int min_corner = -1;  // corner index with minimal winding
  int max_corner = -1;  // diagonally opposite corner, maximal winding
};

inline CrossingQuadrants crossing_quadrants(const CurveDiagram& d, int c) {
  CrossingQuadrants q;
  int best = INT32_MAX;
  for (int s = 0; s < 4; ++s) {
    int w = d.winding[d.corner_face(c, s)];
    if (w < best) {
      best = w;
      q.min_corner = s;
    }
  }
  q.max_corner = (q.min_corner + 2) & 3;
  return q;
}

// The arc-end dart separating corner s from corner s+1 is the dart at slot
// (s+1)&3.  Arc and orientation of the gluing left->right across it:
struct CornerStep {
  int arc = -1;
  bool forward = true;  // true: stepping from the arc's left face to its right
};

// Step from corner `s` to corner `(s+1)&3` across the dart between them.
inline CornerStep corner_step(const CurveDiagram& d, int c, int s) {
  int slot = (s + 1) & 3;
  int arc = d.crossings[c].slot_arc[slot];
  // Corner s is Q(s) = between darts s,s+1; the dart at `slot` separates
  // Q(s) and Q(s+1).  Determine which side of `arc` corner s lies on.
  CornerStep st;
  st.arc = arc;
  st.forward = (d.corner_face(c, s) == d.arcs[arc].left_face);
  if (!st.forward && d.corner_face(c, s) != d.arcs[arc].right_face)
    throw diagram_error(diagram_errc::non_planar, "corner/arc adjacency mismatch");
  return st;
}

}  // namespace terralift
