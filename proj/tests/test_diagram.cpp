#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "support/instances.hpp"

using namespace terralift;

TEST_CASE("circle: two faces, Euler, windings") {
  auto d = ti::circle();
  CHECK(d->face_count() == 2);
  CHECK(d->arc_count() == 1);
  CHECK(d->winding[d->outer_face] == 0);
  int inner = d->arcs[0].right_face;
  CHECK(d->winding[inner] == 1);

  auto ccw = ti::circle(false);
  int interior = ccw->arcs[0].left_face;
  CHECK(ccw->winding[interior] == -1);
  auto wr = winding_numbers(*ccw);
  CHECK_FALSE(wr.ok);
  CHECK(wr.negative_face == interior);
}

TEST_CASE("figure-eight: three faces forced by Euler") {
  auto d = ti::figure_eight();
  CHECK(d->face_count() == 3);
  CHECK(d->arc_count() == 2);
  // lobes of winding +1 and -1 regardless of orientation
  std::multiset<int> ws(d->winding.begin(), d->winding.end());
  CHECK(ws == std::multiset<int>{-1, 0, 1});
  CHECK_FALSE(winding_numbers(*d).ok);
}

TEST_CASE("lens: faces and windings") {
  auto d = ti::lens();
  REQUIRE(d->face_count() == 4);
  CHECK(d->piece_count == 1);
  std::multiset<int> ws(d->winding.begin(), d->winding.end());
  CHECK(ws == std::multiset<int>{0, 1, 1, 2});
  // lens face is right of A's lens arc (arc 0)
  CHECK(d->winding[d->arcs[0].right_face] == 2);
  CHECK(d->winding[d->arcs[2].right_face] == 2);
  CHECK(d->arcs[0].right_face == d->arcs[2].right_face);
}

TEST_CASE("limacon: windings 0,1,2 and quadrant pattern") {
  auto d = ti::limacon();
  REQUIRE(d->face_count() == 3);
  std::multiset<int> ws(d->winding.begin(), d->winding.end());
  CHECK(ws == std::multiset<int>{0, 1, 2});
  auto q = crossing_quadrants(*d, 0);
  CHECK(d->winding[d->corner_face(0, q.min_corner)] == 0);
  CHECK(d->winding[d->corner_face(0, q.max_corner)] == 2);
}

TEST_CASE("plus dart has the larger left winding") {
  for (auto d : {ti::lens(), ti::limacon()}) {
    for (int c = 0; c < d->crossing_count(); ++c) {
      int wp = d->winding[d->arcs[d->plus_arc(c)].left_face];
      int wm = d->winding[d->arcs[d->minus_arc(c)].left_face];
      CHECK(wp == wm + 1);
    }
  }
}

TEST_CASE("nested circles need nesting data") {
  DiagramInput in;
  in.crossings = 0;
  in.components = {{}, {}};
  CHECK_THROWS_AS(build_diagram(in), diagram_error);

  auto d = ti::nested_circles();
  REQUIRE(d->face_count() == 3);
  std::multiset<int> ws(d->winding.begin(), d->winding.end());
  CHECK(ws == std::multiset<int>{0, 1, 2});

  auto s = ti::side_by_side_circles();
  REQUIRE(s->face_count() == 3);
  std::multiset<int> ws2(s->winding.begin(), s->winding.end());
  CHECK(ws2 == std::multiset<int>{0, 1, 1});
}

TEST_CASE("dowker labels") {
  auto circle = ti::circle();
  auto lab = dowker_label(*circle, 0, 0);
  CHECK(lab.labels.empty());

  // Figure-eight from the outer-facing arc: hand trace gives (-1, +1).
  auto d = ti::figure_eight();
  REQUIRE(d->arcs[0].left_face == d->outer_face);
  auto l8 = dowker_label(*d, 0, 0);
  CHECK(l8.labels == std::vector<int>{-1, 1});
  // upper-lobe arc does not border the outer face on its left
  CHECK_THROWS_AS(dowker_label(*d, 0, 1), label_error);

  // lens component A from its outer arc: visits both crossings once
  auto lens = ti::lens();
  auto la = dowker_label(*lens, 0, 1);
  REQUIRE(la.labels.size() == 2);
  std::set<int> seen;
  for (int x : la.labels) seen.insert(std::abs(x));
  CHECK(seen == std::set<int>{1, 2});
}

TEST_CASE("casing codec round trip") {
  CHECK(casing_to_integer(casing_from_integer(0, 0)) == 0);
  CHECK(casing_from_integer(3, 5).to_string() == "101");
  CHECK(casing_from_string(3, "101").bits == 5);
  for (int n = 0; n <= 10; ++n)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
      CHECK(casing_to_integer(casing_from_string(n, casing_from_integer(n, v).to_string())) == v);
  CHECK_THROWS_AS(casing_from_string(2, "011"), diagram_error);
  CHECK_THROWS_AS(casing_from_integer(2, 4), diagram_error);
}

TEST_CASE("reverse orientation is an involution and flips windings") {
  auto d = ti::circle();
  auto r = reverse_orientation(*d, 0);
  int interior = r->arcs[0].left_face;
  CHECK(r->winding[interior] == -1);
  auto rr = reverse_orientation(*r, 0);
  CHECK(rr->source.components == d->source.components);
  CHECK(rr->source.outer == d->source.outer);

  auto lens = ti::lens();
  auto lrev = reverse_orientation(*lens, 1);  // reverse circle B
  std::multiset<int> ws(lrev->winding.begin(), lrev->winding.end());
  CHECK(ws == std::multiset<int>{-1, 0, 0, 1});  // lens face 2 -> 0
  auto back = reverse_orientation(*lrev, 1);
  CHECK(back->source.components == lens->source.components);

  for (auto dd : {ti::figure_eight(), ti::limacon()}) {
    auto rev = reverse_orientation(*dd, 0);
    auto fwd = reverse_orientation(*rev, 0);
    CHECK(fwd->source.components == dd->source.components);
    CHECK(fwd->source.outer == dd->source.outer);
  }
}

TEST_CASE("malformed inputs are rejected") {
  {
    DiagramInput in;  // crossing visited once
    in.crossings = 1;
    in.components = {{Pass{0, 1}}};
    CHECK_THROWS_AS(build_diagram(in), diagram_error);
  }
  {
    DiagramInput in;  // same slot pair used by both passes
    in.crossings = 1;
    in.components = {{Pass{0, 1}, Pass{0, 3}}};
    CHECK_THROWS_AS(build_diagram(in), diagram_error);
  }
}
