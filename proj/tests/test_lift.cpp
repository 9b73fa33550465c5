#include <catch2/catch_amalgamated.hpp>

#include "support/instances.hpp"
#include "support/oracle.hpp"

using namespace terralift;

TEST_CASE("circle lifts with one sheet over the interior") {
  auto d = ti::circle();
  auto res = lift_cased_single(d, Casing(0, 0));
  REQUIRE(res.ok());
  const Terrain& t = *res.terrain;
  CHECK(t.heights == std::vector<int>{0});
  int inner = d->arcs[0].right_face;
  CHECK(t.stacks.stack[inner].size() == 1);
  CHECK(t.stacks.stack[d->outer_face].empty());
  CHECK(verify_terrain(*d, t.heights, t.casing).ok());
}

TEST_CASE("figure-eight is refused with NegativeWinding for every casing") {
  auto d = ti::figure_eight();
  for (std::uint64_t c = 0; c < 2; ++c) {
    auto res = lift_cased_single(d, Casing(1, c));
    REQUIRE_FALSE(res.ok());
    CHECK(res.refusal->kind == lift_errc::negative_winding);
  }
}

TEST_CASE("limacon is refused under both casings") {
  auto d = ti::limacon();
  for (std::uint64_t c = 0; c < 2; ++c) {
    auto res = lift_cased_single(d, Casing(1, c));
    CHECK_FALSE(res.ok());
    CHECK_FALSE(ti::brute_force_heights(*d, Casing(1, c)).feasible);
  }
}

TEST_CASE("lens: stacking casings accepted, alternating casing refused") {
  auto d = ti::lens();
  // bit 0: +strand at crossing 0 is circle A; bit 1: +strand at crossing 1 is B.
  Casing a_over(2, 0); a_over.set(0, true);   // A over at both crossings
  Casing b_over(2, 0); b_over.set(1, true);   // B over at both crossings
  Casing alt1(2, 0); alt1.set(0, true); alt1.set(1, true);
  Casing alt2(2, 0);

  auto ra = lift_cased_multi(d, a_over);
  REQUIRE(ra.ok());
  CHECK(ra.terrain->bases == std::vector<int>{0, 0});
  // A's sheet sits above B's over the lens face
  int lens_face = d->arcs[0].right_face;
  REQUIRE(ra.terrain->stacks.stack[lens_face].size() == 2);
  CHECK(verify_terrain(*d, ra.terrain->heights, a_over).ok());
  // A's lens arc carries height 1, B's height 0
  CHECK(ra.terrain->heights[0] == 1);
  CHECK(ra.terrain->heights[2] == 0);

  auto rb = lift_cased_multi(d, b_over);
  REQUIRE(rb.ok());
  CHECK(verify_terrain(*d, rb.terrain->heights, b_over).ok());

  for (const Casing& c : {alt1, alt2}) {
    auto r = lift_cased_multi(d, c);
    REQUIRE_FALSE(r.ok());
    CHECK(r.refusal->kind == lift_errc::negative_cycle);
    CHECK(r.refusal->cycle.size() == 2);
    CHECK_FALSE(ti::brute_force_heights(*d, c).feasible);
  }
}

TEST_CASE("nested circles accept the empty casing with bases (0,0)") {
  auto d = ti::nested_circles();
  auto r = lift_cased_multi(d, Casing(0, 0));
  REQUIRE(r.ok());
  CHECK(r.terrain->bases == std::vector<int>{0, 0});
  CHECK(verify_terrain(*d, r.terrain->heights, Casing(0, 0)).ok());
}

TEST_CASE("oracle exactness on small instances") {
  for (auto d : {ti::circle(), ti::figure_eight(), ti::lens(), ti::limacon(),
                 ti::nested_circles(), ti::side_by_side_circles()}) {
    const int n = d->crossing_count();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      Casing c(n, bits);
      auto fast = lift_cased_multi(d, c);
      auto brute = ti::brute_force_heights(*d, c);
      INFO("n=" << n << " casing=" << c.to_string());
      CHECK(fast.ok() == brute.feasible);
      if (fast.ok()) {
        CHECK(verify_terrain(*d, fast.terrain->heights, c).ok());
        // fast solution is the pointwise-minimal feasible height vector
        for (int a = 0; a < d->arc_count(); ++a)
          CHECK(fast.terrain->heights[a] <= brute.heights[a]);
      }
    }
  }
}

TEST_CASE("single-component path agrees with the general path") {
  for (auto d : {ti::circle(), ti::figure_eight(), ti::limacon()}) {
    const int n = d->crossing_count();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      Casing c(n, bits);
      auto s = lift_cased_single(d, c);
      auto m = lift_cased_multi(d, c);
      CHECK(s.ok() == m.ok());
      if (s.ok()) CHECK(s.terrain->heights == m.terrain->heights);
    }
  }
}

TEST_CASE("project_terrain round trips") {
  auto d = ti::lens();
  Casing a_over(2, 0); a_over.set(0, true);
  auto r = lift_cased_multi(d, a_over);
  REQUIRE(r.ok());
  auto [dd, cc] = project_terrain(*r.terrain);
  CHECK(dd == d);
  CHECK(cc == a_over);

  auto heights = r.terrain->heights;
  heights[0] = d->winding[d->arcs[0].left_face] + 1;
  auto rep = verify_terrain(*d, heights, a_over);
  CHECK(rep.err == verify_errc::height_out_of_range);
}

TEST_CASE("classify_surface") {
  auto circ = classify_surface(*ti::circle());
  REQUIRE(circ.ok());
  CHECK(circ.cls.euler == 1);
  CHECK(circ.cls.boundary == 1);
  CHECK(circ.cls.genus == 0);

  auto eight = classify_surface(*ti::figure_eight());
  CHECK(eight.err == classify_errc::negative_winding);

  auto lim = classify_surface(*ti::limacon());
  CHECK(lim.err == classify_errc::no_surface);

  // lens: chi = 2 (two stacked disks), refused by the connected-surface
  // genus formula even though the euler count itself is meaningful
  auto lens = classify_surface(*ti::lens());
  CHECK(lens.err == classify_errc::no_surface);
  CHECK(lens.cls.euler == 2);
  CHECK(lens.cls.boundary == 2);
}

TEST_CASE("complex euler characteristic matches classify on accepted terrains") {
  for (auto d : {ti::circle(), ti::lens(), ti::nested_circles()}) {
    const int n = d->crossing_count();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      auto r = lift_cased_multi(d, Casing(n, bits));
      if (!r.ok()) continue;
      auto cls = classify_surface(*d);
      CHECK(complex_euler_characteristic(*r.terrain) == cls.cls.euler);
    }
  }
}

TEST_CASE("monotone shift property: raising all bases breaks only upper bounds") {
  auto d = ti::lens();
  Casing a_over(2, 0); a_over.set(0, true);
  auto r = lift_cased_multi(d, a_over);
  REQUIRE(r.ok());
  auto shifted = r.terrain->heights;
  for (int& h : shifted) h += 1;
  auto rep = verify_terrain(*d, shifted, a_over);
  CHECK(rep.err == verify_errc::height_out_of_range);
}
