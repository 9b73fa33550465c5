#pragma once

// Hand-built diagrams used across the test suites.  Slot assignments were
// derived by drawing each curve and reading the dart angles counterclockwise;
// the expected face/winding structure is asserted in test_diagram.cpp.

#include <terralift/diagram.hpp>

namespace ti {

using namespace terralift;

// Simple closed curve, no crossings.  Clockwise when outer_left=true (the
// default designation puts the outer face left of the single loop arc).
inline DiagramPtr circle(bool clockwise = true) {
  DiagramInput in;
  in.crossings = 0;
  in.components = {{}};
  in.outer = std::make_pair(0, clockwise);
  return build_diagram(in);
}

// Figure-eight: one crossing, lobes of winding +1 and -1.
inline DiagramPtr figure_eight() {
  DiagramInput in;
  in.crossings = 1;
  in.components = {{Pass{0, 1}, Pass{0, 2}}};
  in.outer = std::make_pair(0, true);  // arc 0 = lower lobe, outer on its left
  return build_diagram(in);
}

// Two clockwise circles crossing twice (lens).  Components: A = 0, B = 1.
// Crossing 0 is the upper crossing, 1 the lower.  Arcs: 0 = A's lens arc,
// 1 = A's outer arc, 2 = B's lens arc, 3 = B's outer arc.
inline DiagramPtr lens() {
  DiagramInput in;
  in.crossings = 2;
  in.components = {{Pass{0, 1}, Pass{1, 0}}, {Pass{1, 3}, Pass{0, 2}}};
  in.outer = std::make_pair(1, true);
  return build_diagram(in);
}

// Clockwise limacon: big loop with a once-nested inner loop, windings 0,1,2.
// Arc 0 = inner loop, arc 1 = outer loop.
inline DiagramPtr limacon() {
  DiagramInput in;
  in.crossings = 1;
  in.components = {{Pass{0, 2}, Pass{0, 3}}};
  in.outer = std::make_pair(1, true);
  return build_diagram(in);
}

// Two disjoint nested clockwise circles. Component 0 is the outer circle.
inline DiagramPtr nested_circles() {
  DiagramInput in;
  in.crossings = 0;
  in.components = {{}, {}};
  NestingEntry outer_circle;
  outer_circle.component = 0;
  outer_circle.boundary_arc = 0;
  outer_circle.boundary_left = true;
  NestingEntry inner_circle;
  inner_circle.component = 1;
  inner_circle.boundary_arc = 1;
  inner_circle.boundary_left = true;
  inner_circle.in = std::make_pair(0, false);  // inside the outer circle
  in.nesting = {outer_circle, inner_circle};
  return build_diagram(in);
}

// Two disjoint clockwise circles side by side.
inline DiagramPtr side_by_side_circles() {
  DiagramInput in;
  in.crossings = 0;
  in.components = {{}, {}};
  NestingEntry a, b;
  a.component = 0; a.boundary_arc = 0; a.boundary_left = true;
  b.component = 1; b.boundary_arc = 1; b.boundary_left = true;
  in.nesting = {a, b};
  return build_diagram(in);
}

}  // namespace ti
