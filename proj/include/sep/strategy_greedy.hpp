#pragma once

#include <array>

#include "sep/action.hpp"
#include "sep/perception.hpp"

namespace sep {

// Tie-break among contaminated 8-neighbours: straight ahead first, then
// clockwise around the robot.
inline constexpr std::array<Rel, 8> kGreedyPriority = {
    Rel::Front, Rel::FrontRight, Rel::Right,    Rel::RearRight,
    Rel::Rear,  Rel::RearLeft,   Rel::Left,     Rel::FrontLeft};

/// Greedy baseline: clean the current cell if contaminated, step to a
/// contaminated 8-neighbour if one exists (diagonal steps cost one time step
/// like orthogonal ones), rest otherwise. Orthogonal steps turn the robot to
/// face the step; diagonal steps keep the heading.
inline Action greedy_step(Heading heading, const Perception& window) {
  const Perception p = window.facing(heading);
  Action a;
  a.clean = p.center();
  for (Rel r : kGreedyPriority) {
    if (!p[r]) continue;
    a.move = true;
    a.step = p.rel_offset(r);
    for (Heading h : kHeadings) {
      if (offset(h) == a.step) append_turns(a, heading, h);
    }
    break;
  }
  return a;
}

}  // namespace sep
