#pragma once

// Smart Edge Peeling as a finite automaton: one transition per time step
// from (state, 3x3 perception) to (state, action).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "sep/action.hpp"
#include "sep/grid.hpp"
#include "sep/perception.hpp"

namespace sep {

enum class Mode : std::uint8_t { Search, Boundary, QuickSearch };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Search: return "search";
    case Mode::Boundary: return "boundary";
    case Mode::QuickSearch: return "quick_search";
  }
  return "?";
}

/// The robot's entire memory. Apart from the pose, every field ranges over a
/// small fixed set, so the automaton has constant size.
struct RobotState {
  Cell position;
  Heading heading = Heading::N;
  Mode mode = Mode::Search;
  int bearing_counter = 0;  // 0, 1 or 2; 2 means the outer boundary was reached
  bool critical_cell_passed = true;
  bool last_turn_was_right = false;
  int quick_search_moves = 0;        // 0..3
  Heading seek_heading = Heading::N;  // heading when the spread was noticed

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

/// The strategy was driven into a situation its preconditions exclude.
class SepProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quick search needed more than three moves.
class QuickSearchError : public SepProtocolError {
 public:
  using SepProtocolError::SepProtocolError;
};

inline constexpr int kQuickSearchMaxMoves = 3;

namespace detail {

// Executes quarter turns on the working state and records them, keeping the
// bearing counter (search mode only) and the last-turn flag current.
struct Turner {
  RobotState& s;
  Action& a;

  void operator()(Turn t) {
    a.add_turn(t);
    s.heading = t == Turn::Right ? turn_right(s.heading) : turn_left(s.heading);
    s.last_turn_was_right = t == Turn::Right;
    if (s.mode == Mode::Search) {
      s.bearing_counter += t == Turn::Right ? 1 : -1;
      if (s.bearing_counter > 2) s.bearing_counter = 2;
      if (s.bearing_counter < 0)
        throw SepProtocolError("bearing counter dropped below zero in search mode");
    }
  }
};

inline void enter_boundary(RobotState& s) {
  s.mode = Mode::Boundary;
  s.critical_cell_passed = false;
}

[[noreturn]] inline void isolated_cell_error(const RobotState& s) {
  throw SepProtocolError("no contaminated 4-neighbour although the window is not empty at (" +
                         std::to_string(s.position.x) + "," + std::to_string(s.position.y) + ")");
}

// Boundary-mode turning: left-hand rule along the boundary.
inline void boundary_turns(RobotState& s, const Perception& p, Turner& turn) {
  if (p.left()) {
    turn(Turn::Left);
  } else if (p.front()) {
  } else if (p.right()) {
    turn(Turn::Right);
    s.critical_cell_passed = false;
  } else if (p.rear()) {
    turn(Turn::Right);
    turn(Turn::Right);
    s.critical_cell_passed = false;
  } else {
    isolated_cell_error(s);
  }
}

// Cleaning decision and the unconditional forward move.
inline void clean_and_move(RobotState& s, const Perception& p, Action& a) {
  if (is_critical(p)) s.critical_cell_passed = true;
  if (s.mode == Mode::Boundary) {
    if (s.last_turn_was_right && !s.critical_cell_passed) {
      a.clean = true;
    } else if (p.orthogonal_count() <= 1) {
      a.clean = true;  // tail cell
    }
  }
  a.move = true;
  a.step = offset(s.heading);
  s.position = s.position + a.step;
}

}  // namespace detail

/// Resets the status variables to their initial values (search mode).
inline void reset_status(RobotState& s) {
  s.last_turn_was_right = false;
  s.bearing_counter = 0;
  s.mode = Mode::Search;
  s.critical_cell_passed = true;
  s.quick_search_moves = 0;
}

/// One quick-search step, used after a spread caught the robot in boundary
/// mode. As soon as a clean 4-neighbour exists, the robot turns so it lies on
/// the left (preferring the side that was on its left when the spread was
/// noticed), marks a cleaning start if it stands at a right turn of the
/// boundary, and resumes boundary following within the same step. Otherwise
/// it moves along a fixed path relative to the heading at detection: left,
/// back, left; a clean diagonal cell short-cuts the path by stepping next to
/// it. Three moves always suffice on class-C contaminations.
inline std::pair<RobotState, Action> quick_search_step(RobotState s, const Perception& window) {
  if (s.mode != Mode::QuickSearch) throw std::logic_error("quick_search_step outside quick search");
  if (!window.center()) throw SepProtocolError("quick search on a clean cell");
  Action a;
  const Heading seek = s.seek_heading;
  const std::array<Heading, 4> pref = {turn_left(seek), reverse(seek), seek, turn_right(seek)};

  for (Heading d : pref) {
    if (window.at(d)) continue;
    // Found the boundary: clean cell `d` goes on the left.
    const Heading from = s.heading;
    s.heading = turn_right(d);
    s.mode = Mode::Boundary;
    s.quick_search_moves = 0;
    const Perception q = window.facing(s.heading);
    const bool at_right_turn = !q.rear();
    s.last_turn_was_right = at_right_turn;
    s.critical_cell_passed = !at_right_turn;
    Action block1;
    detail::Turner turn{s, block1};
    detail::boundary_turns(s, q, turn);
    append_turns(a, from, s.heading);
    detail::clean_and_move(s, window.facing(s.heading), a);
    return {s, a};
  }

  if (s.quick_search_moves >= kQuickSearchMaxMoves)
    throw QuickSearchError("quick search found no clean cell within three moves");

  Heading move_dir = s.quick_search_moves == 1 ? reverse(seek) : turn_left(seek);
  const std::array<std::pair<Heading, Heading>, 4> diagonals = {
      std::pair{turn_left(seek), reverse(seek)}, std::pair{turn_left(seek), seek},
      std::pair{turn_right(seek), reverse(seek)}, std::pair{turn_right(seek), seek}};
  for (auto [u, v] : diagonals) {
    if (!window.at(offset(u) + offset(v))) {
      move_dir = u;
      break;
    }
  }
  append_turns(a, s.heading, move_dir);
  if (a.turn_count > 0) s.last_turn_was_right = a.turns[a.turn_count - 1] == Turn::Right;
  s.heading = move_dir;
  ++s.quick_search_moves;
  a.move = true;
  a.step = offset(move_dir);
  s.position = s.position + a.step;
  return {s, a};
}

/// One transition of the automaton.
///
/// `spread_detected` is whether a clean cell of the remembered window became
/// contaminated since the previous step; `first_step` is true exactly once.
/// A spread noticed in boundary (or quick search) mode starts quick search;
/// otherwise spreads and the first step reset the status variables.
inline std::pair<RobotState, Action> sep_step(RobotState s, const Perception& window,
                                              bool spread_detected, bool first_step) {
  if (!window.center()) throw SepProtocolError("robot stands on a clean cell");
  if (first_step || (spread_detected && s.mode == Mode::Search)) {
    reset_status(s);
  } else if (spread_detected) {
    s.mode = Mode::QuickSearch;
    s.seek_heading = s.heading;
    s.quick_search_moves = 0;
  }

  Action a;
  if (window.neighbour_count() == 0) {
    a.clean = true;
    a.terminate = true;
    return {s, a};
  }
  if (s.mode == Mode::QuickSearch) return quick_search_step(s, window);

  const Perception p = window.facing(s.heading);
  detail::Turner turn{s, a};
  if (s.mode == Mode::Search && s.bearing_counter == 0) {
    if (p.front()) {
    } else if (p.right()) {
      turn(Turn::Right);
    } else if (p.rear()) {
      turn(Turn::Right);
      turn(Turn::Right);
      detail::enter_boundary(s);
    } else if (p.left()) {
      turn(Turn::Right);
      turn(Turn::Right);
      turn(Turn::Right);
      detail::enter_boundary(s);
    } else {
      detail::isolated_cell_error(s);
    }
  } else if (s.mode == Mode::Search && s.bearing_counter == 1) {
    if (p.left()) {
      turn(Turn::Left);
    } else if (p.front()) {
    } else if (p.right()) {
      turn(Turn::Right);
      detail::enter_boundary(s);
    } else if (p.rear()) {
      turn(Turn::Right);
      turn(Turn::Right);
      detail::enter_boundary(s);
    } else {
      detail::isolated_cell_error(s);
    }
  } else if (s.mode == Mode::Boundary) {
    detail::boundary_turns(s, p, turn);
  } else {
    throw SepProtocolError("search mode with bearing counter " + std::to_string(s.bearing_counter));
  }

  detail::clean_and_move(s, window.facing(s.heading), a);
  return {s, a};
}

/// True iff a cell clean in `prev` is contaminated in `cur` (same pose).
inline bool detect_spread(const Perception& prev, const Perception& cur) {
  return (~prev.absolute_bits() & cur.absolute_bits() & 0x1FF) != 0;
}

}  // namespace sep
