#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "sep/grid.hpp"

namespace sep {

enum class Turn : std::uint8_t { Left, Right };

/// Everything a robot does in one time step: quarter turns, an optional
/// clean of the current cell, and an optional move by `step`.
struct Action {
  std::array<Turn, 3> turns{};
  std::uint8_t turn_count = 0;
  bool clean = false;
  bool move = false;
  bool terminate = false;
  Cell step{0, 0};  // displacement when `move` is set

  void add_turn(Turn t) {
    if (turn_count == turns.size()) throw std::logic_error("Action: more than three turns");
    turns[turn_count++] = t;
  }

  Heading apply_turns(Heading h) const {
    for (int i = 0; i < turn_count; ++i)
      h = turns[i] == Turn::Right ? turn_right(h) : turn_left(h);
    return h;
  }

  std::string turn_string() const {
    std::string s;
    for (int i = 0; i < turn_count; ++i) s += turns[i] == Turn::Right ? 'R' : 'L';
    return s;
  }

  friend bool operator==(const Action& a, const Action& b) {
    return a.turn_string() == b.turn_string() && a.clean == b.clean && a.move == b.move &&
           a.terminate == b.terminate && a.step == b.step;
  }
};

/// Fewest quarter turns taking `from` to `to` (a reversal is two rights).
inline void append_turns(Action& a, Heading from, Heading to) {
  int diff = (static_cast<int>(to) - static_cast<int>(from) + 4) % 4;
  if (diff == 1) a.add_turn(Turn::Right);
  if (diff == 2) {
    a.add_turn(Turn::Right);
    a.add_turn(Turn::Right);
  }
  if (diff == 3) a.add_turn(Turn::Left);
}

}  // namespace sep
