#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "sep/contamination.hpp"
#include "sep/grid.hpp"

namespace sep {

/// Window positions relative to the robot's heading.
enum class Rel : std::uint8_t {
  Front,
  FrontRight,
  Right,
  RearRight,
  Rear,
  RearLeft,
  Left,
  FrontLeft,
  Center,
};

/// The 3x3 occupancy window around the robot.
///
/// Stored in the absolute frame; the relative accessors reindex through the
/// heading, so rotating the robot never changes the stored bits.
class Perception {
 public:
  Perception() = default;
  Perception(std::uint16_t absolute_bits, Heading heading)
      : bits_(absolute_bits & 0x1FF), heading_(heading) {}

  static Perception sense(const Contamination& c, Cell at, Heading heading) {
    std::uint16_t bits = 0;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if (c.contains({at.x + dx, at.y + dy})) bits |= bit(dx, dy);
    return {bits, heading};
  }

  /// Window built from relative flags, indexed by `Rel`.
  static Perception from_relative(const std::array<bool, 9>& flags, Heading heading) {
    Perception p(0, heading);
    for (int i = 0; i < 9; ++i) {
      if (!flags[i]) continue;
      Cell o = p.rel_offset(static_cast<Rel>(i));
      p.bits_ |= bit(o.x, o.y);
    }
    return p;
  }

  Heading heading() const { return heading_; }
  std::uint16_t absolute_bits() const { return bits_; }
  Perception facing(Heading h) const { return {bits_, h}; }

  bool at(Cell offset_from_center) const {
    return (bits_ & bit(offset_from_center.x, offset_from_center.y)) != 0;
  }
  bool at(Heading dir) const { return at(offset(dir)); }
  bool operator[](Rel r) const { return at(rel_offset(r)); }

  bool center() const { return at(Cell{0, 0}); }
  bool front() const { return (*this)[Rel::Front]; }
  bool rear() const { return (*this)[Rel::Rear]; }
  bool left() const { return (*this)[Rel::Left]; }
  bool right() const { return (*this)[Rel::Right]; }

  /// Number of contaminated cells among the eight neighbours.
  int neighbour_count() const {
    int n = 0;
    for (Cell o : kOffsets8) n += at(o) ? 1 : 0;
    return n;
  }
  int orthogonal_count() const {
    int n = 0;
    for (Cell o : kOffsets4) n += at(o) ? 1 : 0;
    return n;
  }

  Cell rel_offset(Rel r) const {
    Cell f = offset(heading_);
    Cell rt = offset(turn_right(heading_));
    auto comb = [&](int a, int b) { return Cell{a * f.x + b * rt.x, a * f.y + b * rt.y}; };
    switch (r) {
      case Rel::Front: return comb(1, 0);
      case Rel::FrontRight: return comb(1, 1);
      case Rel::Right: return comb(0, 1);
      case Rel::RearRight: return comb(-1, 1);
      case Rel::Rear: return comb(-1, 0);
      case Rel::RearLeft: return comb(-1, -1);
      case Rel::Left: return comb(0, -1);
      case Rel::FrontLeft: return comb(1, -1);
      case Rel::Center: return comb(0, 0);
    }
    return {0, 0};
  }

  friend bool operator==(const Perception& a, const Perception& b) {
    return a.bits_ == b.bits_ && a.heading_ == b.heading_;
  }

  static constexpr std::uint16_t bit(int dx, int dy) {
    return static_cast<std::uint16_t>(1u << ((dy + 1) * 3 + (dx + 1)));
  }

 private:
  std::uint16_t bits_ = 0;
  Heading heading_ = Heading::N;
};

/// Local criticality of the window centre.
///
/// The centre is critical when its contaminated 4-neighbours fall into two or
/// more distinct components of the window once the centre is removed, i.e.
/// some pair of contaminated window cells is joined only through the centre.
/// Diagonal contact never connects.
inline bool is_critical(const Perception& p) {
  if (!p.center()) throw std::invalid_argument("is_critical: window centre is clean");
  // Ring of the eight neighbours in cyclic order; orthogonal cells sit at even
  // indices. Without the centre, window cells connect only along this ring.
  const auto& ring = kOffsets8;
  std::array<int, 8> component{};
  component.fill(-1);
  int next = 0;
  for (int i = 0; i < 8; ++i) {
    if (!p.at(ring[i]) || component[i] >= 0) continue;
    // Walk the ring both ways while cells stay contaminated and 4-adjacent.
    component[i] = next;
    for (int step : {1, 7}) {
      int j = i;
      while (true) {
        int k = (j + step) % 8;
        if (k == i || !p.at(ring[k]) || !adjacent4(ring[j], ring[k])) break;
        component[k] = next;
        j = k;
      }
    }
    ++next;
  }
  int seen = -1;
  for (int i = 0; i < 8; i += 2) {
    if (!p.at(ring[i])) continue;
    if (seen < 0) {
      seen = component[i];
    } else if (component[i] != seen) {
      return true;
    }
  }
  return false;
}

}  // namespace sep
