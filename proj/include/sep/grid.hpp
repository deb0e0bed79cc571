#pragma once

// Basic lattice vocabulary: cells, headings, bounding boxes.
// Convention: x grows eastward, y grows northward.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

namespace sep {

struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Cell, Cell) = default;
  // Row-major order, south to north, west to east.
  friend constexpr auto operator<=>(Cell a, Cell b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  constexpr Cell operator+(Cell o) const { return {x + o.x, y + o.y}; }
  constexpr Cell operator-(Cell o) const { return {x - o.x, y - o.y}; }
};

inline constexpr bool adjacent4(Cell a, Cell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1;
}

inline constexpr bool adjacent8(Cell a, Cell b) {
  return a != b && std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1;
}

enum class Heading : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline constexpr std::array<Heading, 4> kHeadings = {Heading::N, Heading::E, Heading::S,
                                                     Heading::W};

inline constexpr Heading turn_right(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 1) % 4);
}
inline constexpr Heading turn_left(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 3) % 4);
}
inline constexpr Heading reverse(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 2) % 4);
}

inline constexpr Cell offset(Heading h) {
  switch (h) {
    case Heading::N: return {0, 1};
    case Heading::E: return {1, 0};
    case Heading::S: return {0, -1};
    case Heading::W: return {-1, 0};
  }
  return {0, 0};
}

inline constexpr char heading_char(Heading h) {
  constexpr std::array<char, 4> names = {'N', 'E', 'S', 'W'};
  return names[static_cast<int>(h)];
}

inline Heading heading_from_char(char c) {
  switch (c) {
    case 'N': return Heading::N;
    case 'E': return Heading::E;
    case 'S': return Heading::S;
    case 'W': return Heading::W;
    default: throw std::invalid_argument(std::string("unknown heading '") + c + "'");
  }
}

inline constexpr std::array<Cell, 4> kOffsets4 = {Cell{0, 1}, Cell{1, 0}, Cell{0, -1},
                                                  Cell{-1, 0}};
inline constexpr std::array<Cell, 8> kOffsets8 = {Cell{0, 1},  Cell{1, 1},  Cell{1, 0},
                                                  Cell{1, -1}, Cell{0, -1}, Cell{-1, -1},
                                                  Cell{-1, 0}, Cell{-1, 1}};

struct BoundingBox {
  int min_x = 0;
  int max_x = -1;
  int min_y = 0;
  int max_y = -1;

  constexpr int width() const { return max_x - min_x + 1; }
  constexpr int height() const { return max_y - min_y + 1; }
  constexpr bool contains(Cell c) const {
    return c.x >= min_x && c.x <= max_x && c.y >= min_y && c.y <= max_y;
  }
  constexpr BoundingBox expanded(int by) const {
    return {min_x - by, max_x + by, min_y - by, max_y + by};
  }
  friend constexpr bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

}  // namespace sep

template <>
struct std::hash<sep::Cell> {
  std::size_t operator()(sep::Cell c) const noexcept {
    auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x));
    auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.y));
    return std::hash<std::uint64_t>{}((ux << 32) | uy);
  }
};
