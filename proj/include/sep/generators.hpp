#pragma once

// Seeded construction of test contaminations.
//
// random_class_c draws four monotone staircases between the extreme sides of
// the target box (each row is one interval [west(y), east(y)], with west(y)
// valley-shaped and east(y) peak-shaped), fills the interior, then carves
// rectangular holes whose 1-cell surrounding ring is fully contaminated. The
// distribution is defined by this construction; it is not uniform over
// class C.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sep/contamination.hpp"
#include "sep/dynamics.hpp"
#include "sep/geometry.hpp"
#include "sep/rng.hpp"

namespace sep {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ShapeFamily { RandomClassC, Rectangle, Diamond, Strip, Plus };

inline std::string to_string(ShapeFamily f) {
  switch (f) {
    case ShapeFamily::RandomClassC: return "random_class_c";
    case ShapeFamily::Rectangle: return "rectangle";
    case ShapeFamily::Diamond: return "diamond";
    case ShapeFamily::Strip: return "strip";
    case ShapeFamily::Plus: return "plus";
  }
  return "?";
}

struct GenSpec {
  std::uint64_t seed = 0;
  int target_h = 1;
  int target_w = 1;
  int hole_count = 0;
  int max_hole_side = 1;
  ShapeFamily family = ShapeFamily::RandomClassC;
  int spreads = 0;  // diamond only: number of spreads applied to one cell
};

struct Instance {
  Contamination cells;
  Cell start;
};

namespace detail {

// Valley-shaped offset profile: zero on rows [a, b], growing away from them.
inline std::vector<int> staircase_profile(Rng& rng, int rows, int max_step) {
  std::vector<int> prof(rows, 0);
  int a = rng.between(0, rows - 1);
  int b = rng.between(0, rows - 1);
  if (a > b) std::swap(a, b);
  auto step = [&] { return (max_step == 0 || rng.chance(1, 2)) ? 0 : rng.between(1, max_step); };
  for (int y = a - 1; y >= 0; --y) prof[y] = prof[y + 1] + step();
  for (int y = b + 1; y < rows; ++y) prof[y] = prof[y - 1] + step();
  return prof;
}

inline Contamination random_outline(Rng& rng, int h, int w) {
  int max_step = std::max(1, w / 4);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 0 && attempt % 16 == 0) max_step = std::max(0, max_step - 1);
    auto west = staircase_profile(rng, h, max_step);
    auto east_off = staircase_profile(rng, h, max_step);
    std::vector<int> east(h);
    for (int y = 0; y < h; ++y) east[y] = w - 1 - east_off[y];
    bool ok = true;
    for (int y = 0; y < h && ok; ++y) {
      if (west[y] > east[y]) ok = false;
      if (y + 1 < h && std::max(west[y], west[y + 1]) > std::min(east[y], east[y + 1])) ok = false;
    }
    if (!ok) continue;
    auto c = Contamination::with_storage({0, w - 1, 0, h - 1});
    for (int y = 0; y < h; ++y)
      for (int x = west[y]; x <= east[y]; ++x) c.insert({x, y});
    return c;
  }
}

inline bool ring_intact(const Contamination& c, const BoundingBox& rect) {
  for (int y = rect.min_y - 1; y <= rect.max_y + 1; ++y)
    for (int x = rect.min_x - 1; x <= rect.max_x + 1; ++x)
      if (!c.contains({x, y})) return false;
  return true;
}

inline void carve_holes(Rng& rng, Contamination& c, int count, int max_side) {
  const int h = c.height();
  const int w = c.width();
  for (int i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 400 && !placed; ++attempt) {
      int s = rng.between(1, max_side);
      int l = rng.between(s, std::max(s, 2 * max_side));
      int hw = s, hh = l;
      if (rng.chance(1, 2)) std::swap(hw, hh);
      if (hw > w - 2 || hh > h - 2) continue;
      int x = rng.between(1, w - 1 - hw);
      int y = rng.between(1, h - 1 - hh);
      BoundingBox rect{x, x + hw - 1, y, y + hh - 1};
      if (!ring_intact(c, rect)) continue;
      for (int yy = rect.min_y; yy <= rect.max_y; ++yy)
        for (int xx = rect.min_x; xx <= rect.max_x; ++xx) c.erase({xx, yy});
      placed = true;
    }
    if (!placed)
      throw GenerationError("cannot place hole " + std::to_string(i + 1) + " of " +
                            std::to_string(count) + " in a " + std::to_string(h) + "x" +
                            std::to_string(w) + " instance");
  }
}

inline Cell random_cell(Rng& rng, const Contamination& c) {
  auto all = c.cells();
  return all[rng.below(all.size())];
}

}  // namespace detail

/// Builds the instance described by `spec`. Identical specs give identical
/// output on every platform.
inline Instance generate(const GenSpec& spec) {
  if (spec.target_h < 1 || spec.target_w < 1) throw GenerationError("target size must be positive");
  if (spec.hole_count < 0) throw GenerationError("hole_count must be non-negative");
  if (spec.hole_count > 0 && spec.max_hole_side < 1)
    throw GenerationError("max_hole_side must be positive");
  Rng rng(spec.seed);
  const int h = spec.target_h;
  const int w = spec.target_w;
  Instance out;
  switch (spec.family) {
    case ShapeFamily::Rectangle: {
      out.cells = Contamination::with_storage({0, w - 1, 0, h - 1});
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.cells.insert({x, y});
      detail::carve_holes(rng, out.cells, spec.hole_count, spec.max_hole_side);
      out.start = {w / 2, h / 2};
      if (!out.cells.contains(out.start)) out.start = {0, 0};
      return out;
    }
    case ShapeFamily::Strip: {
      if (h != 1) throw GenerationError("strip instances have height 1");
      if (w < 3) throw GenerationError("strip needs width >= 3");
      for (int x = 0; x < w; ++x) out.cells.insert({x, 0});
      out.start = {1, 0};  // exactly one cell west of the start
      return out;
    }
    case ShapeFamily::Diamond: {
      if (spec.spreads < 0) throw GenerationError("diamond spreads must be non-negative");
      Contamination c{Cell{0, 0}};
      for (int k = 0; k < spec.spreads; ++k) c = spread(c);
      out.cells = c.translated({spec.spreads, spec.spreads});
      out.start = {spec.spreads, spec.spreads};
      return out;
    }
    case ShapeFamily::Plus: {
      const int t = std::max(1, std::min(h, w) / 3);
      const int x0 = (w - t) / 2;
      const int y0 = (h - t) / 2;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
          if ((x >= x0 && x < x0 + t) || (y >= y0 && y < y0 + t)) out.cells.insert({x, y});
      detail::carve_holes(rng, out.cells, spec.hole_count, spec.max_hole_side);
      out.start = {x0, y0};
      if (!out.cells.contains(out.start)) out.start = detail::random_cell(rng, out.cells);
      return out;
    }
    case ShapeFamily::RandomClassC: {
      out.cells = detail::random_outline(rng, h, w);
      detail::carve_holes(rng, out.cells, spec.hole_count, spec.max_hole_side);
      out.start = detail::random_cell(rng, out.cells);
      auto report = validate_class_c(out.cells);
      if (!report) throw GenerationError("generated instance failed validation: " + report.diagnostic);
      return out;
    }
  }
  throw GenerationError("unknown shape family");
}

/// Every class-C contamination whose bounding box fits in max_h x max_w and
/// with at most `max_holes` holes, each exactly once, anchored at (0, 0).
inline std::vector<Contamination> enumerate_small_class_c(int max_h, int max_w, int max_holes) {
  if (max_h < 1 || max_w < 1) throw std::invalid_argument("enumerate_small_class_c: empty bounds");
  if (max_h * max_w > 16)
    throw std::invalid_argument("enumerate_small_class_c: bounds exceed 16 cells");
  std::vector<Contamination> out;
  for (int h = 1; h <= max_h; ++h) {
    for (int w = 1; w <= max_w; ++w) {
      const int n = h * w;
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Contamination c = Contamination::with_storage({0, w - 1, 0, h - 1});
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) c.insert({i % w, i / w});
        const BoundingBox& bb = c.bounding_box();
        if (bb.width() != w || bb.height() != h || bb.min_x != 0 || bb.min_y != 0) continue;
        if (!validate_class_c(c)) continue;
        if (static_cast<int>(holes(c).size()) > max_holes) continue;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace sep
