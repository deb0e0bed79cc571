#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "sep/grid.hpp"

namespace sep {

/// A finite set of contaminated cells.
///
/// Stored as a dense byte grid over a storage window that is re-anchored
/// (with slack) whenever a cell outside it is inserted. The tight bounding
/// box and the cell count are maintained eagerly, so const access is free of
/// hidden mutation and instances can be shared across threads.
class Contamination {
 public:
  Contamination() = default;

  Contamination(std::initializer_list<Cell> cells) {
    for (Cell c : cells) insert(c);
  }

  explicit Contamination(std::span<const Cell> cells) {
    if (!cells.empty()) {
      BoundingBox bb{cells[0].x, cells[0].x, cells[0].y, cells[0].y};
      for (Cell c : cells) {
        bb.min_x = std::min(bb.min_x, c.x);
        bb.max_x = std::max(bb.max_x, c.x);
        bb.min_y = std::min(bb.min_y, c.y);
        bb.max_y = std::max(bb.max_y, c.y);
      }
      reserve(bb.expanded(1));
    }
    for (Cell c : cells) insert(c);
  }

  /// Empty contamination with storage pre-sized for `box`.
  static Contamination with_storage(const BoundingBox& box) {
    Contamination c;
    c.reserve(box);
    return c;
  }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Cell c) const {
    int ix = c.x - x0_;
    int iy = c.y - y0_;
    if (ix < 0 || iy < 0 || ix >= w_ || iy >= h_) return false;
    return bits_[static_cast<std::size_t>(iy) * w_ + ix] != 0;
  }

  /// Returns true if the cell was newly added.
  bool insert(Cell c) {
    if (!storage_contains(c)) grow_to(c);
    auto& b = bits_[index(c)];
    if (b) return false;
    b = 1;
    if (count_ == 0) {
      bb_ = {c.x, c.x, c.y, c.y};
    } else {
      bb_.min_x = std::min(bb_.min_x, c.x);
      bb_.max_x = std::max(bb_.max_x, c.x);
      bb_.min_y = std::min(bb_.min_y, c.y);
      bb_.max_y = std::max(bb_.max_y, c.y);
    }
    ++count_;
    return true;
  }

  /// Returns true if the cell was contaminated.
  bool erase(Cell c) {
    if (!contains(c)) return false;
    bits_[index(c)] = 0;
    --count_;
    if (count_ == 0) {
      bb_ = BoundingBox{};
    } else if (c.x == bb_.min_x || c.x == bb_.max_x || c.y == bb_.min_y || c.y == bb_.max_y) {
      recompute_box();
    }
    return true;
  }

  /// Tight bounding box. Throws on an empty contamination.
  const BoundingBox& bounding_box() const {
    if (count_ == 0) throw std::logic_error("bounding box of an empty contamination");
    return bb_;
  }

  int width() const { return bounding_box().width(); }
  int height() const { return bounding_box().height(); }

  /// Visits every contaminated cell, south to north, west to east.
  template <typename F>
  void for_each(F&& f) const {
    if (count_ == 0) return;
    for (int y = bb_.min_y; y <= bb_.max_y; ++y) {
      const std::uint8_t* row = &bits_[static_cast<std::size_t>(y - y0_) * w_];
      for (int x = bb_.min_x; x <= bb_.max_x; ++x) {
        if (row[x - x0_]) f(Cell{x, y});
      }
    }
  }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    out.reserve(count_);
    for_each([&](Cell c) { out.push_back(c); });
    return out;
  }

  /// Same set shifted by `by`.
  Contamination translated(Cell by) const {
    Contamination out;
    if (count_ == 0) return out;
    out.reserve({bb_.min_x + by.x, bb_.max_x + by.x, bb_.min_y + by.y, bb_.max_y + by.y});
    for_each([&](Cell c) { out.insert(c + by); });
    return out;
  }

  /// Same set shifted so the bounding box starts at (0, 0).
  Contamination normalized() const {
    if (count_ == 0) return {};
    return translated({-bb_.min_x, -bb_.min_y});
  }

  friend bool operator==(const Contamination& a, const Contamination& b) {
    if (a.count_ != b.count_) return false;
    if (a.count_ == 0) return true;
    if (!(a.bb_ == b.bb_)) return false;
    for (int y = a.bb_.min_y; y <= a.bb_.max_y; ++y)
      for (int x = a.bb_.min_x; x <= a.bb_.max_x; ++x)
        if (a.contains({x, y}) != b.contains({x, y})) return false;
    return true;
  }

  void reserve(const BoundingBox& box) {
    if (box.width() <= 0 || box.height() <= 0) return;
    BoundingBox target = box;
    if (w_ > 0) {
      target.min_x = std::min(target.min_x, x0_);
      target.min_y = std::min(target.min_y, y0_);
      target.max_x = std::max(target.max_x, x0_ + w_ - 1);
      target.max_y = std::max(target.max_y, y0_ + h_ - 1);
      if (target.min_x == x0_ && target.min_y == y0_ && target.width() == w_ &&
          target.height() == h_)
        return;
    }
    reanchor(target);
  }

 private:
  static constexpr int kSlack = 8;

  bool storage_contains(Cell c) const {
    return c.x >= x0_ && c.y >= y0_ && c.x < x0_ + w_ && c.y < y0_ + h_;
  }
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y - y0_) * w_ + (c.x - x0_);
  }

  void grow_to(Cell c) {
    BoundingBox target{c.x - kSlack, c.x + kSlack, c.y - kSlack, c.y + kSlack};
    if (w_ > 0) {
      target.min_x = std::min(target.min_x, x0_);
      target.min_y = std::min(target.min_y, y0_);
      target.max_x = std::max(target.max_x, x0_ + w_ - 1);
      target.max_y = std::max(target.max_y, y0_ + h_ - 1);
    }
    reanchor(target);
  }

  void reanchor(const BoundingBox& target) {
    std::vector<std::uint8_t> next(static_cast<std::size_t>(target.width()) * target.height(), 0);
    for_each([&](Cell c) {
      next[static_cast<std::size_t>(c.y - target.min_y) * target.width() + (c.x - target.min_x)] =
          1;
    });
    bits_ = std::move(next);
    x0_ = target.min_x;
    y0_ = target.min_y;
    w_ = target.width();
    h_ = target.height();
  }

  void recompute_box() {
    BoundingBox nb{bb_.max_x, bb_.min_x, bb_.max_y, bb_.min_y};
    for (int y = bb_.min_y; y <= bb_.max_y; ++y) {
      for (int x = bb_.min_x; x <= bb_.max_x; ++x) {
        if (!bits_[static_cast<std::size_t>(y - y0_) * w_ + (x - x0_)]) continue;
        nb.min_x = std::min(nb.min_x, x);
        nb.max_x = std::max(nb.max_x, x);
        nb.min_y = std::min(nb.min_y, y);
        nb.max_y = std::max(nb.max_y, y);
      }
    }
    bb_ = nb;
  }

  int x0_ = 0;
  int y0_ = 0;
  int w_ = 0;
  int h_ = 0;
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
  BoundingBox bb_{};
};

}  // namespace sep
