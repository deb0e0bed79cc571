#pragma once

// Cell-level geometry of a contamination: holes, the outer boundary polygon,
// class-C validation, layers, ears, tails and the circumference formula.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sep/contamination.hpp"
#include "sep/grid.hpp"

namespace sep {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Dense scratch raster over a box, used by flood fills.
struct Raster {
  BoundingBox box;
  std::vector<std::uint8_t> v;

  explicit Raster(const BoundingBox& b)
      : box(b), v(static_cast<std::size_t>(b.width()) * b.height(), 0) {}

  std::size_t idx(Cell c) const {
    return static_cast<std::size_t>(c.y - box.min_y) * box.width() + (c.x - box.min_x);
  }
  std::uint8_t& operator[](Cell c) { return v[idx(c)]; }
  std::uint8_t operator[](Cell c) const { return v[idx(c)]; }
};

// Marks clean cells 8-reachable from outside the bounding box. Clean cells
// not reached are hole cells. Uses a 1-cell margin around the box.
inline Raster exterior_of(const Contamination& c) {
  const BoundingBox box = c.bounding_box().expanded(1);
  Raster ext(box);
  std::vector<Cell> stack{{box.min_x, box.min_y}};
  ext[stack.back()] = 1;
  while (!stack.empty()) {
    Cell cur = stack.back();
    stack.pop_back();
    for (Cell o : kOffsets8) {
      Cell n = cur + o;
      if (!box.contains(n) || ext[n] || c.contains(n)) continue;
      ext[n] = 1;
      stack.push_back(n);
    }
  }
  return ext;
}

}  // namespace detail

/// 4-connectivity of the contaminated set. The empty set counts as connected.
inline bool is_connected(const Contamination& c) {
  if (c.empty()) return true;
  detail::Raster seen(c.bounding_box());
  Cell first{};
  bool found = false;
  c.for_each([&](Cell x) {
    if (!found) {
      first = x;
      found = true;
    }
  });
  std::vector<Cell> stack{first};
  seen[first] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Cell cur = stack.back();
    stack.pop_back();
    for (Cell o : kOffsets4) {
      Cell n = cur + o;
      if (!c.contains(n) || seen[n]) continue;
      seen[n] = 1;
      ++reached;
      stack.push_back(n);
    }
  }
  return reached == c.size();
}

struct Hole {
  BoundingBox rect;
  int short_side() const { return std::min(rect.width(), rect.height()); }
  friend bool operator==(const Hole&, const Hole&) = default;
};

struct HoleScan {
  std::vector<Hole> holes;  // one entry per 8-connected clean enclosed region
  bool all_rectangular = true;
  std::size_t hole_cells = 0;
};

/// Finds enclosed clean regions. A region counts as rectangular when it fills
/// its own bounding rectangle exactly.
inline HoleScan scan_holes(const Contamination& c) {
  HoleScan scan;
  if (c.empty()) return scan;
  detail::Raster mark = detail::exterior_of(c);
  const BoundingBox& bb = c.bounding_box();
  for (int y = bb.min_y; y <= bb.max_y; ++y) {
    for (int x = bb.min_x; x <= bb.max_x; ++x) {
      Cell s{x, y};
      if (mark[s] || c.contains(s)) continue;
      // New region: flood with 8-connectivity.
      BoundingBox r{x, x, y, y};
      std::size_t n = 0;
      std::vector<Cell> stack{s};
      mark[s] = 2;
      while (!stack.empty()) {
        Cell cur = stack.back();
        stack.pop_back();
        ++n;
        r.min_x = std::min(r.min_x, cur.x);
        r.max_x = std::max(r.max_x, cur.x);
        r.min_y = std::min(r.min_y, cur.y);
        r.max_y = std::max(r.max_y, cur.y);
        for (Cell o : kOffsets8) {
          Cell nb = cur + o;
          if (mark[nb] || c.contains(nb)) continue;
          mark[nb] = 2;
          stack.push_back(nb);
        }
      }
      scan.hole_cells += n;
      if (n != static_cast<std::size_t>(r.width()) * r.height()) scan.all_rectangular = false;
      scan.holes.push_back({r});
    }
  }
  return scan;
}

inline std::vector<Hole> holes(const Contamination& c) { return scan_holes(c).holes; }

/// Largest short side over all holes; 0 without holes.
inline int max_hole_short_side(const Contamination& c) {
  int lambda = 0;
  for (const Hole& h : holes(c)) lambda = std::max(lambda, h.short_side());
  return lambda;
}

// ---------------------------------------------------------------------------
// Boundary polygon

enum class AtomKind : std::uint8_t { BorderEdge, LeftTurn, RightTurn };

/// One element of the boundary sequence. Edges carry the contaminated cell
/// they bound and their traversal direction; turns carry the lattice vertex
/// (as integer coordinates) they occur at and the direction after the turn.
struct Atom {
  AtomKind kind;
  Cell anchor;
  Heading dir;
};

struct GridPolygon {
  std::vector<Atom> atoms;  // cyclic, clockwise

  std::size_t length() const { return count(AtomKind::BorderEdge); }
  std::size_t count(AtomKind k) const {
    return static_cast<std::size_t>(
        std::count_if(atoms.begin(), atoms.end(), [k](const Atom& a) { return a.kind == k; }));
  }
};

namespace detail {

// The contaminated cell an outer edge starting at lattice vertex `v` with
// direction `d` would bound, and the exterior cell on its other side.
// Clockwise traversal keeps the contamination on the right.
inline std::pair<Cell, Cell> edge_cells(Cell v, Heading d) {
  switch (d) {
    case Heading::E: return {{v.x, v.y - 1}, {v.x, v.y}};
    case Heading::S: return {{v.x - 1, v.y - 1}, {v.x, v.y - 1}};
    case Heading::W: return {{v.x - 1, v.y}, {v.x - 1, v.y - 1}};
    case Heading::N: return {{v.x, v.y}, {v.x - 1, v.y}};
  }
  return {};
}

}  // namespace detail

/// Clockwise atom sequence of the outer boundary. Rejects disconnected input.
inline GridPolygon outer_polygon(const Contamination& c) {
  if (c.empty()) throw GeometryError("outer_polygon: empty contamination");
  if (!is_connected(c)) throw GeometryError("outer_polygon: contamination is disconnected");
  const detail::Raster ext = detail::exterior_of(c);
  const BoundingBox& bb = c.bounding_box();
  auto exterior = [&](Cell x) { return ext.box.contains(x) && ext[x] == 1; };
  auto is_edge = [&](Cell v, Heading d) {
    auto [in, out] = detail::edge_cells(v, d);
    return c.contains(in) && exterior(out);
  };

  std::size_t total_edges = 0;
  c.for_each([&](Cell x) {
    for (Cell o : kOffsets4)
      if (exterior(x + o)) ++total_edges;
  });

  // Start on the south edge of the westmost cell of the bottom row.
  Cell start_cell{bb.min_x, bb.min_y};
  while (!c.contains(start_cell)) ++start_cell.x;
  const Cell start_v{start_cell.x + 1, start_cell.y};
  const Heading start_d = Heading::W;

  GridPolygon poly;
  Cell v = start_v;
  Heading d = start_d;
  std::size_t edges = 0;
  do {
    auto [in, out] = detail::edge_cells(v, d);
    poly.atoms.push_back({AtomKind::BorderEdge, in, d});
    ++edges;
    v = v + offset(d);
    Heading next = d;
    bool found = false;
    for (Heading cand : {turn_right(d), d, turn_left(d)}) {
      if (is_edge(v, cand)) {
        next = cand;
        found = true;
        break;
      }
    }
    if (!found) throw GeometryError("outer_polygon: boundary trace broke off");
    if (next == turn_right(d)) poly.atoms.push_back({AtomKind::RightTurn, v, next});
    if (next == turn_left(d)) poly.atoms.push_back({AtomKind::LeftTurn, v, next});
    d = next;
    if (edges > total_edges) throw GeometryError("outer_polygon: boundary trace did not close");
  } while (!(v == start_v && d == start_d));
  if (edges != total_edges) throw GeometryError("outer_polygon: boundary is not a single cycle");
  return poly;
}

/// True when the clockwise turn sequence folds back on itself: some contiguous
/// stretch of the boundary turns left by 180 degrees or more on balance.
inline bool has_u_turn(const GridPolygon& poly) {
  std::vector<int> w;
  for (const Atom& a : poly.atoms) {
    if (a.kind == AtomKind::LeftTurn) w.push_back(1);
    if (a.kind == AtomKind::RightTurn) w.push_back(-1);
  }
  if (w.empty()) return false;
  // Max cyclic subarray sum = max(max linear, total - min linear).
  int total = 0, best = w[0], worst = w[0], run_max = 0, run_min = 0;
  for (int x : w) {
    total += x;
    run_max = std::max(run_max + x, x);
    run_min = std::min(run_min + x, x);
    best = std::max(best, run_max);
    worst = std::min(worst, run_min);
  }
  int cyclic = best;
  if (worst < total) cyclic = std::max(cyclic, total - worst);
  return cyclic >= 2;
}

/// Every row and every column of the filled shape (cells plus holes) is one
/// contiguous run.
inline bool is_orthogonally_convex(const Contamination& c) {
  if (c.empty()) return true;
  const detail::Raster ext = detail::exterior_of(c);
  const BoundingBox& bb = c.bounding_box();
  auto filled = [&](int x, int y) { return ext[Cell{x, y}] != 1; };
  for (int y = bb.min_y; y <= bb.max_y; ++y) {
    int runs = 0;
    bool prev = false;
    for (int x = bb.min_x; x <= bb.max_x; ++x) {
      bool f = filled(x, y);
      if (f && !prev) ++runs;
      prev = f;
    }
    if (runs != 1) return false;
  }
  for (int x = bb.min_x; x <= bb.max_x; ++x) {
    int runs = 0;
    bool prev = false;
    for (int y = bb.min_y; y <= bb.max_y; ++y) {
      bool f = filled(x, y);
      if (f && !prev) ++runs;
      prev = f;
    }
    if (runs != 1) return false;
  }
  return true;
}

struct ClassCReport {
  bool ok = false;
  std::string diagnostic;  // first violated condition, or "ok"/"empty"
  explicit operator bool() const { return ok; }
};

/// Membership test for class C. The empty contamination passes with
/// diagnostic "empty" (a fully cleaned episode stays valid).
inline ClassCReport validate_class_c(const Contamination& c) {
  if (c.empty()) return {true, "empty"};
  if (!is_connected(c)) return {false, "not connected"};
  HoleScan hs = scan_holes(c);
  if (!hs.all_rectangular) return {false, "hole is not an axis-aligned rectangle"};
  GridPolygon poly = outer_polygon(c);
  const auto rights = static_cast<long>(poly.count(AtomKind::RightTurn));
  const auto lefts = static_cast<long>(poly.count(AtomKind::LeftTurn));
  if (rights - lefts != 4) return {false, "outer boundary is not a simple polygon"};
  if (has_u_turn(poly)) return {false, "outer boundary contains a U-turn"};
  if (!is_orthogonally_convex(c))
    return {false, "outer boundary is not four monotonic chains"};
  return {true, "ok"};
}

// ---------------------------------------------------------------------------
// Layers, ears, tails

/// Ring index of `cell` inside `bb`; cells touching the box are layer 1.
inline int layer_of(Cell cell, const BoundingBox& bb) {
  if (!bb.contains(cell)) throw GeometryError("layer_of: cell outside bounding box");
  int d = std::min({cell.x - bb.min_x, bb.max_x - cell.x, cell.y - bb.min_y, bb.max_y - cell.y});
  return d + 1;
}

/// Number of the cell's four edges that separate it from a clean cell.
inline int border_edge_count(const Contamination& c, Cell cell) {
  int n = 0;
  for (Cell o : kOffsets4) n += c.contains(cell + o) ? 0 : 1;
  return n;
}

inline bool is_tail(const Contamination& c, Cell cell) {
  if (!c.contains(cell)) throw GeometryError("is_tail: cell is clean");
  return border_edge_count(c, cell) >= 3;
}

struct Ear {
  Heading side;             // which side of the bounding box it touches
  std::vector<Cell> cells;  // ordered along the side
};

/// One ear per side: the run of contaminated cells touching that side of the
/// bounding box. For class-C input each side carries exactly one run; if a
/// side has several (not class C), the first run in traversal order is used.
inline std::array<Ear, 4> ears(const Contamination& c) {
  if (c.empty()) throw GeometryError("ears: empty contamination");
  const BoundingBox& bb = c.bounding_box();
  std::array<Ear, 4> out;
  for (Heading side : kHeadings) {
    Ear ear{side, {}};
    const bool horizontal = side == Heading::N || side == Heading::S;
    const int fixed = side == Heading::N   ? bb.max_y
                      : side == Heading::S ? bb.min_y
                      : side == Heading::E ? bb.max_x
                                           : bb.min_x;
    const int lo = horizontal ? bb.min_x : bb.min_y;
    const int hi = horizontal ? bb.max_x : bb.max_y;
    for (int i = lo; i <= hi; ++i) {
      Cell x = horizontal ? Cell{i, fixed} : Cell{fixed, i};
      if (c.contains(x)) {
        ear.cells.push_back(x);
      } else if (!ear.cells.empty()) {
        break;
      }
    }
    out[static_cast<int>(side)] = std::move(ear);
  }
  return out;
}

/// Shortest closed boundary-touching walk length, 2w + 2h - 4. Only valid for
/// class C, so other input is rejected.
inline int circumference(const Contamination& c) {
  auto report = validate_class_c(c);
  if (!report || c.empty()) throw GeometryError("circumference: not class C (" + report.diagnostic + ")");
  return 2 * c.width() + 2 * c.height() - 4;
}

}  // namespace sep
