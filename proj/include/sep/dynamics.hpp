#pragma once

#include <cmath>
#include <stdexcept>

#include "sep/contamination.hpp"

namespace sep {

/// One spread: every contaminated cell infects its four neighbours.
inline Contamination spread(const Contamination& c) {
  if (c.empty()) return {};
  auto out = Contamination::with_storage(c.bounding_box().expanded(2));
  c.for_each([&](Cell x) {
    out.insert(x);
    for (Cell o : kOffsets4) out.insert(x + o);
  });
  return out;
}

/// Cells gained by the next spread.
inline std::size_t new_cell_count(const Contamination& c) { return spread(c).size() - c.size(); }

/// 2 * sqrt(2c - 1): fewest cells a spread of `cell_count` cells can add.
inline double isoperimetric_lower_bound(std::size_t cell_count) {
  if (cell_count == 0) throw std::invalid_argument("isoperimetric_lower_bound: zero cells");
  return 2.0 * std::sqrt(2.0 * static_cast<double>(cell_count) - 1.0);
}

}  // namespace sep
