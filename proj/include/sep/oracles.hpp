#pragma once

// Brute-force reference implementations and bound calculators. These stay
// deliberately independent of the fast paths in geometry.hpp so the two can
// be checked against each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "sep/contamination.hpp"
#include "sep/perception.hpp"

namespace sep::oracle {

/// 4-connectivity by union-find over the explicit cell list.
inline bool bf_connected(const Contamination& c) {
  const std::vector<Cell> cells = c.cells();
  if (cells.size() <= 1) return true;
  std::map<Cell, std::size_t> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (Cell o : {Cell{1, 0}, Cell{0, 1}}) {
      auto it = index.find(cells[i] + o);
      if (it != index.end()) parent[find(i)] = find(it->second);
    }
  }
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < cells.size(); ++i)
    if (find(i) != root) return false;
  return true;
}

namespace detail {

// Is there a 4-path from a to b through contaminated window cells, optionally
// avoiding the centre? Window cells are offsets in [-1, 1]^2.
inline bool window_path(const std::vector<Cell>& contaminated, Cell a, Cell b, bool allow_center) {
  auto inside = [&](Cell x) {
    if (x == Cell{0, 0} && !allow_center) return false;
    return std::find(contaminated.begin(), contaminated.end(), x) != contaminated.end();
  };
  std::vector<Cell> frontier{a};
  std::vector<Cell> seen{a};
  while (!frontier.empty()) {
    Cell cur = frontier.back();
    frontier.pop_back();
    if (cur == b) return true;
    for (Cell o : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
      Cell n = cur + o;
      if (!inside(n) || std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
      seen.push_back(n);
      frontier.push_back(n);
    }
  }
  return false;
}

}  // namespace detail

/// Criticality by exhaustive pair search over the window of `cell`.
inline bool bf_critical(const Contamination& c, Cell cell) {
  if (!c.contains(cell)) throw std::invalid_argument("bf_critical: cell is clean");
  std::vector<Cell> contaminated;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if (c.contains({cell.x + dx, cell.y + dy})) contaminated.push_back({dx, dy});
  for (Cell a : contaminated) {
    for (Cell b : contaminated) {
      if (a == b || a == Cell{0, 0} || b == Cell{0, 0}) continue;
      if (detail::window_path(contaminated, a, b, true) &&
          !detail::window_path(contaminated, a, b, false))
        return true;
    }
  }
  return false;
}

/// Shortest closed walk through contaminated cells that visits every cell
/// owning an outer border edge (exact Held-Karp; at most 20 such cells).
/// `outer_clean` tells whether a clean cell belongs to the outer face.
template <typename OuterClean>
long bf_circumference(const Contamination& c, OuterClean&& outer_clean) {
  const std::vector<Cell> cells = c.cells();
  if (cells.empty()) throw std::invalid_argument("bf_circumference: empty contamination");
  std::vector<Cell> targets;
  for (Cell x : cells) {
    for (Cell o : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
      if (!c.contains(x + o) && outer_clean(x + o)) {
        targets.push_back(x);
        break;
      }
    }
  }
  const std::size_t k = targets.size();
  if (k > 20) throw std::invalid_argument("bf_circumference: too many boundary cells");
  if (k <= 1) return 0;
  // All-pairs BFS distances inside the contamination.
  std::map<Cell, std::size_t> id;
  for (std::size_t i = 0; i < cells.size(); ++i) id[cells[i]] = i;
  std::vector<std::vector<long>> dist(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<long> d(cells.size(), -1);
    std::queue<Cell> q;
    d[id[targets[i]]] = 0;
    q.push(targets[i]);
    while (!q.empty()) {
      Cell cur = q.front();
      q.pop();
      for (Cell o : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
        auto it = id.find(cur + o);
        if (it == id.end() || d[it->second] >= 0) continue;
        d[it->second] = d[id[cur]] + 1;
        q.push(cur + o);
      }
    }
    for (std::size_t j = 0; j < k; ++j) dist[i][j] = d[id[targets[j]]];
  }
  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  const std::size_t full = std::size_t{1} << k;
  std::vector<long> dp(full * k, kInf);
  dp[1 * k + 0] = 0;
  for (std::size_t mask = 1; mask < full; mask += 2) {
    for (std::size_t last = 0; last < k; ++last) {
      const long cur = dp[mask * k + last];
      if (cur >= kInf || !(mask & (std::size_t{1} << last))) continue;
      for (std::size_t nxt = 1; nxt < k; ++nxt) {
        if (mask & (std::size_t{1} << nxt)) continue;
        const std::size_t m2 = mask | (std::size_t{1} << nxt);
        dp[m2 * k + nxt] = std::min(dp[m2 * k + nxt], cur + dist[last][nxt]);
      }
    }
  }
  long best = kInf;
  for (std::size_t last = 0; last < k; ++last)
    best = std::min(best, dp[(full - 1) * k + last] + dist[last][0]);
  return best;
}

/// Smallest spread period for which SEP is guaranteed to succeed.
inline long sep_speed_threshold(long h, long w) {
  if (h < 1 || w < 1) throw std::invalid_argument("sep_speed_threshold: non-positive size");
  return 3 * (h + w) + 6;
}

/// Step bound for SEP, with half the hole side rounded up.
inline long sep_step_bound(long h, long w, long lambda, long d) {
  if (h < 1 || w < 1 || lambda < 0 || d < 1)
    throw std::invalid_argument("sep_step_bound: invalid argument");
  return ((lambda + 1) / 2 + h + w + 5) * d;
}

/// Spread period below which an h x h square cannot be cleaned.
inline double square_lower_bound(long h) {
  if (h < 1) throw std::invalid_argument("square_lower_bound: non-positive size");
  return 2.0 * std::sqrt(2.0) * static_cast<double>(h) - 4.0;
}

/// 8h^2 + 12 > (d + 4)^2, the integer form of 2 sqrt(2(h^2 - d) - 1) > d.
inline bool square_counting_inequality(long h, long d) {
  return 8 * h * h + 12 > (d + 4) * (d + 4);
}

/// Spread period below which the greedy baseline fails on a strip.
inline long greedy_lower_bound(long w, long h) { return 4 * (w + h) - 16; }

/// 16l^2 + 16l + 20 > (d + 4)^2 for a strip of l + 2 cells.
inline bool strip_counting_inequality(long l, long d) {
  return 16 * l * l + 16 * l + 20 > (d + 4) * (d + 4);
}

}  // namespace sep::oracle
