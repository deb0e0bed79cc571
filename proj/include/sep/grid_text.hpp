#pragma once

// Grid text format: one line per row, north row first. '#' contaminated,
// '.' clean, 'R' robot start (contaminated). Rows are separated by '\n'; a
// single trailing newline is accepted on input and never emitted.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sep/contamination.hpp"
#include "sep/generators.hpp"

namespace sep {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

inline Instance parse_instance(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) throw ParseError(1, 1, "empty grid");
  std::vector<std::string_view> rows;
  std::size_t pos = 0;
  while (true) {
    auto nl = text.find('\n', pos);
    rows.push_back(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  const std::size_t width = rows[0].size();
  const int n = static_cast<int>(rows.size());
  Instance inst;
  std::optional<Cell> start;
  for (int i = 0; i < n; ++i) {
    if (rows[i].size() != width || width == 0)
      throw ParseError(i + 1, static_cast<int>(std::min(rows[i].size(), width)) + 1,
                       "row length " + std::to_string(rows[i].size()) + " differs from " +
                           std::to_string(width));
    const int y = n - 1 - i;
    for (std::size_t x = 0; x < width; ++x) {
      const char ch = rows[i][x];
      const Cell c{static_cast<int>(x), y};
      switch (ch) {
        case '#': inst.cells.insert(c); break;
        case '.': break;
        case 'R':
          if (start) throw ParseError(i + 1, static_cast<int>(x) + 1, "more than one 'R'");
          start = c;
          inst.cells.insert(c);
          break;
        default:
          throw ParseError(i + 1, static_cast<int>(x) + 1,
                           std::string("unexpected character '") + ch + "'");
      }
    }
  }
  if (!start) throw ParseError(n, 1, "no 'R' start cell");
  inst.start = *start;
  return inst;
}

/// Rows span the contamination's bounding box.
inline std::string serialize_instance(const Contamination& c, Cell start) {
  if (c.empty()) throw std::invalid_argument("serialize_instance: empty contamination");
  if (!c.contains(start)) throw std::invalid_argument("serialize_instance: start cell is clean");
  const BoundingBox& bb = c.bounding_box();
  std::string out;
  out.reserve(static_cast<std::size_t>(bb.width() + 1) * bb.height());
  for (int y = bb.max_y; y >= bb.min_y; --y) {
    for (int x = bb.min_x; x <= bb.max_x; ++x) {
      const Cell cell{x, y};
      out += cell == start ? 'R' : (c.contains(cell) ? '#' : '.');
    }
    if (y != bb.min_y) out += '\n';
  }
  return out;
}

inline std::string serialize_instance(const Instance& inst) {
  return serialize_instance(inst.cells, inst.start);
}

/// FNV-1a 64 of the serialized instance, as 16 hex digits.
inline std::string instance_digest(const Contamination& c, Cell start) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serialize_instance(c, start)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sep
