#pragma once

#include <string_view>

#include "sep/contamination.hpp"
#include "sep/generators.hpp"

namespace sep::test {

/// Cells from a picture in grid text style: north row first, '#' or 'R'
/// contaminated, anything else clean. Rows are separated by '\n'.
inline Contamination picture(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    rows.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  Contamination c;
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i)
    for (std::size_t x = 0; x < rows[i].size(); ++x)
      if (rows[i][x] == '#' || rows[i][x] == 'R') c.insert({static_cast<int>(x), n - 1 - i});
  return c;
}

inline Contamination rectangle(int w, int h) {
  Contamination c;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) c.insert({x, y});
  return c;
}

/// Random class-C instance; drops holes one at a time when they do not fit.
inline Instance random_instance(std::uint64_t seed, int h, int w, int holes, int max_side) {
  for (int k = holes; k >= 0; --k) {
    try {
      return generate({seed, h, w, k, max_side, ShapeFamily::RandomClassC, 0});
    } catch (const GenerationError&) {
    }
  }
  return generate({seed, h, w, 0, 1, ShapeFamily::RandomClassC, 0});
}

}  // namespace sep::test
