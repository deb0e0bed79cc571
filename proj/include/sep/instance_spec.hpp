#pragma once

// Compact instance descriptions used on the command line:
//
//   rect:HxW[,holes=N][,lambda=K][,seed=S]
//   random:HxW[,holes=N][,lambda=K][,seed=S]
//   plus:HxW[,holes=N][,lambda=K][,seed=S]
//   strip:l=L          (a single row of L + 2 cells)
//   diamond:k=K        (K spreads of a single cell)

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sep/generators.hpp"

namespace sep {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <typename Int>
Int parse_int(std::string_view s, std::string_view what) {
  Int v{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty())
    throw SpecError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto at = s.find(sep, pos);
    out.push_back(s.substr(pos, at == std::string_view::npos ? at : at - pos));
    if (at == std::string_view::npos) break;
    pos = at + 1;
  }
  return out;
}

}  // namespace detail

inline GenSpec parse_instance_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw SpecError("spec needs the form family:params");
  const std::string_view family = text.substr(0, colon);
  const auto parts = detail::split(text.substr(colon + 1), ',');

  GenSpec spec;
  auto key_value = [&](std::string_view part, std::string_view key) -> std::string_view {
    if (part.size() <= key.size() + 1 || part.substr(0, key.size()) != key || part[key.size()] != '=')
      throw SpecError("expected " + std::string(key) + "=VALUE, got '" + std::string(part) + "'");
    return part.substr(key.size() + 1);
  };

  if (family == "strip") {
    if (parts.size() != 1) throw SpecError("strip takes exactly l=L");
    const int l = detail::parse_int<int>(key_value(parts[0], "l"), "strip length");
    if (l < 1) throw SpecError("strip length must be at least 1");
    spec.family = ShapeFamily::Strip;
    spec.target_h = 1;
    spec.target_w = l + 2;
    return spec;
  }
  if (family == "diamond") {
    if (parts.size() != 1) throw SpecError("diamond takes exactly k=K");
    spec.family = ShapeFamily::Diamond;
    spec.spreads = detail::parse_int<int>(key_value(parts[0], "k"), "diamond spreads");
    if (spec.spreads < 0) throw SpecError("diamond spreads must be non-negative");
    return spec;
  }
  if (family == "rect")
    spec.family = ShapeFamily::Rectangle;
  else if (family == "random")
    spec.family = ShapeFamily::RandomClassC;
  else if (family == "plus")
    spec.family = ShapeFamily::Plus;
  else
    throw SpecError("unknown family '" + std::string(family) + "'");

  const auto dims = detail::split(parts[0], 'x');
  if (dims.size() != 2) throw SpecError("expected HxW, got '" + std::string(parts[0]) + "'");
  spec.target_h = detail::parse_int<int>(dims[0], "height");
  spec.target_w = detail::parse_int<int>(dims[1], "width");
  if (spec.target_h < 1 || spec.target_w < 1) throw SpecError("height and width must be positive");
  spec.max_hole_side = 1;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string_view p = parts[i];
    if (p.rfind("holes=", 0) == 0)
      spec.hole_count = detail::parse_int<int>(key_value(p, "holes"), "hole count");
    else if (p.rfind("lambda=", 0) == 0)
      spec.max_hole_side = detail::parse_int<int>(key_value(p, "lambda"), "lambda");
    else if (p.rfind("seed=", 0) == 0)
      spec.seed = detail::parse_int<std::uint64_t>(key_value(p, "seed"), "seed");
    else
      throw SpecError("unknown parameter '" + std::string(p) + "'");
  }
  if (spec.hole_count < 0) throw SpecError("hole count must be non-negative");
  if (spec.max_hole_side < 1) throw SpecError("lambda must be positive");
  return spec;
}

inline std::string to_string(const GenSpec& s) {
  switch (s.family) {
    case ShapeFamily::Strip: return "strip:l=" + std::to_string(s.target_w - 2);
    case ShapeFamily::Diamond: return "diamond:k=" + std::to_string(s.spreads);
    default: break;
  }
  const char* name = s.family == ShapeFamily::Rectangle ? "rect"
                     : s.family == ShapeFamily::Plus    ? "plus"
                                                        : "random";
  return std::string(name) + ":" + std::to_string(s.target_h) + "x" + std::to_string(s.target_w) +
         ",holes=" + std::to_string(s.hole_count) + ",lambda=" + std::to_string(s.max_hole_side) +
         ",seed=" + std::to_string(s.seed);
}

}  // namespace sep
