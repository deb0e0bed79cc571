#pragma once

// Trace files (JSON lines) and frame rendering.
//
// A trace file holds one JSON object per line. The first line has
// "type":"header", then one "type":"step" line per time step, then one
// "type":"outcome" line. Keys are written in sorted order, so equal traces
// give equal bytes.
//
// Text frames use the grid text format, with the robot drawn as ^ > v < for
// headings N E S W. Image frames are binary PPM (P6) with one pixel per cell
// and a fixed palette: clean 255,255,255; contaminated 178,34,34; robot
// 30,90,200.

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sep/contamination.hpp"
#include "sep/grid.hpp"
#include "sep/grid_text.hpp"
#include "sep/sim_engine.hpp"

namespace sep {

class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr int kTraceVersion = 1;

namespace detail {

using nlohmann::json;

inline json cell_json(Cell c) { return json::array({c.x, c.y}); }

inline Cell json_cell(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

inline Strategy strategy_from(const std::string& s) {
  if (s == "sep") return Strategy::Sep;
  if (s == "greedy") return Strategy::Greedy;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

inline Checks checks_from(const std::string& s) {
  if (s == "off") return Checks::Off;
  if (s == "cheap") return Checks::Cheap;
  if (s == "full") return Checks::Full;
  throw std::invalid_argument("unknown checks level '" + s + "'");
}

inline Outcome outcome_from(const std::string& s) {
  for (Outcome o : {Outcome::Cleaned, Outcome::Diverged, Outcome::StepCap,
                    Outcome::InvariantViolation})
    if (s == to_string(o)) return o;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

inline json header_json(const TraceHeader& h) {
  const SimConfig& c = h.config;
  return {{"type", "header"},
          {"format", h.format},
          {"version", h.version},
          {"instance_digest", h.instance_digest},
          {"config",
           {{"d", c.spread_period},
            {"max_steps", c.max_steps},
            {"strategy", to_string(c.strategy)},
            {"record_frames", c.record_frames},
            {"checks", to_string(c.checks)},
            {"seed", c.seed},
            {"divergence_phases", c.divergence_phases}}},
          {"lambda", h.lambda},
          {"h", h.h},
          {"w", h.w},
          {"start", cell_json(h.start)},
          {"initial_cells", h.initial_cells}};
}

inline TraceHeader json_header(const json& j) {
  TraceHeader h;
  h.format = j.at("format").get<std::string>();
  h.version = j.at("version").get<int>();
  if (h.format != "sep-trace") throw std::invalid_argument("not a sep-trace file");
  if (h.version != kTraceVersion)
    throw std::invalid_argument("unsupported trace version " + std::to_string(h.version));
  h.instance_digest = j.at("instance_digest").get<std::string>();
  const json& c = j.at("config");
  h.config.spread_period = c.at("d").get<int>();
  h.config.max_steps = c.at("max_steps").get<long>();
  h.config.strategy = strategy_from(c.at("strategy").get<std::string>());
  h.config.record_frames = c.at("record_frames").get<bool>();
  h.config.checks = checks_from(c.at("checks").get<std::string>());
  h.config.seed = c.at("seed").get<std::uint64_t>();
  h.config.divergence_phases = c.at("divergence_phases").get<int>();
  h.lambda = j.at("lambda").get<int>();
  h.h = j.at("h").get<int>();
  h.w = j.at("w").get<int>();
  h.start = json_cell(j.at("start"));
  h.initial_cells = j.at("initial_cells").get<std::size_t>();
  return h;
}

inline json step_json(const StepRecord& r) {
  json cleaned = json::array();
  for (Cell c : r.cleaned) cleaned.push_back(cell_json(c));
  return {{"type", "step"},
          {"t", r.t},
          {"spread", r.spread},
          {"detected", r.spread_detected},
          {"window", r.window},
          {"turns", r.action.turn_string()},
          {"clean", r.action.clean},
          {"move", r.action.move},
          {"step", cell_json(r.action.step)},
          {"terminate", r.action.terminate},
          {"cleaned", cleaned},
          {"pos", cell_json(r.position)},
          {"heading", std::string(1, heading_char(r.heading))},
          {"mode", r.mode},
          {"count", r.count}};
}

inline StepRecord json_step(const json& j) {
  StepRecord r;
  r.t = j.at("t").get<long>();
  r.spread = j.at("spread").get<bool>();
  r.spread_detected = j.at("detected").get<bool>();
  r.window = j.at("window").get<std::uint16_t>();
  for (char ch : j.at("turns").get<std::string>()) {
    if (ch != 'L' && ch != 'R') throw std::invalid_argument("bad turn character");
    r.action.add_turn(ch == 'R' ? Turn::Right : Turn::Left);
  }
  r.action.clean = j.at("clean").get<bool>();
  r.action.move = j.at("move").get<bool>();
  r.action.step = json_cell(j.at("step"));
  r.action.terminate = j.at("terminate").get<bool>();
  for (const json& c : j.at("cleaned")) r.cleaned.push_back(json_cell(c));
  r.position = json_cell(j.at("pos"));
  const std::string hd = j.at("heading").get<std::string>();
  if (hd.size() != 1) throw std::invalid_argument("bad heading");
  r.heading = heading_from_char(hd[0]);
  r.mode = j.at("mode").get<std::string>();
  r.count = j.at("count").get<std::size_t>();
  return r;
}

inline json outcome_json(const SimTrace& t) {
  return {{"type", "outcome"},
          {"outcome", to_string(t.outcome)},
          {"steps", t.steps_taken},
          {"spreads", t.spreads},
          {"cells_cleaned", t.cells_cleaned},
          {"final_count", t.final_count},
          {"violation", t.violation}};
}

}  // namespace detail

inline void write_trace(std::ostream& out, const SimTrace& trace) {
  out << detail::header_json(trace.header).dump() << '\n';
  for (const StepRecord& r : trace.steps) out << detail::step_json(r).dump() << '\n';
  out << detail::outcome_json(trace).dump() << '\n';
}

inline std::string trace_to_string(const SimTrace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

/// Reads what write_trace wrote. Episode statistics and final state are not
/// part of the file and come back default-initialised.
inline SimTrace read_trace(std::istream& in) {
  SimTrace trace;
  std::string line;
  std::size_t n = 0;
  bool have_header = false;
  bool have_outcome = false;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    if (have_outcome) throw TraceFormatError(n, "content after the outcome line");
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (!have_header) {
        if (type != "header") throw std::invalid_argument("first line must be the header");
        trace.header = detail::json_header(j);
        have_header = true;
      } else if (type == "step") {
        trace.steps.push_back(detail::json_step(j));
      } else if (type == "outcome") {
        trace.outcome = detail::outcome_from(j.at("outcome").get<std::string>());
        trace.steps_taken = j.at("steps").get<long>();
        trace.spreads = j.at("spreads").get<long>();
        trace.cells_cleaned = j.at("cells_cleaned").get<std::size_t>();
        trace.final_count = j.at("final_count").get<std::size_t>();
        trace.violation = j.at("violation").get<std::string>();
        have_outcome = true;
      } else {
        throw std::invalid_argument("unexpected record type '" + type + "'");
      }
    } catch (const TraceFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw TraceFormatError(n, e.what());
    }
  }
  if (!have_header) throw TraceFormatError(n, "missing header line");
  if (!have_outcome) throw TraceFormatError(n, "missing outcome line");
  return trace;
}

inline SimTrace trace_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_trace(is);
}

struct Pose {
  Cell position;
  Heading heading = Heading::N;
};

inline constexpr char robot_glyph(Heading h) {
  constexpr std::array<char, 4> glyphs = {'^', '>', 'v', '<'};
  return glyphs[static_cast<int>(h)];
}

/// Text frame over `box`, or over the contamination's bounding box (plus the
/// robot cell) when no box is given. An empty contamination with no box and
/// no robot renders as the empty string.
inline std::string render_frame(const Contamination& c, std::optional<Pose> robot = std::nullopt,
                                std::optional<BoundingBox> box = std::nullopt) {
  BoundingBox bb;
  if (box) {
    bb = *box;
  } else {
    if (!c.empty()) bb = c.bounding_box();
    if (robot) {
      const Cell p = robot->position;
      if (bb.width() <= 0) {
        bb = {p.x, p.x, p.y, p.y};
      } else {
        bb = {std::min(bb.min_x, p.x), std::max(bb.max_x, p.x), std::min(bb.min_y, p.y),
              std::max(bb.max_y, p.y)};
      }
    }
  }
  std::string out;
  for (int y = bb.max_y; y >= bb.min_y; --y) {
    for (int x = bb.min_x; x <= bb.max_x; ++x) {
      const Cell cell{x, y};
      if (robot && robot->position == cell)
        out += robot_glyph(robot->heading);
      else
        out += c.contains(cell) ? '#' : '.';
    }
    if (y != bb.min_y) out += '\n';
  }
  return out;
}

struct Rgb {
  std::uint8_t r, g, b;
};
inline constexpr Rgb kCleanColor{255, 255, 255};
inline constexpr Rgb kContaminatedColor{178, 34, 34};
inline constexpr Rgb kRobotColor{30, 90, 200};

/// Binary PPM, one pixel per cell, north row first.
inline std::string render_ppm(const Contamination& c, std::optional<Pose> robot,
                              const BoundingBox& box) {
  const int w = std::max(0, box.width());
  const int h = std::max(0, box.height());
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  for (int y = box.max_y; y >= box.min_y; --y) {
    for (int x = box.min_x; x <= box.max_x; ++x) {
      const Cell cell{x, y};
      const Rgb px = robot && robot->position == cell ? kRobotColor
                     : c.contains(cell)               ? kContaminatedColor
                                                      : kCleanColor;
      out += static_cast<char>(px.r);
      out += static_cast<char>(px.g);
      out += static_cast<char>(px.b);
    }
  }
  return out;
}

enum class FrameFormat { Text, Ppm };

/// Replays `trace` against `c0` and writes one frame per step into `dir` as
/// frame_000001.txt (or .ppm), .... Every frame covers the same box: the
/// initial bounding box grown by one cell per spread in the trace. Returns the
/// number of frames written.
inline std::size_t write_frames(const SimTrace& trace, const Contamination& c0,
                                const std::filesystem::path& dir, FrameFormat format) {
  std::filesystem::create_directories(dir);
  const BoundingBox box = c0.bounding_box().expanded(static_cast<int>(trace.spreads));
  std::size_t written = 0;
  auto emit = [&](const StepRecord& rec, const Contamination& c) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06ld.%s", rec.t,
                  format == FrameFormat::Text ? "txt" : "ppm");
    std::ofstream f(dir / name, std::ios::binary);
    const Pose pose{rec.position, rec.heading};
    if (format == FrameFormat::Text)
      f << render_frame(c, pose, box) << '\n';
    else
      f << render_ppm(c, pose, box);
    if (!f) throw std::runtime_error("cannot write frame " + (dir / name).string());
    ++written;
  };
  const ReplayResult r = replay(trace, c0, emit);
  if (!r)
    throw std::runtime_error("trace does not replay at step " +
                             std::to_string(r.first_divergent_step) + ": " + r.message);
  return written;
}

}  // namespace sep
