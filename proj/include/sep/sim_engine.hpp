#pragma once

// Time-stepped episode loop. At step t (t = 1, 2, ...) a spread fires first
// when t is a multiple of the spread period d, then the strategy senses its
// window and executes one full action.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sep/action.hpp"
#include "sep/contamination.hpp"
#include "sep/dynamics.hpp"
#include "sep/geometry.hpp"
#include "sep/grid_text.hpp"
#include "sep/perception.hpp"
#include "sep/strategy_greedy.hpp"
#include "sep/strategy_sep.hpp"

namespace sep {

enum class Strategy { Sep, Greedy };
enum class Checks { Off, Cheap, Full };
enum class Outcome { Cleaned, Diverged, StepCap, InvariantViolation };

inline const char* to_string(Strategy s) { return s == Strategy::Sep ? "sep" : "greedy"; }
inline const char* to_string(Checks c) {
  switch (c) {
    case Checks::Off: return "off";
    case Checks::Cheap: return "cheap";
    case Checks::Full: return "full";
  }
  return "?";
}
inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Cleaned: return "cleaned";
    case Outcome::Diverged: return "diverged";
    case Outcome::StepCap: return "step_cap";
    case Outcome::InvariantViolation: return "invariant_violation";
  }
  return "?";
}

/// Process exit code matching an outcome.
inline int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Cleaned: return 0;
    case Outcome::Diverged: return 2;
    case Outcome::StepCap: return 3;
    case Outcome::InvariantViolation: return 4;
  }
  return 1;
}

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SimConfig {
  int spread_period = 12;  // d
  long max_steps = 1'000'000;
  Strategy strategy = Strategy::Sep;
  bool record_frames = false;
  Checks checks = Checks::Off;
  std::uint64_t seed = 0;     // echoed into the trace header
  int divergence_phases = 3;  // consecutive increasing phases; 0 disables
};

struct StepRecord {
  long t = 0;
  bool spread = false;          // a spread fired at the start of this step
  bool spread_detected = false;
  std::uint16_t window = 0;     // absolute window bits the strategy saw
  Action action;
  std::vector<Cell> cleaned;
  Cell position;                // pose after the step
  Heading heading = Heading::N;
  std::string mode;             // SEP mode after the step, or "greedy"
  std::size_t count = 0;        // contaminated cells after the step

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct TraceHeader {
  std::string format = "sep-trace";
  int version = 1;
  std::string instance_digest;
  SimConfig config;
  int lambda = 0;
  int h = 0;
  int w = 0;
  Cell start;
  std::size_t initial_cells = 0;
};

/// Per-spread snapshot, taken just before the spread fires.
struct SpreadEvent {
  long t = 0;
  std::string mode;  // robot mode at the moment of the spread
  std::size_t count = 0;
  int w = 0;
  int h = 0;
};

struct EpisodeStats {
  long search_steps = -1;  // moves made before the first switch to boundary mode
  int max_quick_search_moves = 0;
  long quick_search_entries = 0;
  long disconnections = 0;
  long first_disconnection_step = -1;
  long class_c_violations = 0;
  long hole_increases = 0;
  long critical_cleans = 0;
  std::vector<SpreadEvent> spreads;
};

struct SimTrace {
  TraceHeader header;
  std::vector<StepRecord> steps;
  Outcome outcome = Outcome::StepCap;
  long steps_taken = 0;
  long spreads = 0;
  std::size_t cells_cleaned = 0;
  std::size_t final_count = 0;
  std::string violation;  // first invariant violation, if any
  EpisodeStats stats;
  Contamination final_cells;
  RobotState final_robot;  // SEP only
};

/// True when the last `phases` phase-end counts each exceed the one before.
inline bool divergence_detector(const std::vector<std::size_t>& phase_end_counts, int phases = 3) {
  if (phases <= 0) return false;
  const auto n = phase_end_counts.size();
  if (n < static_cast<std::size_t>(phases) + 1) return false;
  for (std::size_t i = n - phases; i < n; ++i)
    if (phase_end_counts[i] <= phase_end_counts[i - 1]) return false;
  return true;
}

inline void validate_config(const SimConfig& cfg) {
  if (cfg.spread_period <= 1) throw ConfigError("spread period d must be greater than 1");
  if (cfg.max_steps <= 0) throw ConfigError("max_steps must be positive");
  if (cfg.divergence_phases < 0) throw ConfigError("divergence_phases must be non-negative");
}

inline TraceHeader make_header(const Contamination& c0, Cell start, const SimConfig& cfg) {
  TraceHeader hdr;
  hdr.instance_digest = instance_digest(c0, start);
  hdr.config = cfg;
  hdr.lambda = max_hole_short_side(c0);
  hdr.h = c0.height();
  hdr.w = c0.width();
  hdr.start = start;
  hdr.initial_cells = c0.size();
  return hdr;
}

inline SimTrace run_episode(const Contamination& c0, Cell start, const SimConfig& cfg) {
  validate_config(cfg);
  if (!c0.contains(start)) throw ConfigError("start cell is not contaminated");

  SimTrace trace;
  trace.header = make_header(c0, start, cfg);
  EpisodeStats& st = trace.stats;
  const bool sep = cfg.strategy == Strategy::Sep;

  Contamination c = c0;
  RobotState robot;
  robot.position = start;
  Cell pos = start;
  Heading heading = Heading::N;
  std::optional<Perception> memory;
  std::vector<std::size_t> phase_end_counts;
  std::optional<Outcome> outcome;
  int quick_run = 0;
  bool connected = true;

  auto violate = [&](const std::string& what, long t) {
    if (trace.violation.empty()) trace.violation = "step " + std::to_string(t) + ": " + what;
    if (sep) outcome = Outcome::InvariantViolation;
  };
  auto check_after_change = [&](long t, const char* what) {
    if (cfg.checks != Checks::Full) return;
    const bool now_connected = is_connected(c);
    if (!now_connected && connected) {
      ++st.disconnections;
      if (st.first_disconnection_step < 0) st.first_disconnection_step = t;
      violate(std::string("contamination disconnected after ") + what, t);
    }
    connected = now_connected;
    if (sep) {
      auto report = validate_class_c(c);
      if (!report) {
        ++st.class_c_violations;
        violate(std::string("not class C after ") + what + ": " + report.diagnostic, t);
      }
    }
  };

  for (long t = 1; t <= cfg.max_steps && !outcome; ++t) {
    StepRecord rec;
    rec.t = t;
    if (t % cfg.spread_period == 0) {
      phase_end_counts.push_back(c.size());
      SpreadEvent ev{t, sep ? mode_name(robot.mode) : "greedy", c.size(), 0, 0};
      if (!c.empty()) {
        ev.w = c.width();
        ev.h = c.height();
      }
      st.spreads.push_back(ev);
      const std::size_t holes_before = cfg.checks == Checks::Full ? holes(c).size() : 0;
      c = spread(c);
      ++trace.spreads;
      rec.spread = true;
      if (cfg.checks == Checks::Full && holes(c).size() > holes_before) {
        ++st.hole_increases;
        violate("hole count increased at a spread", t);
      }
      check_after_change(t, "spread");
      if (divergence_detector(phase_end_counts, cfg.divergence_phases)) {
        outcome = Outcome::Diverged;
        rec.position = pos;
        rec.heading = heading;
        rec.mode = sep ? mode_name(robot.mode) : "greedy";
        rec.count = c.size();
        trace.steps.push_back(std::move(rec));
        trace.steps_taken = t;
        break;
      }
      if (outcome) break;
    }

    const Perception window = Perception::sense(c, pos, heading);
    rec.window = window.absolute_bits();
    rec.spread_detected = memory && detect_spread(*memory, window);

    Action action;
    if (sep) {
      try {
        auto [next, act] = sep_step(robot, window, rec.spread_detected, t == 1);
        robot = next;
        action = act;
      } catch (const SepProtocolError& e) {
        violate(e.what(), t);
        trace.steps_taken = t;
        break;
      }
    } else {
      action = greedy_step(heading, window);
    }
    rec.action = action;

    heading = action.apply_turns(heading);
    if (action.clean && c.contains(pos)) {
      if (cfg.checks != Checks::Off && sep && is_critical(window)) {
        ++st.critical_cleans;
        violate("cleaned a critical cell", t);
      }
      c.erase(pos);
      rec.cleaned.push_back(pos);
      ++trace.cells_cleaned;
      check_after_change(t, "clean");
    }
    if (action.move) {
      const Cell target = pos + action.step;
      if (sep && !c.contains(target)) violate("moved onto a clean cell", t);
      pos = target;
    }
    if (sep && (robot.position != pos || robot.heading != heading))
      violate("strategy pose disagrees with executed pose", t);

    memory = Perception::sense(c, pos, heading);

    if (sep) {
      if (robot.mode == Mode::Boundary && st.search_steps < 0) st.search_steps = t - 1;
      if (robot.mode == Mode::QuickSearch) {
        if (quick_run == 0) ++st.quick_search_entries;
        ++quick_run;
        st.max_quick_search_moves = std::max(st.max_quick_search_moves, quick_run);
      } else {
        quick_run = 0;
      }
    }

    rec.position = pos;
    rec.heading = heading;
    rec.mode = sep ? mode_name(robot.mode) : "greedy";
    rec.count = c.size();
    trace.steps.push_back(std::move(rec));
    trace.steps_taken = t;

    if (action.terminate) {
      if (c.empty()) {
        outcome = Outcome::Cleaned;
      } else {
        violate("terminated with " + std::to_string(c.size()) + " cells left", t);
        outcome = Outcome::InvariantViolation;
      }
    } else if (!sep && c.empty()) {
      outcome = Outcome::Cleaned;
    }
  }

  if (!trace.violation.empty() && sep) outcome = Outcome::InvariantViolation;
  trace.outcome = outcome.value_or(Outcome::StepCap);
  trace.final_count = c.size();
  trace.final_cells = std::move(c);
  trace.final_robot = robot;
  return trace;
}

struct ReplayResult {
  bool ok = true;
  long first_divergent_step = -1;
  std::string message;
  explicit operator bool() const { return ok; }
};

using ReplayObserver = std::function<void(const StepRecord&, const Contamination&)>;

/// Re-executes the recorded actions against `c0` and confirms every recorded
/// spread flag, cleaned cell, pose and count. `observer`, if set, sees the
/// contamination after each verified step.
inline ReplayResult replay(const SimTrace& trace, const Contamination& c0,
                           const ReplayObserver& observer = {}) {
  auto fail = [](long t, std::string msg) { return ReplayResult{false, t, std::move(msg)}; };
  const TraceHeader& hdr = trace.header;
  if (!c0.contains(hdr.start)) return fail(0, "start cell is clean in the instance");
  if (instance_digest(c0, hdr.start) != hdr.instance_digest)
    return fail(0, "instance digest does not match the trace header");
  const int d = hdr.config.spread_period;
  if (d <= 1) return fail(0, "invalid spread period in header");

  Contamination c = c0;
  Cell pos = hdr.start;
  Heading heading = Heading::N;
  long expected_t = 1;
  for (const StepRecord& rec : trace.steps) {
    if (rec.t != expected_t) return fail(rec.t, "non-consecutive step index");
    ++expected_t;
    const bool spread_now = rec.t % d == 0;
    if (spread_now != rec.spread) return fail(rec.t, "spread flag disagrees with schedule");
    if (spread_now) c = spread(c);
    const Action& a = rec.action;
    if (a.turn_count > 3) return fail(rec.t, "more than three turns");
    heading = a.apply_turns(heading);
    if (a.clean) {
      const bool was = c.erase(pos);
      if (was != !rec.cleaned.empty() || (was && rec.cleaned.front() != pos))
        return fail(rec.t, "cleaned cells disagree");
    } else if (!rec.cleaned.empty()) {
      return fail(rec.t, "cleaned cells recorded without a clean action");
    }
    if (a.move) {
      if (std::abs(a.step.x) > 1 || std::abs(a.step.y) > 1 || a.step == Cell{0, 0})
        return fail(rec.t, "move is not to a neighbouring cell");
      pos = pos + a.step;
    }
    if (rec.position != pos) return fail(rec.t, "position disagrees");
    if (rec.heading != heading) return fail(rec.t, "heading disagrees");
    if (rec.count != c.size()) return fail(rec.t, "cell count disagrees");
    if (observer) observer(rec, c);
  }
  if (trace.outcome == Outcome::Cleaned && !c.empty())
    return fail(trace.steps_taken, "outcome cleaned but cells remain");
  return {};
}

/// Runs `jobs` independent tasks on up to `threads` workers; results keep
/// the job order.
template <typename Result>
std::vector<Result> run_batch(std::size_t jobs, const std::function<Result(std::size_t)>& task,
                              unsigned threads = std::thread::hardware_concurrency()) {
  std::vector<Result> results(jobs);
  if (jobs == 0) return results;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      try {
        results[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace sep
