// sepsim: command-line front end for the cleaning simulator.
//
// Exit codes: 0 success (run: cleaned), 1 failed checks (verify), 2 diverged,
// 3 step cap, 4 invariant violation, 64 usage error, 65 unreadable input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sep/instance_spec.hpp"
#include "sep/oracles.hpp"
#include "sep/sep.hpp"

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot read '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw DataError("cannot write '" + path + "'");
}

sep::Instance load_instance(const std::string& path) {
  try {
    return sep::parse_instance(read_file(path));
  } catch (const sep::ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

sep::GenSpec parse_spec(const std::string& text) {
  try {
    return sep::parse_instance_spec(text);
  } catch (const sep::SpecError& e) {
    throw UsageError(std::string("--generate: ") + e.what());
  }
}

sep::Instance generate_instance(const sep::GenSpec& spec) {
  try {
    return sep::generate(spec);
  } catch (const sep::GenerationError& e) {
    throw UsageError(std::string("cannot generate instance: ") + e.what());
  }
}

sep::Checks parse_checks(const std::string& s) {
  if (s == "off") return sep::Checks::Off;
  if (s == "cheap") return sep::Checks::Cheap;
  return sep::Checks::Full;
}

int auto_period(const sep::Contamination& c) {
  return static_cast<int>(sep::oracle::sep_speed_threshold(c.height(), c.width()));
}

int resolve_period(const std::string& d, const sep::Contamination& c) {
  if (d == "auto") return auto_period(c);
  try {
    std::size_t used = 0;
    const int v = std::stoi(d, &used);
    if (used != d.size()) throw std::invalid_argument(d);
    if (v <= 1) throw UsageError("--d must be greater than 1");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("--d expects an integer or 'auto', got '" + d + "'");
  }
}

// Inclusive integer ranges: "A", "A..B" or "A,B,C". A..B with B < A is empty.
std::vector<long> parse_range(const std::string& text, const char* name) {
  std::vector<long> out;
  auto num = [&](std::string_view s) {
    try {
      return sep::detail::parse_int<long>(s, name);
    } catch (const sep::SpecError& e) {
      throw UsageError(std::string("--") + name + ": " + e.what());
    }
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const long lo = num(std::string_view(text).substr(0, dots));
    const long hi = num(std::string_view(text).substr(dots + 2));
    for (long v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (std::string_view part : sep::detail::split(text, ',')) out.push_back(num(part));
  return out;
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string input;
  std::string generate;
  std::string d = "auto";
  std::string strategy = "sep";
  long max_steps = 1'000'000;
  std::string trace;
  std::string frames;
  std::string frame_format = "text";
  std::string checks = "off";
};

int cmd_run(const RunArgs& a) {
  if (a.input.empty() == a.generate.empty())
    throw UsageError("run needs exactly one of --input and --generate");
  sep::GenSpec spec;
  const sep::Instance inst = a.input.empty() ? generate_instance(spec = parse_spec(a.generate))
                                             : load_instance(a.input);
  sep::SimConfig cfg;
  cfg.spread_period = resolve_period(a.d, inst.cells);
  cfg.max_steps = a.max_steps;
  cfg.strategy = a.strategy == "greedy" ? sep::Strategy::Greedy : sep::Strategy::Sep;
  cfg.checks = parse_checks(a.checks);
  cfg.record_frames = !a.frames.empty();
  cfg.seed = spec.seed;
  if (cfg.max_steps <= 0) throw UsageError("--max-steps must be positive");

  const sep::SimTrace t = sep::run_episode(inst.cells, inst.start, cfg);
  const long bound = sep::oracle::sep_step_bound(t.header.h, t.header.w, t.header.lambda,
                                                  cfg.spread_period);
  const bool within = t.outcome == sep::Outcome::Cleaned && t.steps_taken <= bound;
  std::printf(
      "outcome=%s steps=%ld spreads=%ld cells_cleaned=%zu final_cells=%zu d=%d h=%d w=%d "
      "lambda=%d bound=%ld within_bound=%s\n",
      sep::to_string(t.outcome), t.steps_taken, t.spreads, t.cells_cleaned, t.final_count,
      cfg.spread_period, t.header.h, t.header.w, t.header.lambda, bound, within ? "yes" : "no");
  if (!t.violation.empty()) std::printf("violation: %s\n", t.violation.c_str());
  if (!a.trace.empty()) write_file(a.trace, sep::trace_to_string(t));
  if (!a.frames.empty()) {
    const auto fmt = a.frame_format == "ppm" ? sep::FrameFormat::Ppm : sep::FrameFormat::Text;
    sep::write_frames(t, inst.cells, a.frames, fmt);
  }
  return sep::exit_code(t.outcome);
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string h = "3..7";
  std::string w = "3..7";
  std::string d = "auto";
  std::string seeds = "0";
  int holes = 0;
  int lambda = 1;
  std::string strategy = "sep";
  long max_steps = 1'000'000;
  unsigned threads = 0;
  std::string out;
};

struct SweepRow {
  long h, w, d, seed;
};

std::string sweep_line(const SweepRow& row, const SweepArgs& a) {
  sep::GenSpec spec{static_cast<std::uint64_t>(row.seed), static_cast<int>(row.h),
                    static_cast<int>(row.w), a.holes, a.lambda, sep::ShapeFamily::RandomClassC, 0};
  std::ostringstream os;
  os << row.h << ',' << row.w << ',';
  sep::Instance inst;
  try {
    inst = sep::generate(spec);
  } catch (const sep::GenerationError&) {
    os << (row.d > 0 ? std::to_string(row.d) : "") << ",," << row.seed
       << ",generation_error,,,no";
    return os.str();
  }
  sep::SimConfig cfg;
  cfg.spread_period = row.d > 0 ? static_cast<int>(row.d) : auto_period(inst.cells);
  cfg.max_steps = a.max_steps;
  cfg.strategy = a.strategy == "greedy" ? sep::Strategy::Greedy : sep::Strategy::Sep;
  cfg.seed = spec.seed;
  const sep::SimTrace t = sep::run_episode(inst.cells, inst.start, cfg);
  const long bound = sep::oracle::sep_step_bound(t.header.h, t.header.w, t.header.lambda,
                                                  cfg.spread_period);
  const bool within = t.outcome == sep::Outcome::Cleaned && t.steps_taken <= bound;
  os << cfg.spread_period << ',' << t.header.lambda << ',' << row.seed << ','
     << sep::to_string(t.outcome) << ',' << t.steps_taken << ',' << bound << ','
     << (within ? "yes" : "no");
  return os.str();
}

int cmd_sweep(const SweepArgs& a) {
  const auto hs = parse_range(a.h, "h");
  const auto ws = parse_range(a.w, "w");
  const auto seeds = parse_range(a.seeds, "seeds");
  std::vector<long> ds{0};  // 0 stands for auto
  if (a.d != "auto") ds = parse_range(a.d, "d");
  for (long v : hs)
    if (v < 1) throw UsageError("--h values must be positive");
  for (long v : ws)
    if (v < 1) throw UsageError("--w values must be positive");
  for (long v : ds)
    if (a.d != "auto" && v <= 1) throw UsageError("--d values must be greater than 1");
  if (a.max_steps <= 0) throw UsageError("--max-steps must be positive");

  std::vector<SweepRow> rows;
  for (long h : hs)
    for (long w : ws)
      for (long d : ds)
        for (long s : seeds) rows.push_back({h, w, d, s});

  const unsigned threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  const auto lines = sep::run_batch<std::string>(
      rows.size(), [&](std::size_t i) { return sweep_line(rows[i], a); }, threads);

  std::string csv = "h,w,d,lambda,seed,outcome,steps,bound,within_bound\n";
  for (const auto& l : lines) csv += l + "\n";
  if (a.out.empty())
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  else
    write_file(a.out, csv);
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& spec_text, std::uint64_t seed, bool seed_given,
                 const std::string& out) {
  sep::GenSpec spec = parse_spec(spec_text);
  if (seed_given) spec.seed = seed;
  const sep::Instance inst = generate_instance(spec);
  const std::string text = sep::serialize_instance(inst) + "\n";
  nlohmann::json holes = nlohmann::json::array();
  const sep::BoundingBox& bb = inst.cells.bounding_box();
  for (const sep::Hole& h : sep::holes(inst.cells))
    holes.push_back({{"min_x", h.rect.min_x - bb.min_x},
                     {"max_x", h.rect.max_x - bb.min_x},
                     {"min_y", h.rect.min_y - bb.min_y},
                     {"max_y", h.rect.max_y - bb.min_y},
                     {"short_side", h.short_side()}});
  const nlohmann::json sidecar = {
      {"format", "sep-instance"},
      {"version", 1},
      {"spec", sep::to_string(spec)},
      {"family", sep::to_string(spec.family)},
      {"seed", spec.seed},
      {"h", inst.cells.height()},
      {"w", inst.cells.width()},
      {"cells", inst.cells.size()},
      {"lambda", sep::max_hole_short_side(inst.cells)},
      {"holes", holes},
      {"start", {inst.start.x - bb.min_x, inst.start.y - bb.min_y}},
      {"digest", sep::instance_digest(inst.cells, inst.start)}};
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
    write_file(out + ".json", sidecar.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& input, const std::string& trace_path) {
  const sep::Instance inst = load_instance(input);
  const sep::Contamination& c = inst.cells;
  bool all = true;
  auto report = [&](bool ok, const std::string& name, const std::string& detail = "") {
    all = all && ok;
    std::printf("[%s] %s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : (" (" + detail + ")").c_str());
  };
  const bool connected = sep::is_connected(c);
  report(connected, "connected");
  report(connected == sep::oracle::bf_connected(c), "connectivity agrees with brute force");
  const sep::HoleScan hs = sep::scan_holes(c);
  report(hs.all_rectangular, "holes rectangular", std::to_string(hs.holes.size()) + " holes");
  const sep::ClassCReport cc = sep::validate_class_c(c);
  report(cc.ok, "class C", cc.diagnostic);
  if (cc.ok) {
    std::printf("h=%d w=%d cells=%zu lambda=%d circumference=%d d_auto=%d\n", c.height(), c.width(),
                c.size(), sep::max_hole_short_side(c), sep::circumference(c), auto_period(c));
  }
  if (!trace_path.empty()) {
    sep::SimTrace t;
    try {
      t = sep::trace_from_string(read_file(trace_path));
    } catch (const sep::TraceFormatError& e) {
      throw DataError(trace_path + ": " + e.what());
    }
    const sep::ReplayResult r = sep::replay(t, c);
    report(r.ok, "trace replays",
           r.ok ? std::to_string(t.steps.size()) + " steps"
                : "step " + std::to_string(r.first_divergent_step) + ": " + r.message);
  }
  return all ? 0 : kExitFailedChecks;
}

// ---------------------------------------------------------------------------

int cmd_render(const std::string& input, const std::string& trace_path, const std::string& out,
               const std::string& format) {
  const sep::Instance inst = load_instance(input);
  const auto fmt = format == "ppm" ? sep::FrameFormat::Ppm : sep::FrameFormat::Text;
  if (trace_path.empty()) {
    const sep::Pose pose{inst.start, sep::Heading::N};
    const sep::BoundingBox& bb = inst.cells.bounding_box();
    const std::string frame = fmt == sep::FrameFormat::Text
                                  ? sep::render_frame(inst.cells, pose, bb) + "\n"
                                  : sep::render_ppm(inst.cells, pose, bb);
    if (out.empty())
      std::cout << frame;
    else
      write_file(out, frame);
    return 0;
  }
  if (out.empty()) throw UsageError("render with --trace needs --out DIR");
  sep::SimTrace t;
  try {
    t = sep::trace_from_string(read_file(trace_path));
  } catch (const sep::TraceFormatError& e) {
    throw DataError(trace_path + ": " + e.what());
  }
  try {
    const std::size_t n = sep::write_frames(t, inst.cells, out, fmt);
    std::printf("frames=%zu dir=%s\n", n, out.c_str());
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Grid cleaning simulator: Smart Edge Peeling and a greedy baseline against spreading "
      "contaminations.\n"
      "Instance files use the grid text format: one line per row, north row first, '#' "
      "contaminated, '.' clean, 'R' the contaminated start cell.\n"
      "Exit codes: 0 ok/cleaned, 1 failed checks, 2 diverged, 3 step cap, 4 invariant "
      "violation, 64 usage error, 65 unreadable input."};
  app.require_subcommand(1);
  const std::string spec_help =
      "Instance spec: rect:HxW | random:HxW | plus:HxW, each with optional "
      ",holes=N,lambda=K,seed=S; strip:l=L; diamond:k=K";

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one episode and print a summary line");
  auto* in_opt = run_cmd->add_option("--input", run.input, "Instance file in grid text format");
  auto* gen_opt = run_cmd->add_option("--generate", run.generate, spec_help);
  in_opt->excludes(gen_opt);
  run_cmd->add_option("--d", run.d, "Spread period: integer > 1, or 'auto' for 3(h+w)+6")
      ->capture_default_str();
  run_cmd->add_option("--strategy", run.strategy, "sep or greedy")
      ->check(CLI::IsMember({"sep", "greedy"}))
      ->capture_default_str();
  run_cmd->add_option("--max-steps", run.max_steps, "Step cap")->capture_default_str();
  run_cmd->add_option("--trace", run.trace, "Write the JSON-lines trace to this file");
  run_cmd->add_option("--frames", run.frames, "Write one frame per step into this directory");
  run_cmd->add_option("--frame-format", run.frame_format, "text or ppm")
      ->check(CLI::IsMember({"text", "ppm"}))
      ->capture_default_str();
  run_cmd->add_option("--checks", run.checks, "Invariant checks: off, cheap or full")
      ->check(CLI::IsMember({"off", "cheap", "full"}))
      ->capture_default_str();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep",
      "Run random class-C episodes over parameter ranges and print CSV with columns "
      "h,w,d,lambda,seed,outcome,steps,bound,within_bound. Ranges are A, A..B or A,B,C; rows "
      "are ordered by (h, w, d, seed).");
  sweep_cmd->set_help_flag("--help", "Print this help message and exit");
  sweep_cmd->add_option("--h", sweep.h, "Height range")->capture_default_str();
  sweep_cmd->add_option("--w", sweep.w, "Width range")->capture_default_str();
  sweep_cmd->add_option("--d", sweep.d, "Spread period range, or 'auto'")->capture_default_str();
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seed range")->capture_default_str();
  sweep_cmd->add_option("--holes", sweep.holes, "Holes per instance")->capture_default_str();
  sweep_cmd->add_option("--lambda", sweep.lambda, "Largest hole short side")->capture_default_str();
  sweep_cmd->add_option("--strategy", sweep.strategy, "sep or greedy")
      ->check(CLI::IsMember({"sep", "greedy"}))
      ->capture_default_str();
  sweep_cmd->add_option("--max-steps", sweep.max_steps, "Step cap")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0: all cores)");
  sweep_cmd->add_option("--out", sweep.out, "CSV output file (default stdout)");

  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand(
      "generate", "Write an instance in grid text format plus a JSON sidecar (FILE.json)");
  gen_cmd->add_option("--spec", gen_spec, spec_help)->required();
  auto* seed_opt = gen_cmd->add_option("--seed", gen_seed, "Override the spec's seed");
  gen_cmd->add_option("--out", gen_out, "Instance file (default stdout, no sidecar)");

  std::string ver_input, ver_trace;
  auto* ver_cmd = app.add_subcommand(
      "verify", "Check an instance (connectivity, hole shape, class C) and optionally a trace");
  ver_cmd->add_option("--input", ver_input, "Instance file")->required();
  ver_cmd->add_option("--trace", ver_trace, "Trace file to replay against the instance");

  std::string ren_input, ren_trace, ren_out, ren_format = "text";
  auto* ren_cmd = app.add_subcommand(
      "render", "Render an instance, or one frame per step of a trace into a directory");
  ren_cmd->add_option("--input", ren_input, "Instance file")->required();
  ren_cmd->add_option("--trace", ren_trace, "Trace file");
  ren_cmd->add_option("--out", ren_out, "Output file or, with --trace, directory");
  ren_cmd->add_option("--format", ren_format, "text or ppm")
      ->check(CLI::IsMember({"text", "ppm"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*gen_cmd) return cmd_generate(gen_spec, gen_seed, seed_opt->count() > 0, gen_out);
    if (*ver_cmd) return cmd_verify(ver_input, ver_trace);
    if (*ren_cmd) return cmd_render(ren_input, ren_trace, ren_out, ren_format);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const sep::ConfigError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
