#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sep/generators.hpp"
#include "sep/grid_text.hpp"
#include "sep/instance_spec.hpp"
#include "sep/sim_engine.hpp"
#include "sep/trace_io.hpp"
#include "support.hpp"

using namespace sep;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sep_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(ParseInstance, Examples) {
  const Instance one = parse_instance("R");
  EXPECT_EQ(one.cells, (Contamination{{0, 0}}));
  EXPECT_EQ(one.start, (Cell{0, 0}));

  const Instance block = parse_instance("#R#\n###");
  EXPECT_EQ(block.cells.size(), 6u);
  EXPECT_EQ(block.cells.width(), 3);
  EXPECT_EQ(block.cells.height(), 2);
  EXPECT_EQ(block.start, (Cell{1, 1}));

  EXPECT_EQ(parse_instance("R\n").cells.size(), 1u);
  const Instance holey = parse_instance("###\n#.#\n##R");
  EXPECT_FALSE(holey.cells.contains({1, 1}));
  EXPECT_EQ(holey.start, (Cell{2, 0}));
}

TEST(ParseInstance, ErrorsCarryLineAndColumn) {
  auto expect_error = [](const std::string& text, int line, int column) {
    try {
      parse_instance(text);
      ADD_FAILURE() << "no error for: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_EQ(e.column(), column) << text;
    }
  };
  expect_error("", 1, 1);
  expect_error("\n", 1, 1);
  expect_error("##\n#", 2, 2);
  expect_error("###\n####\nR##", 2, 4);
  expect_error("###\n###", 2, 1);
  expect_error("R#\n#R", 2, 2);
  expect_error("R#\n#x", 2, 2);
  expect_error("R# ", 1, 3);
  expect_error("R\n\n", 2, 1);
}

TEST(SerializeInstance, CropsToBoundingBoxWithoutTrailingNewline) {
  Contamination c{{5, 5}, {6, 5}, {6, 6}};
  EXPECT_EQ(serialize_instance(c, {5, 5}), ".#\nR#");
  EXPECT_THROW(serialize_instance(c, {0, 0}), std::invalid_argument);
  EXPECT_THROW(serialize_instance(Contamination{}, {0, 0}), std::invalid_argument);
}

TEST(SerializeInstance, RoundTripsGeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Instance inst =
        test::random_instance(seed, 1 + static_cast<int>(seed % 20), 1 + static_cast<int>((seed / 20) % 20), 3, 3);
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    ASSERT_EQ(serialize_instance(back), text) << "seed " << seed;
    EXPECT_EQ(back.cells, inst.cells.normalized());
    EXPECT_EQ(instance_digest(back.cells, back.start), instance_digest(inst.cells, inst.start));
  }
}

TEST(InstanceSpec, ParsesAndRejects) {
  const GenSpec r = parse_instance_spec("rect:10x12");
  EXPECT_EQ(r.family, ShapeFamily::Rectangle);
  EXPECT_EQ(r.target_h, 10);
  EXPECT_EQ(r.target_w, 12);
  const GenSpec s = parse_instance_spec("strip:l=10");
  EXPECT_EQ(s.family, ShapeFamily::Strip);
  EXPECT_EQ(s.target_w, 12);
  EXPECT_EQ(s.target_h, 1);
  EXPECT_EQ(parse_instance_spec("diamond:k=3").spreads, 3);
  const GenSpec q = parse_instance_spec("random:8x9,holes=2,lambda=3,seed=99");
  EXPECT_EQ(q.hole_count, 2);
  EXPECT_EQ(q.max_hole_side, 3);
  EXPECT_EQ(q.seed, 99u);
  EXPECT_EQ(to_string(q), "random:8x9,holes=2,lambda=3,seed=99");
  EXPECT_EQ(parse_instance_spec(to_string(q)).seed, 99u);
  for (const char* bad : {"rect", "rect:10", "rect:0x3", "rect:3x3,foo=1", "oval:3x3", "strip:k=3",
                          "strip:l=0", "diamond:k=-1", "random:3x3,holes=x", "rect:3x3,lambda=0"})
    EXPECT_THROW(parse_instance_spec(bad), SpecError) << bad;
}

TEST(Trace, RoundTripsThroughText) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = test::random_instance(seed, 7, 9, 2, 2);
    SimConfig cfg;
    cfg.spread_period = 30 + static_cast<int>(seed);
    cfg.seed = seed;
    cfg.strategy = seed % 3 == 0 ? Strategy::Greedy : Strategy::Sep;
    cfg.max_steps = 3000;
    const SimTrace t = run_episode(inst.cells, inst.start, cfg);
    const std::string text = trace_to_string(t);
    const SimTrace back = trace_from_string(text);
    EXPECT_EQ(trace_to_string(back), text);
    EXPECT_EQ(back.steps, t.steps);
    EXPECT_EQ(back.outcome, t.outcome);
    EXPECT_EQ(back.header.instance_digest, t.header.instance_digest);
    EXPECT_EQ(back.header.config.seed, seed);
  }
}

TEST(Trace, FileLayout) {
  const SimTrace t = run_episode(Contamination{{0, 0}}, {0, 0}, SimConfig{});
  const std::string text = trace_to_string(t);
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NE(lines[0].find("\"type\":\"header\""), std::string::npos);
  EXPECT_NE(lines[0].find("\"format\":\"sep-trace\""), std::string::npos);
  EXPECT_NE(lines[0].find("\"version\":1"), std::string::npos);
  EXPECT_NE(lines[1].find("\"type\":\"step\""), std::string::npos);
  EXPECT_NE(lines[2].find("\"outcome\":\"cleaned\""), std::string::npos);
}

TEST(Trace, RejectsMalformedFiles) {
  const std::string good = trace_to_string(run_episode(Contamination{{0, 0}}, {0, 0}, SimConfig{}));
  const auto first_nl = good.find('\n');
  EXPECT_THROW(trace_from_string(""), TraceFormatError);
  EXPECT_THROW(trace_from_string(good.substr(first_nl + 1)), TraceFormatError);
  EXPECT_THROW(trace_from_string(good.substr(0, good.rfind('\n', good.size() - 2) + 1)),
               TraceFormatError);
  EXPECT_THROW(trace_from_string(good + good), TraceFormatError);
  std::string bad_version = good;
  bad_version.replace(bad_version.find("\"version\":1"), 11, "\"version\":9");
  EXPECT_THROW(trace_from_string(bad_version), TraceFormatError);
  try {
    trace_from_string(good.substr(0, first_nl + 1) + "{not json\n");
    ADD_FAILURE();
  } catch (const TraceFormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(RenderFrame, Examples) {
  EXPECT_EQ(render_frame(Contamination{{0, 0}}, Pose{{0, 0}, Heading::N}), "^");
  EXPECT_EQ(render_frame(Contamination{{0, 0}}, Pose{{0, 0}, Heading::E}), ">");
  EXPECT_EQ(render_frame(Contamination{}, std::nullopt, BoundingBox{0, 2, 0, 1}), "...\n...");
  EXPECT_EQ(render_frame(Contamination{}), "");
  EXPECT_EQ(render_frame(test::picture("##\n#."), Pose{{0, 0}, Heading::W}), "##\n<.");
  EXPECT_EQ(render_frame(test::picture("##"), Pose{{0, 1}, Heading::S}), "v.\n##");
}

TEST(RenderPpm, HeaderAndPalette) {
  const std::string img = render_ppm(Contamination{{0, 0}}, Pose{{1, 0}, Heading::N}, {0, 2, 0, 0});
  const std::string header = "P6\n3 1\n255\n";
  ASSERT_EQ(img.size(), header.size() + 9);
  EXPECT_EQ(img.substr(0, header.size()), header);
  const auto px = [&](int i) {
    return std::array<unsigned char, 3>{static_cast<unsigned char>(img[header.size() + 3 * i]),
                                        static_cast<unsigned char>(img[header.size() + 3 * i + 1]),
                                        static_cast<unsigned char>(img[header.size() + 3 * i + 2])};
  };
  EXPECT_EQ(px(0), (std::array<unsigned char, 3>{178, 34, 34}));
  EXPECT_EQ(px(1), (std::array<unsigned char, 3>{30, 90, 200}));
  EXPECT_EQ(px(2), (std::array<unsigned char, 3>{255, 255, 255}));
}

TEST(Frames, OnePerStepAndMatchGoldens) {
  const fs::path data = SEP_TEST_DATA_DIR;
  const Instance inst = parse_instance(read_file(data / "golden_instance.txt"));
  const SimTrace t = trace_from_string(read_file(data / "golden_trace.jsonl"));
  const fs::path out = scratch_dir("frames");
  EXPECT_EQ(write_frames(t, inst.cells, out, FrameFormat::Text), t.steps.size());
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(data / "golden_frames")) {
    const fs::path mine = out / entry.path().filename();
    ASSERT_TRUE(fs::exists(mine)) << mine;
    EXPECT_EQ(read_file(mine), read_file(entry.path())) << entry.path().filename();
    ++compared;
  }
  EXPECT_EQ(compared, t.steps.size());
  const fs::path ppm = scratch_dir("frames_ppm");
  EXPECT_EQ(write_frames(t, inst.cells, ppm, FrameFormat::Ppm), t.steps.size());
  fs::remove_all(out);
  fs::remove_all(ppm);
}

TEST(Frames, RefuseTracesThatDoNotReplay) {
  const Instance inst = generate({0, 4, 4, 0, 1, ShapeFamily::Rectangle, 0});
  SimConfig cfg;
  cfg.spread_period = 30;
  SimTrace t = run_episode(inst.cells, inst.start, cfg);
  t.steps[2].position = t.steps[2].position + Cell{5, 0};
  EXPECT_THROW(write_frames(t, inst.cells, scratch_dir("bad"), FrameFormat::Text), std::runtime_error);
}
