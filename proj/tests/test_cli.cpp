#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout (stderr is discarded).
Result sepsim(const std::string& args) {
  const std::string cmd = std::string("\"") + SEP_CLI_PATH + "\" " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SEP_TEST_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sep_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Cli, RunRectangleWithAutoPeriod) {
  const Result r = sepsim("run --generate rect:10x10 --d auto --strategy sep");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "outcome=cleaned"));
  EXPECT_TRUE(has(r.out, "d=66"));
  EXPECT_TRUE(has(r.out, "bound=1650"));
  EXPECT_TRUE(has(r.out, "within_bound=yes"));
}

TEST(Cli, RunGreedyStripDiverges) {
  const Result r = sepsim("run --generate strip:l=10 --strategy greedy --d 35");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.out, "outcome=diverged"));
}

TEST(Cli, RunSingleCellFile) {
  const fs::path dir = scratch("single");
  fs::create_directories(dir);
  std::ofstream(dir / "single.txt") << "R\n";
  const Result r = sepsim("run --input " + (dir / "single.txt").string() + " --d 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "outcome=cleaned steps=1 "));
}

TEST(Cli, StepCapAndViolationExitCodes) {
  EXPECT_EQ(sepsim("run --generate rect:10x10 --max-steps 3").code, 3);
  const fs::path dir = scratch("u");
  fs::create_directories(dir);
  std::ofstream(dir / "u.txt") << "#.#\n#.#\nR##\n";
  EXPECT_EQ(sepsim("run --input " + (dir / "u.txt").string() + " --d 50 --checks full").code, 4);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(sepsim("").code, 64);
  EXPECT_EQ(sepsim("run --d 5").code, 64);
  EXPECT_EQ(sepsim("run --generate rect:2x2 --input x.txt").code, 64);
  EXPECT_EQ(sepsim("run --generate rect:2x2 --d 1").code, 64);
  EXPECT_EQ(sepsim("run --generate rect:2x2 --d fast").code, 64);
  EXPECT_EQ(sepsim("run --generate oval:2x2").code, 64);
  EXPECT_EQ(sepsim("run --generate rect:2x2 --strategy random").code, 64);
  EXPECT_EQ(sepsim("run --generate rect:2x2 --max-steps 0").code, 64);
  EXPECT_EQ(sepsim("sweep --h 1..x").code, 64);
  EXPECT_EQ(sepsim("frobnicate").code, 64);
  EXPECT_EQ(sepsim("run --input /nonexistent/file.txt").code, 65);
  EXPECT_EQ(sepsim("--help").code, 0);
  EXPECT_TRUE(has(sepsim("--help").out, "Exit codes"));
  EXPECT_TRUE(has(sepsim("sweep --help").out, "within_bound"));
}

TEST(Cli, SweepFiveByFive) {
  const Result r = sepsim("sweep --h 3..7 --w 3..7 --d auto --threads 4");
  EXPECT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "h,w,d,lambda,seed,outcome,steps,bound,within_bound");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_TRUE(has(line, ",cleaned,")) << line;
    EXPECT_TRUE(line.ends_with(",yes")) << line;
  }
  EXPECT_EQ(rows, 25);
  // Row order follows the parameter tuple, not thread timing.
  EXPECT_EQ(sepsim("sweep --h 3..7 --w 3..7 --d auto --threads 1").out, r.out);
}

TEST(Cli, SweepEmptyRangeAndFileOutput) {
  EXPECT_EQ(sepsim("sweep --h 5..4").out, "h,w,d,lambda,seed,outcome,steps,bound,within_bound\n");
  const fs::path dir = scratch("sweep");
  fs::create_directories(dir);
  const std::string args = "sweep --h 4,6 --w 5 --seeds 0..2 --holes 1 --lambda 2 --out ";
  EXPECT_EQ(sepsim(args + (dir / "a.csv").string()).code, 0);
  EXPECT_EQ(sepsim(args + (dir / "b.csv").string()).code, 0);
  const std::string a = read_file(dir / "a.csv");
  EXPECT_EQ(a, read_file(dir / "b.csv"));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 7);
}

TEST(Cli, GenerateWritesInstanceAndSidecar) {
  const fs::path dir = scratch("gen");
  fs::create_directories(dir);
  const fs::path inst = dir / "i.txt";
  EXPECT_EQ(sepsim("generate --spec random:8x9,holes=1,lambda=2,seed=7 --out " + inst.string()).code, 0);
  const std::string text = read_file(inst);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 8);
  const std::string side = read_file(inst.string() + ".json");
  EXPECT_TRUE(has(side, "\"spec\": \"random:8x9,holes=1,lambda=2,seed=7\""));
  EXPECT_TRUE(has(side, "\"lambda\": 2"));
  EXPECT_TRUE(has(side, "\"holes\""));
  // Same spec, same bytes; stdout mode prints the instance.
  EXPECT_EQ(sepsim("generate --spec random:8x9,holes=1,lambda=2,seed=7").out, text);
  EXPECT_NE(sepsim("generate --spec random:8x9,holes=1,lambda=2 --seed 8").out, text);
}

TEST(Cli, VerifyReportsEachCheck) {
  const Result ok = sepsim("verify --input " + data("fig1_style.txt"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(has(ok.out, "[PASS] connected"));
  EXPECT_TRUE(has(ok.out, "[PASS] holes rectangular"));
  EXPECT_TRUE(has(ok.out, "[PASS] class C"));
  EXPECT_FALSE(has(ok.out, "[FAIL]"));

  const fs::path dir = scratch("verify");
  fs::create_directories(dir);
  std::ofstream(dir / "l.txt") << "#####\n#..##\n#.###\n####R\n";
  const Result bad = sepsim("verify --input " + (dir / "l.txt").string());
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(has(bad.out, "[FAIL] holes rectangular"));
  EXPECT_TRUE(has(bad.out, "[FAIL] class C"));

  const Result traced = sepsim("verify --input " + data("golden_instance.txt") + " --trace " +
                               data("golden_trace.jsonl"));
  EXPECT_EQ(traced.code, 0);
  EXPECT_TRUE(has(traced.out, "[PASS] trace replays"));
}

TEST(Cli, RenderOneFramePerStep) {
  const fs::path dir = scratch("render");
  const Result r = sepsim("render --input " + data("golden_instance.txt") + " --trace " +
                          data("golden_trace.jsonl") + " --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  std::size_t frames = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++frames;
    EXPECT_EQ(read_file(e.path()), read_file(data("golden_frames/" + e.path().filename().string())));
  }
  const std::string trace = read_file(data("golden_trace.jsonl"));
  EXPECT_EQ(frames, static_cast<std::size_t>(std::count(trace.begin(), trace.end(), '\n') - 2));

  const Result single = sepsim("render --input " + data("golden_instance.txt"));
  EXPECT_EQ(single.code, 0);
  EXPECT_TRUE(has(single.out, "^"));
}

TEST(Cli, RunWritesTraceAndFrames) {
  const fs::path dir = scratch("runout");
  fs::create_directories(dir);
  const Result r = sepsim("run --input " + data("golden_instance.txt") +
                          " --d auto --checks cheap --trace " + (dir / "t.jsonl").string() +
                          " --frames " + (dir / "f").string());
  EXPECT_EQ(r.code, 0);
  // Same instance and flags as the golden run, so the same bytes.
  EXPECT_EQ(read_file(dir / "t.jsonl"), read_file(data("golden_trace.jsonl")));
  EXPECT_TRUE(fs::exists(dir / "f" / "frame_000001.txt"));
}
