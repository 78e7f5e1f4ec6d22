#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr discarded; returns exit status and stdout.
Result run(const std::string& args) {
  const std::string cmd = std::string(GAZEKF_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gazekf_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(Cli, JacobianCheckSucceeds) {
  const auto r = run("jacobian-check");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("pendulum"), std::string::npos);
}

TEST(Cli, SynthPrintsSummaryAndWritesFiles) {
  const auto dir = scratch("synth");
  const auto r = run("synth --n 50 --seed 3 --out " + dir.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("filter,pos_rmse,vel_rmse"), std::string::npos);
  for (const char* f : {"plot.csv", "dataset.csv", "report.json", "config.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
}

TEST(Cli, FlagsOverrideConfigFile) {
  const auto dir = scratch("precedence");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "in.json");
    cfg << R"({"synth": {"n": 20, "dt": 0.5}, "sma": {"window": 3}, "seed": 5})";
  }
  const auto r = run("synth --config " + (dir / "in.json").string() + " --window 7 --out " +
                     (dir / "out").string());
  ASSERT_EQ(r.status, 0);
  const auto resolved = nlohmann::json::parse(slurp(dir / "out" / "config.json"));
  EXPECT_EQ(resolved["synth"]["n"], 20);
  EXPECT_EQ(resolved["synth"]["dt"], 0.5);
  EXPECT_EQ(resolved["sma"]["window"], 7);
  EXPECT_EQ(resolved["seed"], 5);
}

TEST(Cli, ExitStatusDiscipline) {
  EXPECT_EQ(run("gaze --input /no/such/file.csv").status, 2);
  EXPECT_EQ(run("synth --n 0").status, 2);
  EXPECT_EQ(run("synth --window 0").status, 2);
  EXPECT_EQ(run("synth --config /no/such/config.json").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("synth --n notanumber").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, GazeParseErrorIsInputError) {
  const auto dir = scratch("badgaze");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "bad.csv");
    f << "t,x,y\n0,1,2\n0,1,2\n";
  }
  EXPECT_EQ(run("gaze --input " + (dir / "bad.csv").string()).status, 2);
}

TEST(Cli, GazeRunIsDeterministic) {
  const auto a = scratch("gaze_a");
  const auto b = scratch("gaze_b");
  const std::string input = std::string(GAZEKF_DATA_DIR) + "/sample_gaze.csv";
  const auto ra = run("gaze --input " + input + " --out " + a.string());
  const auto rb = run("gaze --input " + input + " --out " + b.string());
  ASSERT_EQ(ra.status, 0);
  EXPECT_EQ(ra.out, rb.out);
  for (const char* f : {"plot_x.csv", "plot_y.csv", "summary.json"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

}  // namespace
