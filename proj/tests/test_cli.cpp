// Integration tests for the bargmann-lab executable: exit codes, output files, determinism.

#include "bargmann_lab/config.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult
{
  int code;
  std::string out;
};

CliResult run(const std::string& args, const char* stderr_to = " 2>/dev/null")
{
  const std::string cmd = std::string("\"") + BARGMANN_LAB_EXE + "\" " + args + stderr_to;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

CliResult run_with_stderr(const std::string& args)
{
  return run(args, " 2>&1");
}

std::string read_file(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() / ("bargmann_lab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text)
  {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  static std::string config(const std::string& name) { return std::string(BARGMANN_LAB_CONFIGS) + "/" + name; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ListScenarios)
{
  const CliResult r = run("--list-scenarios");
  EXPECT_EQ(r.code, 0);
  for (const auto& info : bargmann_lab::scenario_registry()) EXPECT_NE(r.out.find(info.name), std::string::npos);
}

TEST_F(Cli, SampleConfigsPass)
{
  for (const char* name : {"bargmann_loop.json", "superposition.json", "covariance.json", "covariance_harmonic.json",
                           "kg_reduce.json", "remnant.json", "sagnac.json", "group_loop.json", "contract.json"}) {
    EXPECT_EQ(run("run \"" + config(name) + "\" --format json").code, 0) << name;
  }
}

TEST_F(Cli, ByteIdenticalReruns)
{
  for (const char* format : {"csv", "json"}) {
    const fs::path a = dir_ / (std::string("a.") + format), b = dir_ / (std::string("b.") + format);
    ASSERT_EQ(run("run \"" + config("kg_reduce.json") + "\" --format " + format + " --out \"" + a.string() + "\"").code, 0);
    ASSERT_EQ(run("run \"" + config("kg_reduce.json") + "\" --format " + format + " --out \"" + b.string() + "\"").code, 0);
    const std::string first = read_file(a);
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, read_file(b));
  }
}

TEST_F(Cli, CsvSweepShape)
{
  const CliResult r = run("run \"" + config("contract.json") + "\" --format csv");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, line;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("param,", 0), 0u);
  double prev = 0.0;
  int rows    = 0;
  while (std::getline(lines, line)) {
    const double p = std::stod(line.substr(0, line.find(',')));
    EXPECT_GT(p, prev);
    prev = p;
    ++rows;
  }
  EXPECT_EQ(rows, 4);

  const CliResult empty = run("run \"" + config("superposition.json") + "\" --format csv");
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(std::count(empty.out.begin(), empty.out.end(), '\n'), 1);
}

TEST_F(Cli, FormatInferredFromExtension)
{
  const fs::path out = dir_ / "r.csv";
  ASSERT_EQ(run("run \"" + config("remnant.json") + "\" -o \"" + out.string() + "\"").code, 0);
  EXPECT_EQ(read_file(out).rfind("param,theta_rel", 0), 0u);
}

TEST_F(Cli, PhysicsFailureExitsOne)
{
  const fs::path cfg = write("strict.json", R"({"scenario": "contract", "transform": {"v": [0.3,0,0], "a": [0.7,0,0]},
                                               "tolerances": {"scaled_slope_band": 0}})");
  const CliResult r = run("run \"" + cfg.string() + "\"");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("\"pass\": false"), std::string::npos);  // report is still written
}

TEST_F(Cli, ConfigErrorsExitTwo)
{
  const CliResult ring = run_with_stderr("run \"" + write("ring.json", R"({"scenario": "sagnac", "particle": {"masses": [1]},
                                                                   "ring": {"R": 2, "Omega": 1}})").string() + "\"");
  EXPECT_EQ(ring.code, 2);
  EXPECT_NE(ring.out.find("ring: Omega*R must be < c"), std::string::npos);

  const CliResult unknown = run_with_stderr(
      "run \"" + write("typo.json", R"({"scenario": "bargmann-loop", "particle": {"massess": [1]}})").string() + "\"");
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.out.find("massess"), std::string::npos);

  EXPECT_EQ(run("run \"" + write("bad.json", "{not json").string() + "\"").code, 2);
  EXPECT_EQ(run("run \"" + (dir_ / "missing.json").string() + "\"").code, 2);
}

TEST_F(Cli, UsageErrorsExitTwo)
{
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--no-such-flag").code, 2);
  EXPECT_EQ(run("run").code, 2);
  EXPECT_EQ(run("contract --v 0.3 --a 0.7 --format xml").code, 2);
  EXPECT_EQ(run("warp-drive").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, UnwritableOutputExitsTwo)
{
  EXPECT_EQ(run("run \"" + config("remnant.json") + "\" --out \"" + (dir_ / "no/such/dir/out.json").string() + "\"").code, 2);
}

TEST_F(Cli, ShorthandMatchesConfigFile)
{
  const CliResult a = run("bargmann-loop --mass 1 --v 1 --a 1 --n 1024 --length 20 --format json");
  const CliResult b = run("run \"" + config("bargmann_loop.json") + "\" --format json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"analytic_phase\": 1,"), std::string::npos);

  const CliResult printed = run("sagnac --mass 1 --c 10 --R 1 --Omega 0.1 --v-signal 0.2 --print-config");
  ASSERT_EQ(printed.code, 0);
  const bargmann_lab::ScenarioConfig cfg = bargmann_lab::parse_config(printed.out);
  EXPECT_EQ(bargmann_lab::serialize_config(cfg), printed.out);
  EXPECT_DOUBLE_EQ(cfg.ring->Omega, 0.1);

  EXPECT_EQ(run("sagnac --mass 1 --c 1 --R 2 --Omega 1").code, 2);
  EXPECT_EQ(run("contract --v 0.3 --a 0.7 --tol scaled_slope_band=0").code, 1);
}
