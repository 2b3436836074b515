#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cevm/cli.hpp"

namespace fs = std::filesystem;
using namespace cevm::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cevm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cevm::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cevm_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, SimulateWritesHeaderAndRows) {
  const auto dir = fresh_dir("simulate");
  const auto r = run_cli({"simulate", "--example", "ex4_4", "--n", "2000", "--seed", "7",
                          "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = read_lines(dir / "samples_ex4_4.csv");
  ASSERT_EQ(lines.size(), 2002u);
  EXPECT_EQ(lines[0].rfind("# cevm simulate example=ex4_4 seed=7 config_hash=", 0), 0u);
  EXPECT_EQ(lines[1], "x,y,b,u,x_laplace,y_laplace");
  std::array<int, 5> counts{};
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto c1 = lines[i].find(',');
    const auto c2 = lines[i].find(',', c1 + 1);
    ++counts[std::stoi(lines[i].substr(c2 + 1))];
  }
  for (int b = 1; b <= 4; ++b) EXPECT_NEAR(counts[b] / 2000.0, 0.25, 0.03);
}

TEST(Cli, ConfigErrorsExitTwoAndNameField) {
  const auto dir = fresh_dir("errors");
  auto r = run_cli({"verify", "--thresholds", "4,3", "--out", dir.string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("thresholds"), std::string::npos);
  r = run_cli({"verify", "--zgrid", "0,1,1", "--out", dir.string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("zgrid"), std::string::npos);
  r = run_cli({"simulate", "--n", "0", "--out", dir.string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("n"), std::string::npos);
  r = run_cli({"simulate", "--example", "ex7_7"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("example"), std::string::npos);
  r = run_cli({"frobnicate"});
  EXPECT_EQ(r.code, kExitConfig);
}

TEST(Cli, NumericFailureExitsThree) {
  const auto dir = fresh_dir("numeric");
  const auto r = run_cli({"verify", "--example", "ex3_1", "--n", "200", "--out", dir.string()});
  EXPECT_EQ(r.code, kExitNumeric);
  EXPECT_NE(r.err.find("exceedances"), std::string::npos);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = fresh_dir("config");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.json");
    cfg << R"({"command": "simulate", "example": "ex3_1", "n": 50, "seed": 3})";
  }
  const auto r = run_cli({"simulate", "--config", (dir / "run.json").string(), "--n", "20",
                          "--out", (dir / "o").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = read_lines(dir / "o" / "samples_ex3_1.csv");
  EXPECT_EQ(lines.size(), 22u);
  EXPECT_NE(lines[0].find("seed=3"), std::string::npos);
}

TEST(Cli, BadConfigFileNamesField) {
  const auto dir = fresh_dir("badconfig");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.json");
    cfg << R"({"thresholds": "high"})";
  }
  const auto r = run_cli({"verify", "--config", (dir / "run.json").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("thresholds"), std::string::npos);
}

TEST(Cli, HashIgnoresOutputDirectory) {
  RunConfig a, b;
  a.output_dir = "x";
  b.output_dir = "y";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed = 2;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Cli, VerifyWritesLongFormatAndSummary) {
  const auto dir = fresh_dir("verify");
  const auto r = run_cli({"verify", "--example", "ex2_3", "--n", "20000", "--tail",
                          "--thresholds", "4,5", "--zgrid", "-2,2,5", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = read_lines(dir / "conditional_ex2_3.csv");
  ASSERT_EQ(lines.size(), 2u + 2u * 5u);
  EXPECT_EQ(lines[1], "t,z,g_hat");
  std::ifstream js(dir / "verify_ex2_3.json");
  const auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j["result"]["convergence"].size(), 2u);
  EXPECT_EQ(j["result"]["limit_law"]["atoms"][0]["location"], "-inf");
}

TEST(Cli, FitFromInputCsv) {
  const auto dir = fresh_dir("fitinput");
  fs::create_directories(dir);
  {
    std::ofstream in(dir / "pairs.csv");
    in << "x_laplace,y_laplace\n";
    for (int i = 1; i <= 4000; ++i) {
      const double x = 0.002 * i;
      in << x << ',' << 0.5 * x + 0.1 * ((i * 7919) % 13 - 6) << '\n';
    }
  }
  const auto r = run_cli({"fit", "--input", (dir / "pairs.csv").string(), "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream js(dir / "fit_input.json");
  const auto j = nlohmann::json::parse(js);
  EXPECT_TRUE(j["result"]["fit"]["converged"].get<bool>());
  EXPECT_TRUE(fs::exists(dir / "fit_input_residuals.csv"));
}

TEST(Cli, OscillationTheoreticalColumnInRange) {
  const auto dir = fresh_dir("osc");
  const auto r = run_cli({"oscillation", "--n", "200000", "--seed", "1", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = read_lines(dir / "oscillation.csv");
  ASSERT_GT(lines.size(), 3u);
  EXPECT_EQ(lines[1].rfind("t,empirical,theoretical", 0), 0u);
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::stringstream ss(lines[i]);
    std::string t, emp, th;
    std::getline(ss, t, ',');
    std::getline(ss, emp, ',');
    std::getline(ss, th, ',');
    const double v = std::stod(th);
    EXPECT_GE(v, 1.0 / 6.0);
    EXPECT_LE(v, 0.5);
  }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const auto a = fresh_dir("det_a");
  const auto b = fresh_dir("det_b");
  for (const auto& dir : {a, b}) {
    ASSERT_EQ(run_cli({"chi", "--example", "ex2_3", "--n", "50000", "--seed", "5", "--out",
                       dir.string()})
                  .code,
              kExitOk);
  }
  EXPECT_EQ(slurp(a / "chi_ex2_3.csv"), slurp(b / "chi_ex2_3.csv"));
}
