#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = MEROLOCUS_CLI;
const std::string kSpecs = MEROLOCUS_SAMPLE_SPECS;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("merolocus_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& out) {
  const std::string cmd = "'" + kCli + "' --out-dir '" + out.string() + "' " + args + " > '" +
                          (out / "stdout.txt").string() + "' 2> '" + (out / "stderr.txt").string() + "'";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Cli, TracePoleZeroPairDegreePi) {
  const fs::path out = fresh_dir("trace");
  ASSERT_EQ(run("trace --spec pole_zero_pair --degree 1", out), 0) << slurp(out / "stderr.txt");
  const auto rows = read_csv(out / "curve_0.csv");
  ASSERT_GE(rows.size(), 3u);
  EXPECT_LE(std::hypot(rows.front()[1] - 1.0, rows.front()[2]), 1e-4);
  EXPECT_LE(std::hypot(rows.back()[1] - 2.0, rows.back()[2]), 1e-6);
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  EXPECT_EQ(summary["curves"][0]["terminus"], "ZeroIndex");
}

TEST(Cli, EvalSinglePoleAtOrigin) {
  const fs::path out = fresh_dir("eval");
  ASSERT_EQ(run("eval --spec single_pole --sigma 0 --t 0", out), 0);
  const auto report = nlohmann::json::parse(slurp(out / "eval.json"));
  EXPECT_EQ(report["K"].get<double>(), 1.0);
  EXPECT_EQ(report["value"][0].get<double>(), 1.0);
  EXPECT_EQ(report["value"][1].get<double>(), 0.0);
}

TEST(Cli, ExitCodes) {
  const fs::path out = fresh_dir("codes");
  EXPECT_EQ(run("eval --spec '" + kSpecs + "/bad_exponent.json' --sigma 0", out), 2);
  EXPECT_EQ(run("eval --spec no_such_function --sigma 0", out), 2);
  EXPECT_EQ(run("eval --sigma 0", out), 2);
  EXPECT_EQ(run("frobnicate", out), 2);
  EXPECT_EQ(run("eval --spec zeta --sigma 9", out), 3);
  EXPECT_EQ(run("eval --spec '" + kSpecs + "/lead_lag.json' --sigma 0.5 --t 1", out), 0);
}

TEST(Cli, OutputsAreByteIdenticalAcrossRuns) {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  const std::string args = "trace --spec three_pole --pole 0 --degree 1,0.5,-0.25 --continue-saddles --plot";
  ASSERT_EQ(run(args, a), 0);
  ASSERT_EQ(run(args, b), 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const std::string name = entry.path().filename().string();
    if (name == "stderr.txt") continue;
    EXPECT_EQ(slurp(entry.path()), slurp(b / name)) << name;
    ++files;
  }
  EXPECT_GE(files, 6u);
  const std::string svg = slurp(a / "plot.svg");
  EXPECT_NE(svg.find("class=\"saddle\""), std::string::npos);
}

TEST(Cli, AnglesFanScanAndCatalog) {
  const fs::path out = fresh_dir("misc");
  ASSERT_EQ(run("angles --spec single_pole --degree 0,0.5,1,1.5", out), 0);
  const auto angles = read_csv(out / "angles.csv");
  ASSERT_EQ(angles.size(), 4u);
  EXPECT_NEAR(angles[0][1], M_PI, 1e-15);
  EXPECT_NEAR(angles[2][1], 0.0, 1e-15);
  ASSERT_EQ(run("fan --spec three_pole --index 1", out), 0);
  EXPECT_EQ(read_csv(out / "fan.csv").size(), 16u);
  ASSERT_EQ(run("scan --spec pole_zero_pair --window 0,3,-1,1 --resolution 61 --degree 1 --delta 0.05", out), 0);
  for (const auto& row : read_csv(out / "scan.csv")) EXPECT_LE(std::abs(row[1]), 0.1);
  ASSERT_EQ(run("catalog", out), 0);
  const auto catalog = nlohmann::json::parse(slurp(out / "catalog.json"));
  EXPECT_EQ(catalog["zeta_zero_ordinates"].size(), 10u);
  EXPECT_TRUE(catalog["named_rationals"].contains("fractional_pole"));
}

TEST(Cli, BlackBoxTraceAndFractionalSpec) {
  const fs::path out = fresh_dir("bb");
  ASSERT_EQ(run("trace --spec zeta --degree 1", out), 0) << slurp(out / "stderr.txt");
  const auto rows = read_csv(out / "curve_0.csv");
  EXPECT_NEAR(rows.back()[1], -2.0, 1e-12);
  ASSERT_EQ(run("trace --spec '" + kSpecs + "/fractional_pair.json' --degree 0.25,-0.5", out), 0)
      << slurp(out / "stdout.txt");
}
