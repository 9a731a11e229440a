#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>
#include <string>
#include <sys/wait.h>

#ifndef NBSLOC_CLI_PATH
#error "NBSLOC_CLI_PATH must be defined"
#endif

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd =
      std::string("\"") + NBSLOC_CLI_PATH + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST(Cli, EigvalsAtUnitWeightArePowers) {
  const auto r = run("eigvals --B 1 --R 0.5 --j-max 3");
  ASSERT_EQ(r.code, 0);
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 5u);
  for (int j = 0; j <= 3; ++j) {
    const auto& l = lines[static_cast<std::size_t>(j + 1)];
    const double v = std::stod(l.substr(l.find(',') + 1));
    EXPECT_NEAR(v, std::pow(0.25, j + 1), 1e-15);
  }
}

TEST(Cli, CsvCarriesParameters) {
  const auto r = run("eigvals --B 1.5 --R 0.6 --j-max 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# B=1.5"), std::string::npos);
  EXPECT_NE(r.out.find("# R=0.6"), std::string::npos);
}

TEST(Cli, JsonHasParamsAndData) {
  const auto r = run("kernel --B 1 --z 0 --w 0.3 --s 0.25 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("{", 0), 0u);
  EXPECT_NE(r.out.find("\"params\""), std::string::npos);
  EXPECT_NE(r.out.find("\"data\""), std::string::npos);
}

TEST(Cli, InadmissibleLevelIsRejectedWithMessage) {
  const auto r = run("eigvals --B 1.5 --m 2", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("⌊B−1/2⌋"), std::string::npos);
}

TEST(Cli, BadInputsExitTwo) {
  for (const char* args : {"", "eigvals --B 0.4", "eigvals --R 1.0", "eigvals --R -0.2", "eigvals --j-max -1",
                           "kernel --z 1.5", "kernel --w nonsense", "kernel --s 1", "leakage --tol 0",
                           "mc --samples 5", "eigvals --B nan", "eigvals --format xml", "frobnicate"})
    EXPECT_EQ(run(args).code, 2) << args;
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, VerifyPassesAndIsDeterministic) {
  const auto a = run("verify --format json");
  const auto b = run("verify --format json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"passed_all\": true"), std::string::npos);
}

TEST(Cli, InjectedFaultFailsVerification) {
  const auto r = run("verify --inject-fault", true);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("verification failed"), std::string::npos);
}

TEST(Cli, McIsSeeded) {
  const auto a = run("mc --j-max 2 --samples 1000 --seed 7");
  const auto b = run("mc --j-max 2 --samples 1000 --seed 7");
  const auto c = run("mc --j-max 2 --samples 1000 --seed 8");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, WritesOutputFile) {
  const std::string path = testing::TempDir() + "nbsloc_cli_out.csv";
  std::remove(path.c_str());
  const auto r = run("leakage --out \"" + path + "\"");
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_FALSE(data_lines(ss.str()).empty());
  std::remove(path.c_str());
}

TEST(Cli, DensityRejectsDegenerateLevel) { EXPECT_EQ(run("density --B 2.5 --m 2").code, 2); }

TEST(Cli, AllTableCommandsRun) {
  for (const char* cmd : {"eigvals", "kernel", "leakage", "density", "mc --samples 1000"})
    for (const char* fmt : {"csv", "json"}) EXPECT_EQ(run(std::string(cmd) + " --format " + fmt).code, 0) << cmd;
}
