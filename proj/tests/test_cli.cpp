#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aperispec/checks/oracles.hpp"
#include "aperispec/io.hpp"
#include "aperispec/symbolic_ops.hpp"

using namespace aperispec;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(APERISPEC_TEST_DATA) + "/" + name; }

int run(const std::string& args) {
  const std::string cmd = std::string(APERISPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("aperispec_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, DistanceMatchesOrbitBruteForce) {
  ASSERT_EQ(run("dist " + data("fib_k8.json") + " " + data("fib_k12.json") + " --rmax 64 --out " + out("d.json")), 0);
  const auto j = io::read_json_file(out("d.json"));
  const auto A = fibonacci_alphabet();
  const auto want = oracles::periodic_subshift_hausdorff(A, fibonacci_word(8), fibonacci_word(12), 64);
  const Rational got(std::stoll(j.at("exact").get<std::string>().substr(0, j.at("exact").get<std::string>().find('/'))),
                     std::stoll(j.at("exact").get<std::string>().substr(j.at("exact").get<std::string>().find('/') + 1)));
  EXPECT_EQ(got, want.value);
  EXPECT_EQ(j.at("lower_bound").get<bool>(), want.lower_bound);
}

TEST_F(Cli, SpectrumOfPeriodTwoPotential) {
  ASSERT_EQ(run("spectrum " + data("schrodinger.json") + " " + data("period_ab.json") + " --grid 256 --out " +
                out("s.json")),
            0);
  const auto j = io::read_json_file(out("s.json"));
  ASSERT_EQ(j.at("bands").size(), 2u);
  const double r5 = std::sqrt(5.0);
  EXPECT_NEAR(j["bands"][0][0].get<double>(), 1.0 - r5, 1e-8);
  EXPECT_NEAR(j["bands"][0][1].get<double>(), 0.0, 1e-8);
  EXPECT_NEAR(j["bands"][1][0].get<double>(), 2.0, 1e-8);
  EXPECT_NEAR(j["bands"][1][1].get<double>(), 1.0 + r5, 1e-8);
  EXPECT_EQ(j["meta"]["grid"].get<int>(), 256);
}

TEST_F(Cli, DictionaryOfFibonacciHasSturmianCount) {
  ASSERT_EQ(run("dict " + data("fibonacci_closure.json") + " --radius 3 --out " + out("p.json")), 0);
  const auto j = io::read_json_file(out("p.json"));
  EXPECT_EQ(j.at("count").get<int>(), 2 * 3 + 2);
}

TEST_F(Cli, BoundCertificate) {
  ASSERT_EQ(run("bound " + data("schrodinger.json") + " " + data("fib_k8.json") + " " + data("fib_k12.json") +
                " --rmax 64 --out " + out("c.json")),
            0);
  const auto j = io::read_json_file(out("c.json"));
  EXPECT_EQ(j.at("theorem").get<std::string>(), "finite-range");
  EXPECT_EQ(j.at("constants").at("C_dL").get<double>(), 288.0);
  EXPECT_EQ(j.at("digest").get<std::string>().size(), 16u);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("frobnicate"), 64);
  EXPECT_EQ(run("dist " + data("fib_k8.json")), 64);
  EXPECT_EQ(run("dist " + data("fib_k8.json") + " " + out("missing.json")), 1);
  std::ofstream(out("bad.json")) << "{\"alphabet\": {\"labels\": [\"a\", \"b\"], \"metric\": [[0, 1], [2, 0]]}, "
                                    "\"configuration\": {\"kind\": \"periodic\", \"block\": \"ab\"}}";
  EXPECT_EQ(run("dict " + out("bad.json")), 1);
  EXPECT_EQ(run("selftest --inject-fault metric --out " + out("st.json")), 1);
  const auto st = io::read_json_file(out("st.json"));
  EXPECT_FALSE(st.at("passed").get<bool>());
}

TEST_F(Cli, SweepCsvIsByteIdentical) {
  ASSERT_EQ(run("sweep " + data("sweep_small.json") + " --quiet --out " + out("a.csv") + " --json " + out("a.json")), 0);
  ASSERT_EQ(run("sweep " + data("sweep_small.json") + " --quiet --out " + out("b.csv")), 0);
  const std::string a = slurp(out("a.csv"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(out("b.csv")));
  EXPECT_EQ(io::read_json_file(out("a.json")).at("summary").at("failed").get<int>(), 0);
}
