#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rpd;
using namespace rpd::cli;

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rpd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string sample_file(std::size_t n, std::size_t d, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::ostringstream out;
    write_curves(out, rpd::test::random_sample(n, d, rng), false);
    return write("sample_" + std::to_string(seed) + ".csv", out.str());
  }

  static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  int run_binary(const std::string& args) const {
    const std::string cmd = std::string(RPD_CLI_PATH) + " " + args + " >" +
                            (dir_ / "stdout.txt").string() + " 2>" +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string stderr_text() const { return slurp((dir_ / "stderr.txt").string()); }
  std::string stdout_text() const { return slurp((dir_ / "stdout.txt").string()); }

  fs::path dir_;
};

TEST_F(Cli, DepthOfSampleCurvesIsInRange) {
  DepthOptions o;
  o.sample_file = sample_file(30, 8, 1);
  o.query_file = o.sample_file;
  o.pool.M = 200;
  o.pool.threads = 1;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_depth(o, out, err), kOk) << err.str();
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "query,depth,worst_direction,beta");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    std::stringstream ss(line);
    std::string idx, depth, worst, beta;
    std::getline(ss, idx, ',');
    std::getline(ss, depth, ',');
    std::getline(ss, worst, ',');
    std::getline(ss, beta, ',');
    const double v = std::stod(depth);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_LT(std::stoul(worst), 200U);
    EXPECT_GT(std::stod(beta), 0.0);
    ++rows;
  }
  EXPECT_EQ(rows, 30U);
}

TEST_F(Cli, SavedPoolReproducesDepths) {
  DepthOptions o;
  o.sample_file = sample_file(20, 6, 2);
  o.query_file = sample_file(5, 6, 3);
  o.pool.M = 100;
  o.pool.save_pool = (dir_ / "pool.json").string();
  std::ostringstream a, b, err;
  ASSERT_EQ(cmd_depth(o, a, err), kOk) << err.str();
  o.pool.save_pool.clear();
  o.pool.load_pool = (dir_ / "pool.json").string();
  o.pool.seed = 999; // ignored when loading
  ASSERT_EQ(cmd_depth(o, b, err), kOk) << err.str();
  EXPECT_EQ(a.str(), b.str());

  o.sample_file = sample_file(20, 6, 4);
  std::ostringstream c;
  EXPECT_EQ(cmd_depth(o, c, err), kInputError);
}

TEST_F(Cli, OutliersRanksThreeCurves) {
  const GridPtr g = Grid::uniform(4);
  std::ostringstream csv;
  write_curves(csv,
               FunctionalSample({Curve({0, 0, 0, 0}, g), Curve({1, 1, 1, 1}, g),
                                 Curve({0.4, 0.4, 0.6, 0.5}, g)}),
               false);
  for (const std::string notion : {"rpd", "fd"}) {
    OutliersOptions o;
    o.sample_file = write("three.csv", csv.str());
    o.depth = notion;
    o.pool.M = 50;
    o.pool.u = 0.0;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_outliers(o, out, err), kOk) << err.str();
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "curve,depth,rank");
    std::vector<std::string> ranks;
    while (std::getline(lines, line))
      ranks.push_back(line.substr(line.rfind(',') + 1));
    ASSERT_EQ(ranks.size(), 3U);
    if (notion == "fd") {
      // the two boundary curves tie at depth 1/3
      EXPECT_EQ(ranks[0], format_real(0.5));
      EXPECT_EQ(ranks[1], format_real(0.5));
      EXPECT_EQ(ranks[2], "1");
    } else {
      EXPECT_EQ(ranks, (std::vector<std::string>{format_real(1.0 / 3.0), format_real(2.0 / 3.0),
                                                 "1"}));
    }
  }
}

TEST_F(Cli, OutliersRankOrderIsAscending) {
  OutliersOptions o;
  o.sample_file = sample_file(12, 5, 5);
  o.depth = "id";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_outliers(o, out, err), kOk) << err.str();
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  double prev = -1.0;
  std::set<std::string> seen;
  while (std::getline(lines, line)) {
    std::stringstream ss(line);
    std::string idx, depth;
    std::getline(ss, idx, ',');
    std::getline(ss, depth, ',');
    EXPECT_GE(std::stod(depth), prev);
    prev = std::stod(depth);
    seen.insert(idx);
  }
  EXPECT_EQ(seen.size(), 12U);
}

TEST_F(Cli, MedianOfSingletonAndPairedSample) {
  MedianOptions o;
  o.sample_file = write("one.csv", "1,2,3\n");
  o.pool.M = 20;
  o.pool.beta = 1e-9;
  std::ostringstream err;
  {
    // a single curve has zero MAD in every direction
    std::ostringstream out;
    EXPECT_EQ(cmd_median(o, out, err), kDegeneratePool);
  }
  o.sample_file = write("pair.csv", "0,1,2\n2,1,0\n1,1,1\n");
  o.pool.beta.reset();
  o.pool.u = 0.0;
  std::ostringstream out;
  ASSERT_EQ(cmd_median(o, out, err), kOk) << err.str();
  EXPECT_EQ(out.str().rfind("index,2\ndepth,1\nvalues,1,1,1\n", 0), 0U) << out.str();
}

TEST_F(Cli, TableOneWritesReportAndCsv) {
  Table1Options o;
  o.config_file = write("cfg.json", R"({"n_clean": 30, "n_outliers": 3, "grid_points": 11,
                                        "M": 200, "u": [0.01, 0.1], "runs": 2, "seed": 4})");
  o.out_dir = (dir_ / "out").string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_table1(o, out, err), kOk) << err.str();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "report.json"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "table1.csv"));
  EXPECT_NE(out.str().find("RPD u=0.01: mean rank"), std::string::npos);

  o.config_file = write("bad.json", R"({"runs": 0})");
  EXPECT_EQ(cmd_table1(o, out, err), kInputError);
  o.config_file = write("degenerate.json", R"({"n_clean": 1, "n_outliers": 0, "grid_points": 11,
                                                "M": 20, "runs": 3})");
  EXPECT_EQ(cmd_table1(o, out, err), kExperimentFailed);
}

TEST_F(Cli, DegeneracyCsv) {
  DegeneracyOptions o;
  o.config.dim = 6;
  o.config.n = 20;
  o.config.M_schedule = {10, 100};
  std::ostringstream out, err;
  ASSERT_EQ(cmd_degeneracy(o, out, err), kOk) << err.str();
  EXPECT_EQ(out.str().rfind(
                "M,min_unregularized_depth,beta,min_regularized_depth,min_bound_margin,"
                "bound_respected\n10,",
                0),
            0U);
}

TEST_F(Cli, BinaryExitCodes) {
  const std::string sample = sample_file(25, 6, 6);
  EXPECT_EQ(run_binary("depth " + sample + " " + sample + " --M 100"), 0) << stderr_text();
  const std::string first = stdout_text();
  EXPECT_EQ(run_binary("depth " + sample + " " + sample + " --M 100"), 0);
  EXPECT_EQ(stdout_text(), first);

  EXPECT_EQ(run_binary("depth " + sample + " " + (dir_ / "missing.csv").string()), 2);
  EXPECT_NE(stderr_text().find("missing.csv"), std::string::npos);
  EXPECT_EQ(run_binary("depth " + sample + " " + write("ragged.csv", "1,2\n3\n")), 2);
  EXPECT_EQ(run_binary("depth " + sample + " " + sample + " --u 1.5"), 2);
  EXPECT_EQ(run_binary("outliers " + sample + " --depth rhd"), 2);
  EXPECT_EQ(run_binary("frobnicate"), 2);

  // beta above every projected MAD empties the pool
  EXPECT_EQ(run_binary("depth " + sample + " " + sample + " --M 50 --beta 1e6"), 3);
  EXPECT_NE(stderr_text().find("lower beta"), std::string::npos);
  const std::string flat = write("flat.csv", "1,1,1\n1,1,1\n1,1,1\n");
  EXPECT_EQ(run_binary("median " + flat + " --M 20"), 3);

  EXPECT_EQ(run_binary("pool " + sample + " --M 10 -o " + (dir_ / "p.json").string()), 0);
  EXPECT_EQ(run_binary("median " + sample + " --pool " + (dir_ / "p.json").string()), 0)
      << stderr_text();
}

} // namespace
