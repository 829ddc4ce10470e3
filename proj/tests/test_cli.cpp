#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ltc/field_expr.hpp"
#include "ltc/network_io.hpp"
#include "ltc/trajectory_io.hpp"
#include "support.hpp"

namespace ltc {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = test::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    save_network(test::leak_only(2.0, 0.5, 0.25), path("leak.json"));
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(Cli, BoundsMinimal) {
  const Result r = run({"bounds", "--net", path("leak.json")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("\nTAU 0 4 4\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\nBOX 0 0.25 0.25\n"), std::string::npos) << r.out;
}

TEST_F(Cli, BoundsOnGapNetwork) {
  save_network(test::gap_ring(1.0), path("ring.json"));
  const Result r = run({"bounds", "--net", path("ring.json")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("state boxes unavailable"), std::string::npos);
  EXPECT_EQ(r.out.find("BOX"), std::string::npos);
}

TEST_F(Cli, SimulateThenVerify) {
  const Result s = run({"simulate", "--net", path("leak.json"), "--init", "1", "--dt", "0.01", "--t-end", "1",
                        "--method", "rk4", "--out", path("traj.csv")});
  ASSERT_EQ(s.code, cli::kOk) << s.err;
  const Trajectory tr = load_trajectory(path("traj.csv"));
  EXPECT_EQ(tr.samples(), 101u);

  // Starts above the degenerate box [0.25, 0.25].
  const Result bad = run({"verify", "--net", path("leak.json"), "--traj", path("traj.csv")});
  EXPECT_EQ(bad.code, cli::kViolations);
  EXPECT_NE(bad.out.find("VIOLATION 0 0 STATE_HIGH 1 0.25"), std::string::npos) << bad.out;

  ASSERT_EQ(run({"simulate", "--net", path("leak.json"), "--init", "0.25", "--dt", "0.1", "--t-end", "1",
                 "--method", "semi-implicit", "--out", path("rest.csv")})
                .code,
            cli::kOk);
  const Result ok = run({"verify", "--net", path("leak.json"), "--traj", path("rest.csv")});
  EXPECT_EQ(ok.code, cli::kOk) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("violations 0"), std::string::npos);
}

TEST_F(Cli, ApproximateMatchesLibrary) {
  const std::vector<std::string> args = {"approximate", "--field", "x2;-x1", "--domain", "-1.5:1.5,-1.5:1.5",
                                         "--x0", "1,0", "--horizon", "1", "--features", "16", "--seed", "7",
                                         "--samples", "400", "--out-net", path("net.json"),
                                         "--out-traj", path("pair.csv"), "--report", path("report.txt")};
  const Result r = run(args);
  ASSERT_EQ(r.code, cli::kOk) << r.err;

  PipelineConfig cfg;
  cfg.n_features = 16;
  cfg.n_samples = 400;
  cfg.seed = 7;
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.0;
  const auto lib = approximate_trajectory(parse_field({"x2", "-x1"}, parse_box("-1.5:1.5,-1.5:1.5")), x0, 1.0, cfg);
  EXPECT_NE(r.out.find("\nsup_traj_error " + format_double(lib.sup_traj_error) + "\n"), std::string::npos) << r.out;
  EXPECT_EQ(load_network(path("net.json")), lib.network);
  EXPECT_EQ(read_file(path("report.txt")), r.out);
  EXPECT_EQ(first_line(read_file(path("pair.csv"))), "t,ref_x1,ref_x2,ltc_x1,ltc_x2");

  // Repeat run is bit-identical.
  const std::string pair = read_file(path("pair.csv"));
  const std::string net = read_file(path("net.json"));
  const Result again = run(args);
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(read_file(path("pair.csv")), pair);
  EXPECT_EQ(read_file(path("net.json")), net);
}

TEST_F(Cli, ErrorCategories) {
  const auto expect_error = [](const Result& r, int code, const std::string& category) {
    EXPECT_EQ(r.code, code) << r.err;
    EXPECT_EQ(first_line(r.err).rfind("ERROR " + category + ": ", 0), 0u) << r.err;
  };
  expect_error(run({}), cli::kUsage, "usage");
  expect_error(run({"frobnicate"}), cli::kUsage, "usage");
  expect_error(run({"bounds"}), cli::kUsage, "usage");
  expect_error(run({"bounds", "--net", path("missing.json")}), cli::kUsage, "io");

  { std::ofstream(path("broken.json")) << "{ \"neurons\": ["; }
  expect_error(run({"bounds", "--net", path("broken.json")}), cli::kParse, "parse");
  expect_error(run({"simulate", "--net", path("leak.json"), "--init", "1,2", "--dt", "0.1", "--t-end", "1", "--out",
                    path("x.csv")}),
               cli::kUsage, "usage");
  expect_error(run({"simulate", "--net", path("leak.json"), "--init", "1", "--dt", "0.1", "--t-end", "1", "--method",
                    "leapfrog", "--out", path("x.csv")}),
               cli::kParse, "parse");
  expect_error(run({"approximate", "--field", "x2;-x1 +", "--domain", "-1:1,-1:1", "--x0", "0,0", "--horizon", "1"}),
               cli::kParse, "parse");
  expect_error(run({"approximate", "--field", "-x1", "--domain", "-1:1", "--x0", "5", "--horizon", "1"}),
               cli::kNumeric, "numeric");
  expect_error(run({"simulate", "--net", path("leak.json"), "--init", "1", "--dt", "1000", "--t-end", "1000000",
                    "--method", "euler", "--out", path("x.csv")}),
               cli::kNumeric, "numeric");
}

}  // namespace
}  // namespace ltc
