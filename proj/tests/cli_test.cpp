#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "output.hpp"
#include "perimeter/analytics.hpp"

namespace perimeter::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("perimeter_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(100.0), "100");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(9.4444444444444446), "9.44444444444");
  EXPECT_EQ(format_number(1.5e-7), "1.5e-07");
}

TEST_F(CliTest, AnalyticTable) {
  const Invocation r = invoke({"analytic", "--n", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 52u);
  EXPECT_EQ(ls[0], "N,expected_resets,percentage");
  EXPECT_EQ(ls[1], "1,0,100");
  const double ps = p_star(validate_params(5, 10, 1, 0.8));
  double prev = 101.0;
  for (int k = 1; k <= 50; ++k) {
    const auto cells = split(ls[static_cast<std::size_t>(k)]);
    EXPECT_NEAR(std::stod(cells[1]), expected_resets(k, ps), 1e-10);
    EXPECT_NEAR(std::stod(cells[2]), expected_percentage(k, ps), 1e-9);
    EXPECT_LE(std::stod(cells[2]), prev);
    prev = std::stod(cells[2]);
  }
  EXPECT_EQ(ls.back(), "inf,," + format_number(asymptotic_percentage(ps)));
}

TEST_F(CliTest, SimulateSingleGame) {
  const Invocation r = invoke({"simulate", "--trials", "1", "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "N,mean_pct,ci_lo,ci_hi,analytic_pct,asymptotic_pct");
  EXPECT_EQ(split(ls[1])[0], "1");
  EXPECT_EQ(split(ls[1])[1], "100");
}

TEST_F(CliTest, SimulateWritesTrialsAndIsDeterministic) {
  const std::string a = path("a.csv"), b = path("b.csv");
  ASSERT_EQ(invoke({"simulate", "--n", "40", "--trials", "12", "--seed", "5", "--threads", "1",
                    "--out", a}).code, 0);
  ASSERT_EQ(invoke({"simulate", "--n", "40", "--trials", "12", "--seed", "5", "--threads", "4",
                    "--out", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(path("a.trials.csv")), slurp(path("b.trials.csv")));
  const auto trials = lines(slurp(path("a.trials.csv")));
  EXPECT_EQ(trials.size(), 1u + 12u * 40u);
  EXPECT_EQ(trials[0], "trial,seed,N,pct");
  ASSERT_EQ(invoke({"simulate", "--n", "40", "--trials", "12", "--seed", "6", "--out", b}).code, 0);
  EXPECT_NE(slurp(a), slurp(b));
}

TEST_F(CliTest, JsonlRowsParse) {
  const std::string out = path("s.jsonl");
  ASSERT_EQ(invoke({"simulate", "--n", "5", "--trials", "3", "--format", "jsonl", "--out", out})
                .code,
            0);
  const auto ls = lines(slurp(out));
  ASSERT_EQ(ls.size(), 5u);
  const auto first = nlohmann::json::parse(ls[0]);
  EXPECT_EQ(first["N"], 1);
  EXPECT_EQ(first["mean_pct"], 100.0);
  EXPECT_TRUE(fs::exists(path("s.trials.jsonl")));
}

TEST_F(CliTest, SweepLayout) {
  const Invocation r = invoke({"sweep", "--nu", "0.75", "--grid", "rho_A=0.2:3:4", "--grid",
                        "rho_T=4:16:3", "--n", "20", "--n", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 13u);
  EXPECT_EQ(ls[0], "rho_A,rho_T,feasible,theta_max,p_star,pct_N20,pct_N200,pct_inf");
  EXPECT_EQ(ls[1], "0.2,4,0,,,,,");  // infeasible corner: empty cells
  int feasible = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto cells = split(ls[i]);
    ASSERT_EQ(cells.size(), 8u);
    if (cells[2] == "1") {
      ++feasible;
      for (std::size_t k = 3; k < 8; ++k) EXPECT_FALSE(cells[k].empty());
    }
  }
  EXPECT_GT(feasible, 0);
}

TEST_F(CliTest, SweepEmptyGridIsHeaderOnly) {
  const Invocation r = invoke({"sweep", "--grid", "rho_A=0.2:3:0", "--grid", "rho_T=4:16:5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rho_A,rho_T,feasible,theta_max,p_star,pct_N20,pct_inf\n");
}

TEST_F(CliTest, SweepThreadIndependent) {
  const std::vector<std::string> base{"sweep", "--nu", "0.75", "--grid", "rho_A=0.2:3:15",
                                      "--grid", "rho_T=4:16:13"};
  auto one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  EXPECT_EQ(invoke(one).out, invoke(four).out);
}

TEST_F(CliTest, InvalidInputsExitTwo) {
  Invocation r = invoke({"analytic", "--rho-t", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("second"), std::string::npos);
  r = invoke({"simulate", "--nu", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("speed"), std::string::npos);
  EXPECT_EQ(invoke({"sweep", "--grid", "rho_A=1:2"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--grid", "rho_A=1:2:3"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--grid", "rho_A=1:2:3", "--grid", "rho_A=1:2:3"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--trials", "0"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--n", "0"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--n", "3", "--n", "4"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--eps-capture", "0"}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"analytic", "--out", path("missing/dir/x.csv")}).code, 2);
}

TEST_F(CliTest, HelpExitsZero) {
  const Invocation r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--eps-capture"), std::string::npos);
}

TEST_F(CliTest, ConfigFileAndPrecedence) {
  const std::string cfg = path("run.cfg");
  std::ofstream(cfg) << "nu = 0.75\nn = 4\nrho-a = 1.5\n";
  Invocation r = invoke({"analytic", "--config", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 6u);
  const double ps = p_star(validate_params(5, 10, 1.5, 0.75));
  EXPECT_EQ(lines(r.out).back(), "inf,," + format_number(asymptotic_percentage(ps)));
  r = invoke({"analytic", "--config", cfg, "--n", "2"});
  EXPECT_EQ(lines(r.out).size(), 4u);

  std::ofstream(path("bad.cfg")) << "nu = 0.75\nspeed = 2\n";
  EXPECT_EQ(invoke({"analytic", "--config", path("bad.cfg")}).code, 2);
  EXPECT_EQ(invoke({"analytic", "--config", path("nope.cfg")}).code, 2);
}

TEST_F(CliTest, VerifyPassesAndFails) {
  Invocation r = invoke({"verify", "--n", "60", "--dt", "1e-4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(split(lines(r.out)[1]).back(), "1");
  // A coarse capture distance pushes the capture point past the bound.
  r = invoke({"verify", "--n", "60", "--dt", "1e-4", "--eps-capture", "0.05"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(split(lines(r.out)[1]).back(), "0");
  EXPECT_NE(r.err.find("verification failed"), std::string::npos);
}

TEST_F(CliTest, TraceCaptureAndBreach) {
  Invocation r = invoke({"trace", "--theta-a", "0.3", "--theta-d", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "# capture_radius=" + format_number(5.0 + 2.0 * 0.8 / 0.36));
  ASSERT_EQ(ls[2].rfind("# terminal=capture,", 0), 0u);
  const auto term = split(ls[2].substr(std::string("# terminal=").size()));
  EXPECT_NEAR(std::hypot(std::stod(term[1]), std::stod(term[2])), 9.444444444444, 5e-3);
  EXPECT_EQ(ls[3].rfind("# engagement_surface=", 0), 0u);
  EXPECT_EQ(ls[4], "t,x_A,y_A,x_D,y_D,phase");
  EXPECT_EQ(split(ls.back()).back(), "full");

  r = invoke({"trace", "--theta-a", "3.141592653589793", "--theta-d", "0", "--format", "jsonl"});
  ASSERT_EQ(r.code, 0);
  ls = lines(r.out);
  const auto meta = nlohmann::json::parse(ls.front());
  EXPECT_EQ(meta["terminal"]["kind"], "breach");
  EXPECT_EQ(meta["engagement_surface"].size(), 64u);
  const auto last = nlohmann::json::parse(ls.back());
  EXPECT_NEAR(std::hypot(last["x_A"].get<double>(), last["y_A"].get<double>()), 5.0, 1e-9);
  EXPECT_LE(std::hypot(last["x_D"].get<double>(), last["y_D"].get<double>()), 1e-3);
}

}  // namespace
}  // namespace perimeter::cli
