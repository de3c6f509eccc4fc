#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "t4dyn/commands.hpp"

using namespace t4;
using namespace t4::cli;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string cell; std::getline(is, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_binary(const std::string& args) {
  Run r;
  const std::string cmd = std::string(T4DYN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST(Table1Command, DefaultRowsMatchPublishedValues) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_table1(Table1Options{}, out, err), kOk) << err.str();
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], "h,I,H0_min,H0_max,H1_min,H1_max,H0_drift,H1_drift");
  const double published[] = {-2.76812630, -2.76366763, -2.76340793, -2.76339200,
                              -2.76339101, -2.76339095, -2.76339094};
  for (int i = 0; i < 7; ++i) {
    const auto cells = split(rows[i + 1]);
    ASSERT_EQ(cells.size(), 8u);
    EXPECT_NEAR(std::stod(cells[1]), published[i], 1e-6) << rows[i + 1];
  }
  EXPECT_EQ(out.str().find('\r'), std::string::npos);
}

TEST(Table1Command, SingleStepAndDeterminism) {
  Table1Options opt;
  opt.hs = {0.5};
  std::ostringstream a, b, err;
  ASSERT_EQ(cmd_table1(opt, a, err), kOk);
  ASSERT_EQ(cmd_table1(opt, b, err), kOk);
  EXPECT_EQ(a.str(), b.str());
  const auto rows = lines(a.str());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(split(rows[1])[1]), -2.76812630, 1e-6);
}

TEST(Table1Command, MisalignedStepIsUsageError) {
  Table1Options opt;
  opt.hs = {0.3};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_table1(opt, out, err), kUsage);
  EXPECT_NE(err.str().find("35/h"), std::string::npos) << err.str();
  EXPECT_TRUE(out.str().empty());
}

TEST(ScanCommand, GridIncludingUnitAlpha) {
  ScanOptions opt;
  opt.alpha_min = 0.5;
  opt.alpha_max = 1.5;
  opt.steps = 3;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_scan(opt, out, err), kOk) << err.str();
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "alpha,B,I_phase,I_quad,delta");
  const auto mid = split(rows[2]);
  EXPECT_EQ(std::stod(mid[0]), 1.0);
  EXPECT_NEAR(std::stod(mid[3]), -2.7634, 1e-4);
  EXPECT_NEAR(std::stod(mid[1]), 2.794, 1e-3);
  EXPECT_LE(std::stod(mid[4]), 5e-3);
}

TEST(ScanCommand, ThreadCountDoesNotChangeOutput) {
  ScanOptions opt;
  opt.alpha_min = 1.0;
  opt.alpha_max = 4.0;
  opt.steps = 4;
  opt.threads = 1;
  std::ostringstream a, b, err;
  ASSERT_EQ(cmd_scan(opt, a, err), kOk);
  opt.threads = 3;
  ASSERT_EQ(cmd_scan(opt, b, err), kOk);
  EXPECT_EQ(a.str(), b.str());
}

TEST(ScanCommand, TooFewSteps) {
  ScanOptions opt;
  opt.steps = 1;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_scan(opt, out, err), kUsage);
}

TEST(ReduceCommand, SubriemannianAndAllOnes) {
  std::ostringstream out, err;
  ReduceOptions opt;
  opt.format = Format::csv;
  ASSERT_EQ(cmd_reduce(opt, out, err), kOk);
  auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "lambda,mu,xi,omega,nu,c,alpha,xi_nu_ratio");
  EXPECT_EQ(split(rows[1])[6], "1");

  std::ostringstream out2;
  opt.metric = DiagonalMetric<double>::riemannian();
  ASSERT_EQ(cmd_reduce(opt, out2, err), kOk);
  EXPECT_NEAR(std::stod(split(lines(out2.str())[1])[6]), std::sqrt(3.0), 1e-12);
}

TEST(ReduceCommand, SingularOrbit) {
  ReduceOptions opt;
  opt.k1 = 0;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_reduce(opt, out, err), kUsage);
  EXPECT_NE(err.str().find("regular coadjoint orbit requires k1*k2 != 0"), std::string::npos) << err.str();
}

TEST(EulerCommand, ZeroInitialPointStaysAtRest) {
  EulerOptions opt;
  opt.T = 1.0;
  opt.stride = 100;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_euler(opt, out, err), kOk);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 13u);  // header, t = 0, 0.1, ..., 1, telemetry
  EXPECT_EQ(rows[0], "t,pu,pv,pw,px,py,pz,K1,K2,H");
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    for (std::size_t c = 1; c < cells.size(); ++c) EXPECT_EQ(cells[c], "0") << rows[i];
  }
  EXPECT_EQ(rows.back(), "# max_abs_dK1=0,max_abs_dK2=0,max_abs_dH=0");
}

TEST(EulerCommand, CasimirsConservedOnRandomOrbit) {
  EulerOptions opt;
  opt.p0 << 0.3, -0.7, 0.9, 0.2, -0.4, 0.6;
  opt.stride = 1000;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_euler(opt, out, err), kOk);
  const auto tail = lines(out.str()).back();
  ASSERT_EQ(tail.rfind("# max_abs_dK1=", 0), 0u);
  const auto cells = split(tail.substr(2));
  for (const auto& kv : cells) EXPECT_LE(std::stod(kv.substr(kv.find('=') + 1)), 1e-8) << kv;
}

TEST(VerifyCommand, PoissonPassesAndUnknownFails) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("poisson", out, err), kOk);
  EXPECT_NE(out.str().find("poisson,jacobi_identity_basis_triples,PASS"), std::string::npos);
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_verify("nonsense", out2, err2), kUsage);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("--help").status, 0);
  EXPECT_EQ(run_binary("").status, kUsage);
  EXPECT_EQ(run_binary("--bogus").status, kUsage);
  EXPECT_EQ(run_binary("table1 --h 0.3").status, kUsage);
  EXPECT_EQ(run_binary("scan --steps 1").status, kUsage);
  EXPECT_EQ(run_binary("reduce --k1 0").status, kUsage);
  EXPECT_EQ(run_binary("reduce --format xml").status, kUsage);
  EXPECT_EQ(run_binary("verify nonsense").status, kUsage);
  EXPECT_EQ(run_binary("euler --p 1 2 3").status, kUsage);
}

TEST(Binary, Outputs) {
  const auto t = run_binary("table1 --h 0.5");
  EXPECT_EQ(t.status, 0);
  EXPECT_EQ(lines(t.out).size(), 2u);

  const auto r = run_binary("reduce --metric riemannian --k1 1 --k2 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("alpha = 1.7320508075688772"), std::string::npos) << r.out;

  const auto e = run_binary("euler --p 0 0 0 0 0 0 --T 0.01 --stride 5");
  EXPECT_EQ(e.status, 0);
  EXPECT_EQ(lines(e.out).size(), 5u);

  const auto v = run_binary("verify poisson");
  EXPECT_EQ(v.status, 0);
  EXPECT_NE(v.out.find("# passed=6 failed=0"), std::string::npos);
}
