#include <gtest/gtest.h>
#include <mpfr.h>

#include <sstream>

#include "cli_support.hpp"
#include "oracles.hpp"

using namespace superperiods;
using namespace superperiods::cli;

namespace {

bool eq(const ExactComplex& a, long re_num, long re_den, long im_num = 0, long im_den = 1) {
  return a.re == mpq_class(re_num, re_den) && a.im == mpq_class(im_num, im_den);
}

struct JobRun {
  int code;
  std::string out, err;
};

JobRun run(JobConfig cfg) {
  std::ostringstream o, e;
  int code = run_job(cfg, o, e);
  return {code, o.str(), e.str()};
}

Real real_from_string(const std::string& s, long prec) {
  Real r(prec);
  mpfr_set_str(r.mid_mut(), s.c_str(), 10, MPFR_RNDN);
  return r;
}

}  // namespace

TEST(Numbers, Literals) {
  EXPECT_TRUE(eq(parse_number("7"), 7, 1));
  EXPECT_TRUE(eq(parse_number("-3/4"), -3, 4));
  EXPECT_TRUE(eq(parse_number("1.25"), 5, 4));
  EXPECT_TRUE(eq(parse_number("-2.5e-1"), -1, 4));
  EXPECT_TRUE(eq(parse_number("(1,-2)"), 1, 1, -2, 1));
  EXPECT_TRUE(eq(parse_number("2-3/4i"), 2, 1, -3, 4));
  EXPECT_TRUE(eq(parse_number("i"), 0, 1, 1, 1));
  EXPECT_TRUE(eq(parse_number("-0.5i"), 0, 1, -1, 2));
  EXPECT_TRUE(eq(parse_number("1e2+1e-1i"), 100, 1, 1, 10));
  EXPECT_THROW(parse_number("1.2.3"), InputError);
  EXPECT_THROW(parse_number("abc"), InputError);
  EXPECT_THROW(parse_number("1/0"), InputError);
}

TEST(Polynomials, MonomialSyntax) {
  auto p = parse_polynomial("x^3 - x");
  ASSERT_EQ(p.size(), 4u);
  EXPECT_TRUE(eq(p[0], 0, 1));
  EXPECT_TRUE(eq(p[1], -1, 1));
  EXPECT_TRUE(eq(p[3], 1, 1));
  auto q = parse_polynomial("3/2x^4 + (1,2)*x^2 - 0.5 + x + 2x");
  ASSERT_EQ(q.size(), 5u);
  EXPECT_TRUE(eq(q[4], 3, 2));
  EXPECT_TRUE(eq(q[2], 1, 1, 2, 1));
  EXPECT_TRUE(eq(q[1], 3, 1));
  EXPECT_TRUE(eq(q[0], -1, 2));
  EXPECT_THROW(parse_polynomial("x^^2"), InputError);
  EXPECT_THROW(parse_polynomial("x^3 +"), InputError);
  EXPECT_THROW(parse_polynomial(""), InputError);
}

TEST(Polynomials, RootList) {
  auto p = parse_roots("1, -1, 0");
  auto q = parse_polynomial("x^3 - x");
  ASSERT_EQ(p.size(), q.size());
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_TRUE(p[k].re == q[k].re && p[k].im == q[k].im);
  auto r = parse_roots("i -i (2,0)");  // (x^2 + 1)(x - 2)
  EXPECT_TRUE(eq(r[0], -2, 1));
  EXPECT_TRUE(eq(r[1], 1, 1));
  EXPECT_TRUE(eq(r[2], -2, 1));
}

TEST(Divisors, Syntax) {
  auto d = parse_divisor("1*P2 -1*P<1>  2*(0.5,(1,2)) -3*inf<1> +1*inf2");
  ASSERT_EQ(d.size(), 5u);
  EXPECT_EQ(d[0].coeff, 1);
  EXPECT_EQ(d[0].kind, CurvePoint::Kind::Ramification);
  EXPECT_EQ(d[0].index, 2);
  EXPECT_EQ(d[1].coeff, -1);
  EXPECT_EQ(d[1].index, 1);
  EXPECT_EQ(d[2].kind, CurvePoint::Kind::Finite);
  EXPECT_TRUE(eq(d[2].x, 1, 2));
  EXPECT_TRUE(eq(d[2].y, 1, 1, 2, 1));
  EXPECT_EQ(d[3].kind, CurvePoint::Kind::Infinite);
  EXPECT_EQ(d[3].coeff, -3);
  EXPECT_EQ(d[4].index, 2);
  EXPECT_THROW(parse_divisor("1.5*P1"), InputError);
  EXPECT_THROW(parse_divisor("1*Q1"), InputError);
  EXPECT_THROW(parse_divisor("1*(1,2"), InputError);
}

TEST(Jobs, TauMatchesSquareLattice) {
  JobConfig cfg;
  cfg.command = "tau";
  cfg.m = 2;
  cfg.poly = "x^3-x";
  cfg.digits = 50;
  JobRun r = run(cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  const auto& t = j["tau"][0][0];
  long prec = 256;
  Complex tau(real_from_string(t["re"], prec), real_from_string(t["im"], prec));
  Complex jinv = oracle::j_invariant(tau);
  EXPECT_LT(abs(jinv - 1728L).upper_double(), 1e-40);
  EXPECT_EQ(j["precision"]["target_bits"], 167);
}

TEST(Jobs, DeterministicOutput) {
  JobConfig cfg;
  cfg.command = "periods";
  cfg.m = 3;
  cfg.poly = "x^4 + 2x + 1";
  cfg.digits = 30;
  JobRun a = run(cfg);
  cfg.threads = 3;
  JobRun b = run(cfg);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Jobs, HomologyEchoesChecks) {
  JobConfig cfg;
  cfg.command = "homology";
  cfg.m = 3;
  cfg.poly = "x^4 - 3x^2 + x + 5";
  JobRun r = run(cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["symplectic_check"].get<bool>());
  int g = j["curve"]["genus"];
  EXPECT_EQ(j["intersection_matrix"].size(), static_cast<std::size_t>(2 * g));
}

TEST(Jobs, TorsionDivisor) {
  JobConfig cfg;
  cfg.command = "abel-jacobi";
  cfg.m = 2;
  cfg.poly = "x^3 - 2x^2 - x + 2";
  cfg.divisor = "1*P2 -1*P1";
  JobRun r = run(cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  for (auto& v : j["reduced"]) {
    double twice = 2 * std::stod(v["value"].get<std::string>());
    EXPECT_LT(std::fabs(twice - std::round(twice)), 1e-30);
  }
}

TEST(Jobs, FinitePointOnNonMonicModel) {
  // y^2 = 4 (x^3 - x): (2, 2 sqrt 6) lies on it
  JobConfig cfg;
  cfg.command = "abel-jacobi";
  cfg.m = 2;
  cfg.poly = "4x^3 - 4x";
  cfg.divisor = "1*(2,4.898979485566356) -1*(2,-4.898979485566356)";
  JobRun r = run(cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  cfg.divisor = "1*(2,3) -1*P0";
  EXPECT_EQ(run(cfg).code, 3);
}

TEST(Jobs, ExitCodes) {
  JobConfig cfg;
  cfg.command = "tau";
  cfg.m = 2;
  cfg.poly = "x^3 - 2x^2 + x";  // double root at 1
  EXPECT_EQ(run(cfg).code, 3);
  cfg.poly = "x^2 + 1";
  EXPECT_EQ(run(cfg).code, 3);
  cfg.poly = "x^3 - x";
  cfg.command = "abel-jacobi";
  cfg.divisor = "1*P1";
  EXPECT_EQ(run(cfg).code, 3);
  cfg.divisor = "1*P7 -1*P0";
  EXPECT_EQ(run(cfg).code, 3);
  cfg.command = "nonsense";
  EXPECT_EQ(run(cfg).code, 3);
}

TEST(Retry, DoublesGuardThenGivesUp) {
  PipelineOptions opt;
  std::vector<int> scales;
  EXPECT_THROW(with_precision_retry(opt, [&](int s) {
                 scales.push_back(s);
                 throw PrecisionError("never enough");
               }),
               PrecisionExhausted);
  EXPECT_EQ(scales, (std::vector<int>{1, 2, 4, 8}));
  scales.clear();
  with_precision_retry(opt, [&](int s) {
    scales.push_back(s);
    if (s < 2) throw PrecisionError("first attempt short");
  });
  EXPECT_EQ(scales, (std::vector<int>{1, 2}));
}
