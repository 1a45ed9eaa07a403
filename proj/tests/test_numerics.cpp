#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "superperiods/roots.hpp"

using namespace superperiods;

namespace {

// Midpoint of a 512-bit MPFR reference lies within the ball.
template <class F>
void expect_encloses(const Real& ball, F ref_fn, double x) {
  mpfr_t t, r;
  mpfr_inits2(512, t, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(t, x, MPFR_RNDN);
  ref_fn(r, t, MPFR_RNDN);
  Real ref = Real::from_mpfr(r, 512);
  EXPECT_TRUE(ball.contains(ref)) << x << " -> " << ball.mid_string(30);
  mpfr_clears(t, r, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

TEST(Ball, ElementaryEnclosures) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0.05, 3.0);
  for (int it = 0; it < 50; ++it) {
    double x = d(rng);
    Real b = Real::from_double(x, 200);
    b.set_rad(Mag::pow2(-190));
    expect_encloses(exp(b), mpfr_exp, x);
    expect_encloses(log(b), mpfr_log, x);
    expect_encloses(sin(b), mpfr_sin, x);
    expect_encloses(cos(b), mpfr_cos, x);
    expect_encloses(sinh(b), mpfr_sinh, x);
    expect_encloses(cosh(b), mpfr_cosh, x);
    expect_encloses(tanh(b), mpfr_tanh, x);
    expect_encloses(asinh(b), mpfr_asinh, x);
    expect_encloses(atan(b), mpfr_atan, x);
    expect_encloses(sqrt(b), mpfr_sqrt, x);
    if (x < 1) {
      expect_encloses(atanh(b), mpfr_atanh, x);
      expect_encloses(acos(b), mpfr_acos, x);
    }
  }
}

TEST(Ball, PrecisionMonotone) {
  Real lo = exp(sin(Real::from_int(3, 64)) * Real::pi(64));
  Real hi = exp(sin(Real::from_int(3, 256)) * Real::pi(256));
  EXPECT_TRUE(lo.contains(hi));
  EXPECT_LT(hi.rad().log2_upper(), -240);
}

TEST(Ball, TinyRadiiDoNotUnderflow) {
  Real x = Real::from_int(1, 4000) / 3;
  EXPECT_FALSE(x.rad().is_zero());
  EXPECT_LT(x.rad().log2_upper(), -3990);
}

TEST(PrincipalRoot, Examples) {
  Complex r = principal_root(Complex::from_int(-1, 128), 2);
  EXPECT_TRUE(r.re().contains_zero());
  EXPECT_TRUE(r.im().contains_int(1));

  Complex c = principal_root(Complex::from_int(8, 128), 3);
  EXPECT_TRUE(c.re().contains_int(2));
  EXPECT_TRUE(c.im().contains_zero());

  Complex z = principal_root(Complex::from_doubles(1, 1, 256), 5);
  Real pi = Real::pi(256);
  Real want_arg = pi / 20;
  Real want_abs = rootn(Real::from_int(2, 256), 10);
  EXPECT_TRUE(arg(z).overlaps(want_arg));
  EXPECT_TRUE(abs(z).overlaps(want_abs));
  EXPECT_LT(z.rad().log2_upper(), -240);
}

TEST(PrincipalRoot, PowerEnclosesInput) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-5, 5);
  std::uniform_int_distribution<int> md(2, 9);
  for (int it = 0; it < 1000; ++it) {
    double re = d(rng), im = d(rng);
    if (re < 0 && std::fabs(im) < 1e-3) im = 0.5;
    int m = md(rng);
    Complex x = Complex::from_doubles(re, im, 160);
    Complex r = principal_root(x, m);
    ASSERT_TRUE(pow(r, m).contains(x)) << re << " " << im << " m=" << m;
    double a = std::arg(r.to_cdouble());
    ASSERT_GT(a, -M_PI / m - 1e-12);
    ASSERT_LE(a, M_PI / m + 1e-12);
  }
}

TEST(PrincipalRoot, StraddlingCutThrows) {
  Complex x = Complex::from_doubles(-2, 0, 128);
  x.im().set_rad(Mag::from_double(1e-3));
  EXPECT_THROW(principal_root(x, 3), DomainError);
  Complex zero(128);
  zero.add_error(Mag::from_double(1e-9));
  EXPECT_THROW(principal_root(zero, 2), DomainError);
}

namespace {

std::vector<Complex> to_ball(const std::vector<mpq_class>& c, long prec) {
  std::vector<Complex> out;
  for (auto& q : c) out.emplace_back(Real::from_mpq(q, prec));
  return out;
}

}  // namespace

TEST(PolyRoots, SmallExamples) {
  auto r = poly_roots(to_ball({0, -1, 0, 1}, 128), 128);
  ASSERT_EQ(r.roots.size(), 3u);
  EXPECT_TRUE(r.roots[0].re().contains_int(-1));
  EXPECT_TRUE(r.roots[1].re().contains_int(0));
  EXPECT_TRUE(r.roots[2].re().contains_int(1));

  auto s = poly_roots(to_ball({1, 0, 1}, 128), 128);
  ASSERT_EQ(s.roots.size(), 2u);
  EXPECT_TRUE(s.roots[0].im().contains_int(-1));
  EXPECT_TRUE(s.roots[1].im().contains_int(1));
}

TEST(PolyRoots, Bernoulli30Residual) {
  long bits = 256;
  auto c = oracle::bernoulli_poly(30);
  auto r = poly_roots(to_ball(c, bits), bits);
  ASSERT_EQ(r.roots.size(), 30u);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_LT(oracle::residual_log2(c, r.roots[i], bits), -bits / 2.0);
    for (std::size_t j = i + 1; j < 30; ++j) EXPECT_FALSE(r.roots[i].overlaps(r.roots[j]));
  }
}

TEST(PolyRoots, SeededRootsRecovered) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> deg(1, 10), cd(-20, 20);
  for (int it = 0; it < 30; ++it) {
    int n = deg(rng);
    std::vector<std::pair<mpq_class, mpq_class>> seeds;
    while (static_cast<int>(seeds.size()) < n) {
      mpq_class re(cd(rng), 4), im(cd(rng), 4);
      re.canonicalize();
      im.canonicalize();
      bool dup = false;
      for (auto& s : seeds) dup = dup || (s.first == re && s.second == im);
      if (!dup) seeds.emplace_back(re, im);
    }
    long prec = 192;
    std::vector<Complex> poly{Complex::from_int(1, prec)};
    for (auto& s : seeds) {
      Complex root(Real::from_mpq(s.first, prec), Real::from_mpq(s.second, prec));
      std::vector<Complex> next(poly.size() + 1, Complex(prec));
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= poly[k] * root;
      }
      poly = next;
    }
    auto r = poly_roots(poly, prec);
    ASSERT_EQ(static_cast<int>(r.roots.size()), n);
    for (auto& s : seeds) {
      Complex root(Real::from_mpq(s.first, prec), Real::from_mpq(s.second, prec));
      int hits = 0;
      for (auto& disk : r.roots) hits += disk.contains(root) ? 1 : 0;
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(PolyRoots, DoubleRootNotSeparable) {
  EXPECT_THROW(poly_roots(to_ball({1, -2, 1}, 128), 128), PrecisionError);
}

TEST(FractionalParts, Examples) {
  auto f = fractional_parts({Real::from_double(2.25, 128), Real::from_double(-0.75, 128)});
  EXPECT_TRUE(f[0].value.contains(Real::from_double(0.25, 128)));
  EXPECT_TRUE(f[1].value.contains(Real::from_double(0.25, 128)));
  EXPECT_FALSE(f[0].ambiguous);

  Real three = Real::from_int(3, 128);
  three.set_rad(Mag::pow2(-120));
  auto g = fractional_parts({three});
  EXPECT_TRUE(g[0].ambiguous);
  EXPECT_LT(g[0].value.abs_upper().to_double(), 1e-30);
}
