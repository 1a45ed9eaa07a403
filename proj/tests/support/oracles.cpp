#include "oracles.hpp"

#include <mpfr.h>

#include <cmath>

namespace oracle {

Real beta_half(const mpq_class& a, long prec) {
  long p = prec + 64;
  mpfr_t g1, g2, s, t;
  mpfr_inits2(p, g1, g2, s, t, static_cast<mpfr_ptr>(nullptr));
  mpq_class x = 1 - a, y = mpq_class(3, 2) - a;
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
  mpfr_gamma(g1, t, MPFR_RNDN);
  mpfr_set_q(t, y.get_mpq_t(), MPFR_RNDN);
  mpfr_gamma(g2, t, MPFR_RNDN);
  mpfr_const_pi(s, MPFR_RNDN);
  mpfr_sqrt(s, s, MPFR_RNDN);
  mpfr_mul(s, s, g1, MPFR_RNDN);
  mpfr_div(s, s, g2, MPFR_RNDN);
  Real r = Real::from_mpfr(s, p);
  // a handful of correctly rounded steps at p bits
  r.set_rad(superperiods::Mag::pow2(mpfr_get_exp(s) - p + 4));
  mpfr_clears(g1, g2, s, t, static_cast<mpfr_ptr>(nullptr));
  return r;
}

std::vector<mpq_class> bernoulli_poly(int n) {
  // Akiyama-Tanigawa gives B_k with B_1 = +1/2.
  std::vector<mpq_class> b(n + 1);
  std::vector<mpq_class> a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (int j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    b[m] = a[0];
  }
  if (n >= 1) b[1] = mpq_class(-1, 2);
  std::vector<mpq_class> c(n + 1);
  mpz_class binom = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom = binom * (n - k + 1) / k;
    c[k] = mpq_class(binom) * b[n - k];
    c[k].canonicalize();
  }
  return c;
}

double residual_log2(const std::vector<mpq_class>& coeffs, const Complex& x, long prec) {
  long p = 2 * prec;
  mpfr_t xr, xi, ar, ai, t1, t2, c;
  mpfr_inits2(p, xr, xi, ar, ai, t1, t2, c, static_cast<mpfr_ptr>(nullptr));
  mpfr_set(xr, x.re().mid(), MPFR_RNDN);
  mpfr_set(xi, x.im().mid(), MPFR_RNDN);
  mpfr_set_zero(ar, 1);
  mpfr_set_zero(ai, 1);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    mpfr_mul(t1, ar, xr, MPFR_RNDN);
    mpfr_mul(t2, ai, xi, MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_mul(t2, ar, xi, MPFR_RNDN);
    mpfr_mul(ai, ai, xr, MPFR_RNDN);
    mpfr_add(ai, ai, t2, MPFR_RNDN);
    mpfr_set_q(c, coeffs[k].get_mpq_t(), MPFR_RNDN);
    mpfr_add(ar, t1, c, MPFR_RNDN);
  }
  mpfr_hypot(t1, ar, ai, MPFR_RNDN);
  double out = mpfr_zero_p(t1) ? -1e9 : std::log2(mpfr_get_d(t1, MPFR_RNDN) + 0.0);
  if (!std::isfinite(out)) {
    long e;
    double d = mpfr_get_d_2exp(&e, t1, MPFR_RNDN);
    out = std::log2(d) + e;
  }
  mpfr_clears(xr, xi, ar, ai, t1, t2, c, static_cast<mpfr_ptr>(nullptr));
  return out;
}

namespace {

long sigma(long n, int k) {
  long s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    long e = n / d;
    long pd = 1, pe = 1;
    for (int i = 0; i < k; ++i) {
      pd *= d;
      pe *= e;
    }
    s += pd;
    if (e != d) s += pe;
  }
  return s;
}

}  // namespace

Complex j_invariant(const Complex& tau_in) {
  long prec = tau_in.prec();
  Complex t = tau_in;
  for (int it = 0; it < 200; ++it) {
    long k = std::lround(t.re().to_double());
    t = t - k;
    std::complex<double> d = t.to_cdouble();
    if (std::norm(d) < 1 - 1e-12) {
      t = -t.inv();
    } else {
      break;
    }
  }
  Complex two_pi_i(Real(prec), Real::pi(prec).mul_2si(1));
  Complex q = superperiods::exp(two_pi_i * t);
  double qa = q.abs_upper().to_double();
  // tail of sum n^6 |q|^n beyond N is at most twice its first term once the
  // ratio is below 1/2
  long n_terms = 1;
  while (true) {
    double n1 = static_cast<double>(n_terms + 1);
    double ratio = std::pow((n1 + 1) / n1, 6) * qa;
    double first = std::log2(1008.0) + 6 * std::log2(n1) + n1 * std::log2(qa);
    if (ratio < 0.5 && first < -static_cast<double>(prec) - 20) break;
    ++n_terms;
  }
  Complex e4 = Complex::from_int(1, prec), e6 = Complex::from_int(1, prec);
  Complex qn = q;
  for (long n = 1; n <= n_terms; ++n) {
    e4 += qn * (240 * sigma(n, 3));
    e6 -= qn * (504 * sigma(n, 5));
    qn = qn * q;
  }
  double n1 = static_cast<double>(n_terms + 1);
  superperiods::Mag tail =
      superperiods::Mag::from_double(std::exp2(std::log2(1008.0) + 6 * std::log2(n1) + n1 * std::log2(qa) + 1));
  e4.add_error(tail);
  e6.add_error(tail);
  Complex e43 = e4 * e4 * e4;
  return e43 * 1728 / (e43 - e6 * e6);
}

Complex termwise_root_product(const std::vector<Complex>& factors, int m) {
  Complex acc = Complex::from_int(1, factors.empty() ? 128 : factors[0].prec());
  for (const auto& f : factors) acc = acc * superperiods::principal_root(f, m);
  return acc;
}

std::vector<mpq_class> random_int_poly(std::mt19937_64& rng, int degree, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<mpq_class> c(degree + 1);
  for (int k = 0; k <= degree; ++k) c[k] = dist(rng);
  while (c[degree] == 0) c[degree] = dist(rng);
  return c;
}

}  // namespace oracle

namespace oracle {

superperiods::ExactComplex exact(long re, long im, long den) {
  superperiods::ExactComplex z{mpq_class(re, den), mpq_class(im, den)};
  z.re.canonicalize();
  z.im.canonicalize();
  return z;
}

std::vector<superperiods::ExactComplex> poly_from_roots(const std::vector<superperiods::ExactComplex>& roots) {
  std::vector<superperiods::ExactComplex> p{exact(1)};
  for (auto& r : roots) {
    std::vector<superperiods::ExactComplex> next(p.size() + 1, exact(0));
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k + 1].re += p[k].re;
      next[k + 1].im += p[k].im;
      next[k].re -= p[k].re * r.re - p[k].im * r.im;
      next[k].im -= p[k].re * r.im + p[k].im * r.re;
    }
    p = std::move(next);
  }
  return p;
}

}  // namespace oracle
