#include "superperiods/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace superperiods {

long Precision::bits_from_digits(long digits) {
  return static_cast<long>(std::ceil(static_cast<double>(digits) * std::log2(10.0) - 1e-9));
}

Complex poly_eval(const std::vector<Complex>& coeffs, const Complex& x) {
  Complex acc = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

namespace {

using cd = std::complex<double>;

void horner_d(const std::vector<cd>& a, cd z, cd& p, cd& dp) {
  p = a.back();
  dp = 0;
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
}

std::vector<cd> initial_guesses(const std::vector<cd>& a) {
  int n = static_cast<int>(a.size()) - 1;
  double bound = 0;
  for (int k = 1; k <= n; ++k) {
    double c = std::abs(a[n - k]);
    if (k == n) c /= 2;
    bound = std::max(bound, std::pow(c, 1.0 / k));
  }
  bound = 2 * std::max(bound, 1e-3);
  cd center = -a[n - 1] / static_cast<double>(n);
  double radius = std::max(bound / 2, 1e-3);
  std::vector<cd> z(n);
  for (int k = 0; k < n; ++k) z[k] = center + std::polar(radius, 2 * M_PI * k / n + 0.4);
  return z;
}

std::vector<cd> aberth_double(const std::vector<cd>& a) {
  int n = static_cast<int>(a.size()) - 1;
  std::vector<cd> z = initial_guesses(a);
  for (int iter = 0; iter < 1000; ++iter) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      cd p, dp;
      horner_d(a, z[i], p, dp);
      if (p == cd(0)) continue;
      cd w = p / dp;
      cd s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cd corr = w / (1.0 - w * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) continue;
      z[i] -= corr;
      worst = std::max(worst, std::abs(corr) / (1 + std::abs(z[i])));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

// One precision level of multiprecision Aberth iteration on midpoints.
void aberth_refine(const std::vector<Complex>& a, std::vector<Complex>& z, long prec) {
  int n = static_cast<int>(a.size()) - 1;
  Mag tol = Mag::pow2(-prec + 12);
  for (int iter = 0; iter < 12; ++iter) {
    Mag worst;
    for (int i = 0; i < n; ++i) {
      Complex p = a.back(), dp(prec);
      for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = (dp * z[i] + p).mid_ball();
        p = (p * z[i] + a[k]).mid_ball();
      }
      if (p.abs_upper().is_zero() || dp.contains_zero()) continue;
      Complex w = (p / dp).mid_ball();
      Complex s(prec);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex d = (z[i] - z[j]).mid_ball();
        if (d.contains_zero()) continue;
        s += d.inv().mid_ball();
      }
      Complex den = (1 - w * s).mid_ball();
      if (den.contains_zero()) continue;
      Complex corr = (w / den).mid_ball();
      z[i] = (z[i] - corr).mid_ball();
      Mag rel = corr.abs_upper() / Mag::max(Mag::from_double(1.0), z[i].abs_lower());
      worst = Mag::max(worst, rel);
    }
    if (worst < tol) break;
  }
}

// Weierstrass inclusion radii n |p(z_i)| / (|lc| prod |z_i - z_j|).
bool certify(const std::vector<Complex>& coeffs, std::vector<Complex>& z) {
  int n = static_cast<int>(coeffs.size()) - 1;
  Mag lc = coeffs.back().abs_lower();
  if (lc.is_zero()) return false;
  std::vector<Mag> radius(n);
  for (int i = 0; i < n; ++i) {
    Complex zi = z[i].mid_ball();
    Mag num = poly_eval(coeffs, zi).abs_upper();
    Mag den = lc;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      den = Mag::mul_lower(den, (zi - z[j].mid_ball()).abs_lower());
    }
    if (den.is_zero()) return false;
    radius[i] = (num / den) * Mag::from_double(static_cast<double>(n));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mag d = (z[i].mid_ball() - z[j].mid_ball()).abs_lower();
      if (!(radius[i] + radius[j] < d)) return false;
    }
  for (int i = 0; i < n; ++i) {
    z[i] = z[i].mid_ball();
    z[i].add_error(radius[i]);
  }
  return true;
}

}  // namespace

IsolatedRoots poly_roots(const std::vector<Complex>& coeffs_in, long working_bits) {
  std::vector<Complex> coeffs = coeffs_in;
  while (coeffs.size() > 1 && coeffs.back().is_exact() && coeffs.back().abs_upper().is_zero()) coeffs.pop_back();
  int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) throw InputError("polynomial has no roots");
  if (coeffs.back().contains_zero()) throw PrecisionError("leading coefficient not certified nonzero");

  std::vector<cd> ad(n + 1);
  bool finite = true;
  for (int k = 0; k <= n; ++k) {
    ad[k] = coeffs[k].to_cdouble() / coeffs[n].to_cdouble();
    finite = finite && std::isfinite(ad[k].real()) && std::isfinite(ad[k].imag());
  }
  std::vector<cd> zd = finite ? aberth_double(ad) : std::vector<cd>(n, cd(0.5, 0.5));

  long final_prec = working_bits + 32;
  std::vector<Complex> z;
  for (int i = 0; i < n; ++i) z.push_back(Complex::from_cdouble(zd[i], 64));

  long prec = 64;
  for (int attempt = 0; attempt < 4; ++attempt) {
    while (true) {
      prec = std::min(prec * 2, final_prec);
      std::vector<Complex> a;
      for (auto& c : coeffs) a.push_back(c.with_prec(prec).mid_ball());
      for (auto& zi : z) zi = zi.with_prec(prec).mid_ball();
      aberth_refine(a, z, prec);
      if (prec >= final_prec) break;
    }
    std::vector<Complex> a;
    for (auto& c : coeffs) a.push_back(c.with_prec(final_prec));
    std::vector<Complex> zc = z;
    if (certify(a, zc)) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        double ri = zc[i].re().to_double(), rj = zc[j].re().to_double();
        if (std::fabs(ri - rj) > 1e-10 * (1 + std::fabs(ri) + std::fabs(rj))) return ri < rj;
        return zc[i].im().to_double() < zc[j].im().to_double();
      });
      IsolatedRoots out;
      out.degree = n;
      for (auto i : order) out.roots.push_back(zc[i].with_prec(working_bits));
      return out;
    }
    final_prec *= 2;
  }
  throw PrecisionError("not separable at this precision");
}

}  // namespace superperiods
