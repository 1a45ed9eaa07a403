#include "superperiods/curve.hpp"

#include <cmath>
#include <complex>
#include <numeric>

namespace superperiods {

Complex to_ball(const ExactComplex& z, long prec) {
  return Complex(Real::from_mpq(z.re, prec), Real::from_mpq(z.im, prec));
}

int curve_genus(int m, int n) {
  int d = std::gcd(m, n);
  return ((m - 1) * (n - 1) - d + 1) / 2;
}

DifferentialBasis differential_basis(int m, int n) {
  int d = std::gcd(m, n);
  DifferentialBasis out;
  for (int j = 1; j < m; ++j)
    for (int i = 1; i < n; ++i)
      if (-m * i + j * n - d >= 0) out.push_back({i, j});
  return out;
}

namespace {

using QPoly = std::vector<ExactComplex>;

ExactComplex qmul(const ExactComplex& a, const ExactComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ExactComplex qdiv(const ExactComplex& a, const ExactComplex& b) {
  mpq_class d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

void qtrim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Remainder of a modulo b (b nonzero).
QPoly qrem(QPoly a, const QPoly& b) {
  qtrim(a);
  while (a.size() >= b.size() && !a.empty()) {
    ExactComplex q = qdiv(a.back(), b.back());
    std::size_t off = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) {
      ExactComplex t = qmul(q, b[k]);
      a[off + k].re -= t.re;
      a[off + k].im -= t.im;
    }
    a.back() = {0, 0};
    qtrim(a);
  }
  return a;
}

}  // namespace

bool exactly_separable(const std::vector<ExactComplex>& coeffs) {
  QPoly f = coeffs;
  qtrim(f);
  if (f.size() < 2) return false;
  QPoly df;
  for (std::size_t k = 1; k < f.size(); ++k) df.push_back({f[k].re * static_cast<long>(k), f[k].im * static_cast<long>(k)});
  QPoly a = f, b = df;
  while (!b.empty()) {
    QPoly r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;  // gcd is a nonzero constant
}

Curve Curve::from_exact(int m, const std::vector<ExactComplex>& coeffs, long working_bits) {
  std::vector<ExactComplex> c = coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() >= 4 && !exactly_separable(c)) throw InputError("f has a repeated root");
  std::vector<Complex> balls;
  for (auto& z : c) balls.push_back(to_ball(z, working_bits + 32));
  return build(m, std::move(balls), working_bits, c);
}

Curve Curve::from_balls(int m, const std::vector<Complex>& coeffs, long working_bits) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back().is_exact() && c.back().abs_upper().is_zero()) c.pop_back();
  return build(m, std::move(c), working_bits, std::nullopt);
}

Curve Curve::build(int m, std::vector<Complex> coeffs, long working_bits,
                   std::optional<std::vector<ExactComplex>> exact) {
  if (m < 2) throw InputError("m must be at least 2");
  if (coeffs.size() < 4) throw InputError("deg f must be at least 3");
  Curve cu;
  cu.m_ = m;
  cu.n_ = static_cast<int>(coeffs.size()) - 1;
  cu.delta_ = std::gcd(m, cu.n_);
  cu.genus_ = curve_genus(m, cu.n_);
  cu.prec_ = working_bits;
  if (coeffs.back().contains_zero()) throw PrecisionError("leading coefficient not certified nonzero");
  cu.leading_ = coeffs.back().with_prec(working_bits);
  Complex inv = coeffs.back().inv();
  for (auto& z : coeffs) z = (z * inv).with_prec(working_bits + 16);
  coeffs.back() = Complex::from_int(1, working_bits + 16);

  bool f0_zero, sum_zero;
  if (exact) {
    f0_zero = (*exact)[0].is_zero();
    sum_zero = (*exact)[cu.n_ - 1].is_zero();
  } else {
    f0_zero = coeffs[0].is_exact() && coeffs[0].abs_upper().is_zero();
    sum_zero = coeffs[cu.n_ - 1].is_exact() && coeffs[cu.n_ - 1].abs_upper().is_zero();
  }
  cu.root_sum_zero_ = sum_zero;
  cu.root_sum_nonzero_ = !sum_zero && !coeffs[cu.n_ - 1].contains_zero();

  IsolatedRoots r = poly_roots(coeffs, working_bits);
  cu.x_ = r.roots;
  if (f0_zero) {
    for (int k = 0; k < cu.n_; ++k) {
      if (cu.x_[k].contains(Complex(working_bits))) {
        cu.zero_branch_ = k;
        cu.x_[k] = Complex(working_bits);
      }
    }
    if (cu.zero_branch_ < 0) throw InternalError("root at 0 not isolated");
  }
  for (auto& z : coeffs) z = z.with_prec(working_bits);
  cu.coeffs_ = std::move(coeffs);
  return cu;
}

std::vector<Complex> EdgeFrame::others() const {
  std::vector<Complex> out = uminus;
  out.insert(out.end(), uplus.begin(), uplus.end());
  return out;
}

namespace {

EdgeFrame make_frame(const Curve& c, int ia, int ib, const Complex& b, bool one_sided) {
  EdgeFrame fr;
  fr.m = c.m();
  fr.n = c.n();
  fr.one_sided = one_sided;
  fr.a = c.branch_point(ia);
  fr.b = b;
  Complex diff = fr.b - fr.a;
  if (diff.contains_zero()) throw DomainError("edge invalid: endpoints coincide");
  fr.half = diff.mul_2si(-1);
  fr.center = (fr.b + fr.a) / diff;
  for (int k = 0; k < c.n(); ++k) {
    if (k == ia || k == ib) continue;
    Complex u = fr.u_of_x(c.branch_point(k));
    const Real& re = u.re();
    bool meets;
    if (one_sided)
      meets = u.im().contains_zero() && re.upper_double() > -1 && re.lower_double() <= 1;
    else
      meets = u.im().contains_zero() && re.upper_double() > -1 && re.lower_double() < 1;
    if (meets) throw DomainError("edge invalid");
    bool positive = re.is_positive() || (!re.is_negative() && mpfr_sgn(re.mid()) > 0);
    (positive ? fr.uplus : fr.uminus).push_back(u);
  }
  int np = static_cast<int>(fr.uplus.size());
  fr.r = one_sided ? np % 2 : (1 + np) % 2;
  fr.cab = pow(halfshift_root(fr.half, fr.m), fr.n) * Complex::exp_pi_i(fr.r, fr.m, c.prec());
  return fr;
}

// Double-precision argument of a factor; the sign of a tiny imaginary part
// survives the conversion as a signed zero.
double factor_arg(const Complex& z) {
  if (z.contains_zero()) throw DomainError("indeterminate branch: factor contains 0");
  if (mpfr_sgn(z.re().mid()) < 0 && z.im().contains_zero())
    throw DomainError("indeterminate branch: factor on the cut");
  return std::arg(z.to_cdouble());
}

}  // namespace

EdgeFrame edge_frame(const Curve& c, int ia, int ib) {
  if (ia == ib) throw DomainError("edge invalid: a = b");
  return make_frame(c, ia, ib, c.branch_point(ib), false);
}

EdgeFrame edge_frame_to_point(const Curve& c, int ia, const Complex& b) {
  return make_frame(c, ia, -1, b, true);
}

Complex ytab_eval(const EdgeFrame& fr, const Complex& u) {
  long prec = u.prec();
  Complex prod = Complex::from_int(1, prec);
  double args = 0;
  for (const auto& uk : fr.uminus) {
    Complex z = u - uk;
    args += factor_arg(z);
    prod = prod * z;
  }
  for (const auto& uk : fr.uplus) {
    Complex z = uk - u;
    args += factor_arg(z);
    prod = prod * z;
  }
  if (fr.uminus.empty() && fr.uplus.empty()) return prod;
  double ap = std::arg(prod.to_cdouble());
  bool flip = std::fabs(ap) > 0.75 * M_PI;
  Complex c = flip ? -prod : prod;
  double ac = std::arg(c.to_cdouble());
  double kq = (args - ac) / M_PI;
  long k = std::lround(kq);
  if (std::fabs(kq - static_cast<double>(k)) > 0.01 || ((k % 2 != 0) != flip))
    throw DomainError("indeterminate branch: winding count");
  return Complex::exp_pi_i(k, fr.m, prec) * principal_root(c, fr.m);
}

Complex ytab_eval_termwise(const EdgeFrame& fr, const Complex& u) {
  Complex prod = Complex::from_int(1, u.prec());
  for (const auto& uk : fr.uminus) prod = prod * principal_root(u - uk, fr.m);
  for (const auto& uk : fr.uplus) prod = prod * principal_root(uk - u, fr.m);
  return prod;
}

Complex branch_eval(const EdgeFrame& fr, const Complex& x) {
  Complex u = fr.u_of_x(x);
  Complex w = fr.one_sided ? u + 1 : 1 - u.sqr();
  return fr.cab * ytab_eval(fr, u) * principal_root(w, fr.m);
}

bool on_curve(const Curve& c, const Complex& x, const Complex& y) {
  return pow(y, c.m()).overlaps(c.f(x));
}

}  // namespace superperiods
