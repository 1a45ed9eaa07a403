#include "superperiods/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace superperiods {

using cd = std::complex<double>;

namespace {

constexpr long kLow = 64;  // precision of the bound computations
constexpr double kSafety = 1 + 1e-10;
const double kInf = std::numeric_limits<double>::infinity();

// log of the integrand bound for a ball of u values; -inf never occurs, +inf
// when a branch point may be hit.
double log_upper(const BoundShape& s, const Complex& u) {
  double q = static_cast<double>(s.j) / s.m;
  double acc = 0;
  if (s.lmax > 0) acc += s.lmax * std::log(std::max(1.0, abs(u).upper_double()));
  if (s.one_sided) {
    double d = abs(1 - u).upper_double();
    if (d == 0) return -kInf;
    acc += q * std::log(d);
  }
  for (const auto& p : s.pts) {
    double lo = abs(u - p).lower_double();
    if (!(lo > 0)) return kInf;
    acc -= q * std::log(lo);
  }
  return acc;
}

double log_value(const BoundShape& s, cd u) {
  double q = static_cast<double>(s.j) / s.m;
  double acc = 0;
  if (s.lmax > 0) acc += s.lmax * std::log(std::max(1.0, std::abs(u)));
  if (s.one_sided) acc += q * std::log(std::abs(1.0 - u));
  for (const auto& p : s.pts) acc -= q * std::log(std::abs(u - p.to_cdouble()));
  return acc;
}

double finish(double log_bound) {
  if (log_bound == kInf) return kInf;
  return std::exp(log_bound + 1e-12 * (1 + std::fabs(log_bound))) * kSafety;
}

// Adaptive bracketing of a sup over parameter intervals. eval_ball maps
// [lo, hi] to an enclosure of the log bound, eval_mid to a sample value.
template <class Ball, class Mid>
double adaptive_sup(const std::vector<std::pair<double, double>>& start, Ball eval_ball, Mid eval_mid,
                    double log_floor) {
  struct Piece {
    double lo, hi, up;
    int depth;
    bool operator<(const Piece& o) const { return up < o.up; }
  };
  std::priority_queue<Piece> q;
  double lower = log_floor;
  for (auto& [lo, hi] : start) {
    q.push({lo, hi, eval_ball(lo, hi), 0});
    lower = std::max(lower, eval_mid(0.5 * (lo + hi)));
  }
  const double log2f = std::log(2.0);
  for (int it = 0; it < 40000 && !q.empty(); ++it) {
    Piece p = q.top();
    if (p.up <= lower + log2f) return std::max(p.up, log_floor);
    if (p.depth > 60) return p.up == kInf ? kInf : std::max(p.up, log_floor);
    q.pop();
    double mid = 0.5 * (p.lo + p.hi);
    q.push({p.lo, mid, eval_ball(p.lo, mid), p.depth + 1});
    q.push({mid, p.hi, eval_ball(mid, p.hi), p.depth + 1});
    lower = std::max({lower, eval_mid(0.5 * (p.lo + mid)), eval_mid(0.5 * (mid + p.hi))});
  }
  return q.empty() ? log_floor : std::max(q.top().up, log_floor);
}

Real ball_interval(double lo, double hi) { return Real::interval(lo, hi, kLow); }

Complex tanh_c(const Complex& z) {
  if (mpfr_sgn(z.re().mid()) >= 0) {
    Complex e = exp(z.mul_2si(1) * -1L);
    return (1 - e) / (e + 1);
  }
  Complex e = exp(z.mul_2si(1));
  return (e - 1) / (e + 1);
}

Complex sinh_c(const Complex& z) { return (exp(z) - exp(-z)).mul_2si(-1); }

cd tanh_d(cd z) {
  if (z.real() >= 0) {
    cd e = std::exp(-2.0 * z);
    return (1.0 - e) / (1.0 + e);
  }
  cd e = std::exp(2.0 * z);
  return (e - 1.0) / (e + 1.0);
}

}  // namespace

BoundShape bound_shape(const EdgeFrame& fr, int j, int lmax) {
  BoundShape s;
  s.m = fr.m;
  s.j = j;
  s.lmax = lmax;
  s.one_sided = fr.one_sided;
  for (const auto& p : fr.others()) s.pts.push_back(p.with_prec(kLow));
  return s;
}

double bound_on_segment(const BoundShape& s) {
  std::vector<std::pair<double, double>> start;
  const int pieces = 64;
  for (int k = 0; k < pieces; ++k) start.push_back({-1 + 2.0 * k / pieces, -1 + 2.0 * (k + 1) / pieces});
  auto ball = [&](double lo, double hi) { return log_upper(s, Complex(ball_interval(lo, hi))); };
  auto mid = [&](double t) { return log_value(s, cd(t, 0)); };
  return finish(adaptive_sup(start, ball, mid, -kInf));
}

double bound_on_boundary(const BoundShape& s, double r, double lambda) {
  double cr = std::cos(r);
  double tmax = std::asinh(20 / (lambda * cr));
  Real lam = Real::from_double(lambda, kLow);
  // Beyond |t| = tmax, u stays within rho of +-1.
  double x0 = lambda * std::sinh(tmax) * cr * (1 - 1e-12);
  double rho = 2 * std::exp(-2 * x0) / (1 - std::exp(-2 * x0)) * kSafety;
  double tails = -kInf;
  for (int sgn : {-1, 1}) {
    Complex disk = Complex::from_int(sgn, kLow);
    disk.add_error(Mag::from_double(rho));
    tails = std::max(tails, log_upper(s, disk));
  }
  if (tails == kInf) return kInf;
  double best = -kInf;
  for (int side : {-1, 1}) {
    Real im = Real::from_double(side * r, kLow);
    auto ball = [&](double lo, double hi) {
      Complex t(ball_interval(lo, hi), im);
      return log_upper(s, tanh_c(sinh_c(t) * lam));
    };
    auto mid = [&](double t) { return log_value(s, tanh_d(lambda * std::sinh(cd(t, side * r)))); };
    std::vector<std::pair<double, double>> start;
    const int pieces = 64;
    for (int k = 0; k < pieces; ++k)
      start.push_back({-tmax + 2 * tmax * k / pieces, -tmax + 2 * tmax * (k + 1) / pieces});
    double v = adaptive_sup(start, ball, mid, tails);
    if (v == kInf) return kInf;
    best = std::max(best, v);
  }
  return finish(best);
}

double bound_on_ellipse(const BoundShape& s, double r) {
  // |u| <= cosh r on the ellipse and dist(u_k, ellipse) >= cosh r_k - cosh r
  Real rr = Real::from_double(r, kLow);
  Real chr = cosh(rr);
  double acc = s.lmax * std::log(chr.upper_double());
  double q = static_cast<double>(s.j) / s.m;
  for (const auto& p : s.pts) {
    Real chk = (abs(p - 1) + abs(p + 1)).mul_2si(-1);
    double d = (chk - chr).lower_double();
    if (!(d > 0)) return kInf;
    acc -= q * std::log(d);
  }
  return finish(acc);
}

std::vector<StripPoint> de_strip_points(const std::vector<cd>& u, double lambda) {
  std::vector<StripPoint> out;
  for (cd uk : u) {
    cd w = std::atanh(uk);
    StripPoint best{kInf, 0};
    for (int l = -2; l <= 2; ++l) {
      cd t = std::asinh((w + cd(0, M_PI * l)) / lambda);
      double r = std::fabs(t.imag());
      if (r < best.r) best = {r, t.real()};
    }
    out.push_back(best);
  }
  return out;
}

double de_r_ceiling(double lambda) { return 0.9 * std::asin(std::min(1.0, M_PI / (2 * lambda))); }

double de_x_r(double r, double lambda) { return std::cos(r) * std::sqrt(M_PI / (2 * lambda * std::sin(r)) - 1); }

double de_b_const(double r, double alpha, double lambda) {
  Real rr = Real::from_double(r, kLow), lam = Real::from_double(lambda, kLow);
  Real a2 = Real::from_double(2 * alpha, kLow);
  Real sr, crr;
  sin_cos(rr, sr, crr);
  Real ys = lam * sr;
  Real xr = crr * sqrt(Real::pi(kLow) / (ys.mul_2si(1)) - 1);
  Real first = xr.mul_2si(-1) * (pow(cos(ys), -a2) + pow(xr, -a2));
  Real second = 1L / (a2 * pow(sinh(xr), a2));
  Real b = (first + second) * 2L / crr;
  return b.upper_double();
}

double de_truncation_nh(double alpha, double lambda, double M1, double d_nats) {
  return std::asinh((d_nats + std::log(std::pow(2.0, 2 * alpha + 1) * M1 / alpha)) / (2 * alpha * lambda));
}

double de_step(double r, double M2, double B, double d_nats) {
  return 2 * M_PI * r / (d_nats + std::log(2 * M2 * B + std::exp(-d_nats)));
}

long gc_points(double M, double r, double d_nats) {
  return static_cast<long>(std::ceil((d_nats + std::log(2 * M_PI * M) + 1) / (2 * r)));
}

std::vector<double> gc_r(const std::vector<cd>& u) {
  std::vector<double> out;
  for (cd uk : u) out.push_back(std::acosh(0.5 * (std::abs(uk - 1.0) + std::abs(uk + 1.0))));
  return out;
}

std::vector<DENode> de_nodes(double h, long n, double lambda, long prec) {
  std::vector<DENode> out;
  Real lam = Real::from_double(lambda, prec), hb = Real::from_double(h, prec);
  for (long k = 0; k <= n; ++k) {
    Real et = exp(hb * k);
    Real inv = 1L / et;
    Real sh = (et - inv).mul_2si(-1), ch = (et + inv).mul_2si(-1);
    Real e2 = exp(-(lam * sh).mul_2si(1));  // e^{-2s}
    Real den = e2 + 1;
    out.push_back({(1 - e2) / den, lam * ch * e2.mul_2si(2) / den.sqr(), e2});
  }
  return out;
}

std::vector<int> moment_orders(int m, const DifferentialBasis& basis) {
  std::vector<int> l(m, -1);
  for (auto& d : basis) l[d.j] = std::max(l[d.j], d.i - 1);
  return l;
}

const char* scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::GaussChebyshev: return "gauss-chebyshev";
    case SchemeKind::DoubleExponential: return "double-exponential";
    default: return "auto";
  }
}

namespace {

std::vector<cd> others_d(const EdgeFrame& fr) {
  std::vector<cd> out;
  for (auto& p : fr.others()) out.push_back(p.to_cdouble());
  return out;
}

// Error bound for the truncated DE sum; requires the weight to be decreasing
// beyond N h.
// log(e^x - 1) without overflow for large x
double log_expm1(double x) { return x > 30 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

double log2_sum(double a, double b) {
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log2(1 + std::exp2(lo - hi));
}

Mag mag_from_log2(double l) {
  if (l < -1e299) return Mag();
  if (!(l < 1e6)) return Mag::infinity();
  double e = std::floor(l) + 1;
  return Mag::from_parts_upper(std::exp2(l - e) * (1 + 1e-12), static_cast<int64_t>(e));
}

// Error bounds below are returned as log2 values.
double de_truncation_error(double alpha, double lambda, double M1, double nh) {
  double ln = 2 * alpha * M_LN2 + std::log(M1 / alpha) - 2 * alpha * lambda * std::sinh(nh);
  return (ln + std::log(kSafety)) / M_LN2;
}

double de_discretization_error(double r, double h, double M2, double B) {
  // sum over k != 0 gives 2 / (e^{2 pi r / h} - 1)
  double x = 2 * M_PI * r / h;
  return (std::log(2 * M2 * B) - log_expm1(x) + std::log(kSafety)) / M_LN2;
}

struct DEChoice {
  PowerReport rep;
  double h = 0, nh = 0;
};

DEChoice de_choose(const EdgeFrame& fr, int j, int lmax, const QuadOptions& opt, double& r0_out) {
  int m = fr.m;
  double lambda = opt.lambda, D = opt.d_nats;
  double alpha = 1 - static_cast<double>(j) / m;
  double q = static_cast<double>(j) / m;
  std::vector<cd> u = others_d(fr);
  std::vector<StripPoint> sp = de_strip_points(u, lambda);
  double ceiling = de_r_ceiling(lambda);
  double r0 = kInf;
  for (auto& p : sp) r0 = std::min(r0, p.r);
  r0_out = r0;
  double r;
  if (r0 >= ceiling) {
    r = ceiling;
  } else {
    if (!(r0 > 0)) throw DomainError("edge invalid: branch point on the segment");
    int K = 0;
    double logm0 = 0;
    for (std::size_t k = 0; k < sp.size(); ++k) {
      cd z(sp[k].t, sp[k].r);
      if (sp[k].r <= r0 * (1 + 1e-9)) {
        ++K;
        cd c = std::cosh(lambda * std::sinh(z));
        logm0 -= q * std::log(std::abs(lambda * std::cosh(z) / (c * c)));
      } else {
        double sgn = 1;
        cd zz = std::asinh(std::atanh(u[k]) / lambda);
        if (zz.imag() < 0) sgn = -1;
        cd near = tanh_d(lambda * std::sinh(cd(sp[k].t, sgn * r0)));
        logm0 -= q * std::log(std::max(1e-300, std::abs(u[k] - near)));
      }
    }
    double b0 = de_b_const(std::min(r0, ceiling), alpha, lambda);
    double A = 1 + m / (static_cast<double>(j) * K) * (D + std::log(2 * b0) + logm0);
    A = std::max(A, 2.0);
    double eta = r0 / A;
    for (int it = 0; it < 20; ++it) eta = r0 / std::max(1.0, A - std::log(eta));
    r = std::min(r0 - eta, ceiling);
    if (!(r > 0)) r = 0.5 * r0;
  }
  BoundShape shape = bound_shape(fr, j, lmax);
  double M1 = bound_on_segment(shape);
  double M2 = kInf;
  for (int tries = 0; tries < 30; ++tries) {
    M2 = bound_on_boundary(shape, r, lambda);
    if (std::isfinite(M2)) break;
    r *= 0.8;
  }
  if (!std::isfinite(M2)) throw DomainError("r too large: integrand bound failed");
  M2 = std::max(M2, M1);
  DEChoice c;
  c.rep.j = j;
  c.rep.lmax = lmax;
  c.rep.r = r;
  c.rep.M1 = M1;
  c.rep.M2 = M2;
  c.rep.B = de_b_const(r, alpha, lambda);
  c.h = de_step(r, M2, c.rep.B, D);
  c.nh = de_truncation_nh(alpha, lambda, M1, D);
  return c;
}

EdgeMoments integrate_de(const EdgeFrame& fr, const std::vector<int>& lmax, const QuadOptions& opt) {
  int m = fr.m;
  long prec = opt.prec;
  EdgeMoments out;
  out.moments.assign(m, {});
  out.report.scheme = SchemeKind::DoubleExponential;
  std::vector<DEChoice> choices;
  double h = kInf, nh = 0;
  for (int j = 1; j < m; ++j) {
    if (lmax[j] < 0) continue;
    DEChoice c = de_choose(fr, j, lmax[j], opt, out.report.r0);
    h = std::min(h, c.h);
    nh = std::max(nh, c.nh);
    choices.push_back(c);
  }
  if (choices.empty()) return out;
  long n = static_cast<long>(std::ceil(nh / h));
  // the weight must be decreasing beyond N h for the tail estimate
  for (auto& c : choices) {
    double alpha = 1 - static_cast<double>(c.rep.j) / m;
    while (2 * alpha * opt.lambda * std::cosh(n * h) * std::tanh(opt.lambda * std::sinh(n * h)) <= 1) ++n;
  }
  for (auto& c : choices) {
    double alpha = 1 - static_cast<double>(c.rep.j) / m;
    c.rep.log2_error = log2_sum(de_truncation_error(alpha, opt.lambda, c.rep.M1, n * h),
                                de_discretization_error(c.rep.r, h, c.rep.M2, c.rep.B));
  }
  out.report.h = h;
  out.report.points = 2 * n + 1;

  std::vector<DENode> nodes = de_nodes(h, n, opt.lambda, prec);
  for (int j = 1; j < m; ++j)
    if (lmax[j] >= 0) out.moments[j].assign(lmax[j] + 1, Complex(prec));
  int jmax = 0;
  for (int j = 1; j < m; ++j)
    if (lmax[j] >= 0) jmax = j;

  for (long k = 0; k <= n; ++k) {
    const DENode& nd = nodes[k];
    for (int sign : {1, -1}) {
      if (k == 0 && sign < 0) continue;
      Real u = sign > 0 ? nd.u : -nd.u;
      Complex uc(u);
      // v = w^{1/j} / ytilde with w the endpoint weight per power of 1/y
      // endpoint factor per power of 1/y, from 1 + u = 2 / (1 + e2) and
      // 1 - u = 2 e2 / (1 + e2)
      Real den = nd.e2 + 1;
      Real base;
      if (fr.one_sided)
        base = sign > 0 ? 2L / den : nd.e2.mul_2si(1) / den;
      else
        base = nd.e2.mul_2si(2) / den.sqr();
      Real wroot = m == 2 ? 1L / sqrt(base) : 1L / rootn(base, m);
      Complex v = ytab_eval(fr, uc).inv() * wroot;
      Complex vp = v;
      for (int j = 1; j <= jmax; ++j) {
        if (j > 1) vp = vp * v;
        if (lmax[j] < 0) continue;
        Complex term = vp * nd.weight;
        for (int l = 0; l <= lmax[j]; ++l) {
          if (l > 0) term = term * u;
          out.moments[j][l] += term;
        }
      }
    }
  }
  Real hb = Real::from_double(h, prec);
  std::size_t ci = 0;
  for (int j = 1; j < m; ++j) {
    if (lmax[j] < 0) continue;
    Mag err = mag_from_log2(choices[ci].rep.log2_error);
    for (auto& z : out.moments[j]) {
      z = z * hb;
      z.add_error(err);
    }
    out.report.powers.push_back(choices[ci].rep);
    ++ci;
  }
  return out;
}

EdgeMoments integrate_gc(const EdgeFrame& fr, const std::vector<int>& lmax, const QuadOptions& opt) {
  long prec = opt.prec;
  double D = opt.d_nats;
  EdgeMoments out;
  out.moments.assign(2, {});
  out.report.scheme = SchemeKind::GaussChebyshev;
  if (lmax.size() < 2 || lmax[1] < 0) return out;
  int L = lmax[1];
  std::vector<cd> u = others_d(fr);
  std::vector<double> rk = gc_r(u);
  double r0 = kInf;
  for (double x : rk) r0 = std::min(r0, x);
  out.report.r0 = r0;
  double r;
  if (rk.empty()) {
    r = 4;
  } else {
    int K = 0;
    double logm0 = 0;
    double chr0 = std::cosh(r0);
    for (std::size_t k = 0; k < rk.size(); ++k) {
      if (rk[k] <= r0 * (1 + 1e-9)) {
        ++K;
        double t = std::acos(u[k]).real();
        logm0 -= 0.5 * std::log(std::abs(std::sin(cd(t, -rk[k]))));
      } else {
        logm0 -= 0.5 * std::log(std::cosh(rk[k]) - chr0);
      }
    }
    double A = 1 + 2.0 / K * (D + std::log(2 * M_PI) + logm0);
    A = std::max(A, 2.0);
    r = r0 * (1 - 1 / (A + std::log(A / r0)));
    r = std::min(r, 4.0);
    if (!(r > 0)) r = 0.5 * r0;
  }
  BoundShape shape = bound_shape(fr, 1, L);
  double M = bound_on_ellipse(shape, r);
  while (!std::isfinite(M)) {
    r *= 0.8;
    M = bound_on_ellipse(shape, r);
  }
  long n = std::max(1L, gc_points(M, r, D));
  PowerReport rep;
  rep.j = 1;
  rep.lmax = L;
  rep.r = r;
  rep.M2 = M;
  rep.M1 = bound_on_segment(shape);
  rep.log2_error = (std::log(2 * M_PI * M) - log_expm1(2 * r * n) + std::log(kSafety)) / M_LN2;
  out.report.points = n;
  out.report.powers.push_back(rep);

  out.moments[1].assign(L + 1, Complex(prec));
  Real pi = Real::pi(prec);
  for (long k = 1; k <= (n + 1) / 2; ++k) {
    Real uk = cos(pi * (2 * k - 1) / (2 * n));
    bool paired = (2 * k - 1 != n);  // middle node u = 0 when n is odd
    for (int sign : {1, -1}) {
      if (sign < 0 && !paired) continue;
      Real uu = sign > 0 ? uk : -uk;
      if (!paired) uu = Real(prec);
      Complex term = ytab_eval(fr, Complex(uu)).inv();
      for (int l = 0; l <= L; ++l) {
        if (l > 0) term = term * uu;
        out.moments[1][l] += term;
      }
    }
  }
  Real w = pi / n;
  Mag err = mag_from_log2(rep.log2_error);
  for (auto& z : out.moments[1]) {
    z = z * w;
    z.add_error(err);
  }
  return out;
}

}  // namespace

EdgeMoments integrate_edge(const EdgeFrame& fr, const std::vector<int>& lmax, const QuadOptions& opt) {
  if (static_cast<int>(lmax.size()) != fr.m) throw InputError("moment order list must have m entries");
  if (!(opt.d_nats > 0)) throw InputError("target precision must be positive");
  SchemeKind k = opt.scheme;
  if (k == SchemeKind::Auto) k = (fr.m == 2 && !fr.one_sided) ? SchemeKind::GaussChebyshev : SchemeKind::DoubleExponential;
  if (k == SchemeKind::GaussChebyshev && (fr.m != 2 || fr.one_sided))
    throw InputError("gauss-chebyshev needs m = 2 and a two-sided edge");
  return k == SchemeKind::GaussChebyshev ? integrate_gc(fr, lmax, opt) : integrate_de(fr, lmax, opt);
}

}  // namespace superperiods
