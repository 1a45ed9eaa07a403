#include "superperiods/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace superperiods {

namespace {

mpfr_prec_t pmax(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

// RAII temporary for internal bound computations.
struct Tmp {
  mpfr_t v;
  explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

void set_mag(mpfr_ptr x, const Mag& m, mpfr_rnd_t rnd) {
  if (m.is_zero()) {
    mpfr_set_zero(x, 1);
  } else if (m.is_inf()) {
    mpfr_set_inf(x, 1);
  } else {
    mpfr_set_d(x, m.mantissa(), rnd);
    mpfr_mul_2si(x, x, m.exponent(), rnd);
  }
}

Mag mag_from_mpfr(mpfr_srcptr x, bool upward) {
  if (mpfr_zero_p(x)) return Mag();
  if (!mpfr_number_p(x)) return Mag::infinity();
  long e;
  double d = mpfr_get_d_2exp(&e, x, upward ? MPFR_RNDA : MPFR_RNDZ);
  return upward ? Mag::from_parts_upper(d, e) : Mag::from_parts_lower(d, e);
}

// e^r - 1 rounded up.
Mag expm1_upper(const Mag& r) {
  if (r.is_zero()) return Mag();
  if (r <= Mag::pow2(-10)) return r * (Mag::from_double(1.0) + r);
  double v = Mag::up(std::expm1(r.to_double()));
  return Mag::from_double(v * (1 + 1e-12));
}

Real make_nan(mpfr_prec_t p) {
  Real r(p);
  mpfr_set_zero(r.mid_mut(), 1);
  r.set_rad(Mag::infinity());
  return r;
}

// Bound for a double-evaluated derivative bound, with a generous safety
// factor covering libm error.
Mag safe(double v) {
  if (!(v >= 0) || !std::isfinite(v)) return Mag::infinity();
  return Mag::from_double(Mag::up(v * (1 + 1e-10)));
}

}  // namespace

Mag rounding_error(mpfr_srcptr x, int ternary) {
  if (ternary == 0) return Mag();
  if (!mpfr_number_p(x)) return Mag::infinity();
  if (mpfr_zero_p(x)) return Mag::pow2(mpfr_get_emin());
  return Mag::pow2(mpfr_get_exp(x) - static_cast<int64_t>(mpfr_get_prec(x)));
}

Real add_error(Real r, int ternary) {
  r.rad_ += rounding_error(r.mid_, ternary);
  return r;
}

std::string mag_string(const Mag& m) {
  if (m.is_zero()) return "0.00e+00";
  if (m.is_inf()) return "inf";
  Tmp t(64);
  set_mag(t.v, m, MPFR_RNDU);
  char* s = nullptr;
  mpfr_asprintf(&s, "%.2RUe", t.v);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(mid_, prec);
  mpfr_set_zero(mid_, 1);
}

Real::Real(const Real& o) : rad_(o.rad_) {
  mpfr_init2(mid_, o.prec());
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept : rad_(o.rad_) {
  *mid_ = *o.mid_;
  o.mid_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& o) {
  if (this == &o) return *this;
  if (mid_->_mpfr_d == nullptr) {
    mpfr_init2(mid_, o.prec());
  } else if (mpfr_get_prec(mid_) != o.prec()) {
    mpfr_set_prec(mid_, o.prec());
  }
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  rad_ = o.rad_;
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  std::swap(*mid_, *o.mid_);
  rad_ = o.rad_;
  return *this;
}

Real::~Real() {
  if (mid_->_mpfr_d != nullptr) mpfr_clear(mid_);
}

Real Real::from_int(long v, mpfr_prec_t prec) {
  Real r(prec);
  return add_error(std::move(r), mpfr_set_si(r.mid_, v, MPFR_RNDN));
}

Real Real::from_double(double v, mpfr_prec_t prec) {
  Real r(prec);
  return add_error(std::move(r), mpfr_set_d(r.mid_, v, MPFR_RNDN));
}

Real Real::from_mpq(const mpq_class& q, mpfr_prec_t prec) {
  Real r(prec);
  return add_error(std::move(r), mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN));
}

Real Real::from_mpfr(mpfr_srcptr x, mpfr_prec_t prec) {
  Real r(prec);
  return add_error(std::move(r), mpfr_set(r.mid_, x, MPFR_RNDN));
}

Real Real::pi(mpfr_prec_t prec) {
  Real r(prec);
  return add_error(std::move(r), mpfr_const_pi(r.mid_, MPFR_RNDN));
}

Real Real::ln2(mpfr_prec_t prec) {
  Real r(prec);
  return add_error(std::move(r), mpfr_const_log2(r.mid_, MPFR_RNDN));
}

Real Real::interval(double lo, double hi, mpfr_prec_t prec) {
  if (lo > hi) std::swap(lo, hi);
  Real r(prec);
  Tmp a(64), b(64);
  mpfr_set_d(a.v, lo, MPFR_RNDN);
  mpfr_set_d(b.v, hi, MPFR_RNDN);
  mpfr_add(r.mid_, a.v, b.v, MPFR_RNDN);
  mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
  Tmp d1(64), d2(64);
  mpfr_sub(d1.v, b.v, r.mid_, MPFR_RNDU);
  mpfr_sub(d2.v, r.mid_, a.v, MPFR_RNDU);
  mpfr_max(d1.v, d1.v, d2.v, MPFR_RNDU);
  r.rad_ = mag_from_mpfr(d1.v, true);
  return r;
}

Mag Real::mid_abs_upper() const { return mag_from_mpfr(mid_, true); }
Mag Real::mid_abs_lower() const { return mag_from_mpfr(mid_, false); }

double Real::upper_double() const {
  double m = mpfr_get_d(mid_, MPFR_RNDU);
  return Mag::up(m + rad_.to_double());
}

double Real::lower_double() const {
  double m = mpfr_get_d(mid_, MPFR_RNDD);
  return Mag::down(m - rad_.to_double());
}

bool Real::overlaps(const Real& o) const {
  Tmp d(pmax(*this, o));
  mpfr_sub(d.v, mid_, o.mid_, MPFR_RNDZ);
  return mag_from_mpfr(d.v, false) <= rad_ + o.rad_;
}

bool Real::contains(const Real& o) const {
  Tmp d(pmax(*this, o));
  mpfr_sub(d.v, mid_, o.mid_, MPFR_RNDA);
  return mag_from_mpfr(d.v, true) + o.rad_ <= rad_;
}

bool Real::contains_int(long v) const {
  Tmp d(prec() + 64);
  mpfr_sub_si(d.v, mid_, v, MPFR_RNDZ);
  return mag_from_mpfr(d.v, false) <= rad_;
}

Real Real::mid_ball() const {
  Real r(*this);
  r.rad_ = Mag();
  return r;
}

Real Real::with_prec(mpfr_prec_t p) const {
  Real r(p);
  int t = mpfr_set(r.mid_, mid_, MPFR_RNDN);
  r.rad_ = rad_ + rounding_error(r.mid_, t);
  return r;
}

Real Real::sqr() const {
  Real r(prec());
  int t = mpfr_sqr(r.mid_, mid_, MPFR_RNDN);
  Mag a = mid_abs_upper();
  r.rad_ = (a * rad_).mul_2exp(1) + rad_ * rad_ + rounding_error(r.mid_, t);
  return r;
}

Real Real::mul_2si(long k) const {
  Real r(prec());
  mpfr_mul_2si(r.mid_, mid_, k, MPFR_RNDN);
  r.rad_ = rad_.mul_2exp(k);
  return r;
}

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.mid_, mid_, MPFR_RNDN);
  r.rad_ = rad_;
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  r.rad_ = a.rad_ + b.rad_ + rounding_error(r.mid_, t);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  r.rad_ = a.rad_ + b.rad_ + rounding_error(r.mid_, t);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  Mag e = rounding_error(r.mid_, t);
  if (!a.rad_.is_zero()) e += b.mid_abs_upper() * a.rad_;
  if (!b.rad_.is_zero()) e += a.mid_abs_upper() * b.rad_;
  if (!a.rad_.is_zero() && !b.rad_.is_zero()) e += a.rad_ * b.rad_;
  r.rad_ = e;
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (b.contains_zero()) return make_nan(pmax(a, b));
  Real r(pmax(a, b));
  int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  Mag e = rounding_error(r.mid_, t);
  if (!a.rad_.is_zero() || !b.rad_.is_zero()) {
    Mag bl = b.mid_abs_lower();
    Mag blr = Mag::sub_lower(bl, b.rad_);
    if (!b.rad_.is_zero()) e += (a.mid_abs_upper() * b.rad_) / Mag::mul_lower(bl, blr);
    if (!a.rad_.is_zero()) e += a.rad_ / blr;
  }
  r.rad_ = e;
  return r;
}

Real operator+(const Real& a, long b) {
  Real r(a.prec());
  int t = mpfr_add_si(r.mid_, a.mid_, b, MPFR_RNDN);
  r.rad_ = a.rad_ + rounding_error(r.mid_, t);
  return r;
}

Real operator-(const Real& a, long b) {
  Real r(a.prec());
  int t = mpfr_sub_si(r.mid_, a.mid_, b, MPFR_RNDN);
  r.rad_ = a.rad_ + rounding_error(r.mid_, t);
  return r;
}

Real operator-(long a, const Real& b) {
  Real r(b.prec());
  int t = mpfr_si_sub(r.mid_, a, b.mid_, MPFR_RNDN);
  r.rad_ = b.rad_ + rounding_error(r.mid_, t);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r(a.prec());
  int t = mpfr_mul_si(r.mid_, a.mid_, b, MPFR_RNDN);
  r.rad_ = a.rad_ * Mag::from_double(static_cast<double>(std::labs(b)) * (1 + 1e-15)) +
           rounding_error(r.mid_, t);
  return r;
}

Real operator/(const Real& a, long b) {
  if (b == 0) return make_nan(a.prec());
  Real r(a.prec());
  int t = mpfr_div_si(r.mid_, a.mid_, b, MPFR_RNDN);
  r.rad_ = a.rad_ / Mag::from_double(static_cast<double>(std::labs(b)) * (1 - 1e-15)) +
           rounding_error(r.mid_, t);
  return r;
}

Real operator/(long a, const Real& b) { return Real::from_int(a, b.prec()) / b; }

Real& Real::operator+=(const Real& o) {
  if (o.prec() > prec()) return *this = *this + o;
  int t = mpfr_add(mid_, mid_, o.mid_, MPFR_RNDN);
  rad_ = rad_ + o.rad_ + rounding_error(mid_, t);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  if (o.prec() > prec()) return *this = *this - o;
  int t = mpfr_sub(mid_, mid_, o.mid_, MPFR_RNDN);
  rad_ = rad_ + o.rad_ + rounding_error(mid_, t);
  return *this;
}

Real& Real::operator*=(const Real& o) { return *this = *this * o; }

std::string Real::mid_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", std::max(digits - 1, 0), mid_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Real sqrt(const Real& x) {
  if (x.is_positive()) {
    Real r(x.prec());
    int t = mpfr_sqrt(r.mid_mut(), x.mid(), MPFR_RNDN);
    Mag e = rounding_error(r.mid(), t);
    if (!x.rad().is_zero()) e += (x.rad() / Mag::sqrt_lower(x.abs_lower())).mul_2exp(-1);
    r.set_rad(e);
    return r;
  }
  if (x.is_exact() && mpfr_zero_p(x.mid())) return Real(x.prec());
  Mag upper = mpfr_sgn(x.mid()) >= 0 ? x.abs_upper() : Mag::sub_upper(x.rad(), x.mid_abs_lower());
  if (upper.is_zero() && mpfr_sgn(x.mid()) < 0) throw DomainError("sqrt of a negative ball");
  Mag s = Mag::sqrt_upper(upper).mul_2exp(-1);
  Real r(x.prec());
  set_mag(r.mid_mut(), s, MPFR_RNDN);
  Mag err = s;
  if (r.prec() < 53) err += s;
  r.set_rad(err);
  return r;
}

Real exp(const Real& x) {
  Real r(x.prec());
  int t = mpfr_exp(r.mid_mut(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), t);
  if (!x.rad().is_zero()) e += (r.mid_abs_upper() + e) * expm1_upper(x.rad());
  r.set_rad(e);
  return r;
}

Real expm1(const Real& x) {
  Real r(x.prec());
  int t = mpfr_expm1(r.mid_mut(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), t);
  if (!x.rad().is_zero())
    e += (r.mid_abs_upper() + e + Mag::from_double(1.0)) * expm1_upper(x.rad());
  r.set_rad(e);
  return r;
}

Real log(const Real& x) {
  if (!x.is_positive()) throw DomainError("log of a non-positive ball");
  Real r(x.prec());
  int t = mpfr_log(r.mid_mut(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), t);
  if (!x.rad().is_zero()) e += x.rad() / x.abs_lower();
  r.set_rad(e);
  return r;
}

Real log1p(const Real& x) {
  Real one_plus = x + 1;
  if (!one_plus.is_positive()) throw DomainError("log1p argument <= -1");
  Real r(x.prec());
  int t = mpfr_log1p(r.mid_mut(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), t);
  if (!x.rad().is_zero()) e += x.rad() / one_plus.abs_lower();
  r.set_rad(e);
  return r;
}

namespace {

template <class F>
Real lipschitz1(const Real& x, F f) {
  Real r(x.prec());
  int t = f(r.mid_mut(), x.mid(), MPFR_RNDN);
  r.set_rad(x.rad() + rounding_error(r.mid(), t));
  return r;
}

double abs_hi(const Real& x) { return Mag::up(x.abs_upper().to_double()); }

}  // namespace

Real sin(const Real& x) { return lipschitz1(x, mpfr_sin); }
Real cos(const Real& x) { return lipschitz1(x, mpfr_cos); }
Real tanh(const Real& x) { return lipschitz1(x, mpfr_tanh); }
Real asinh(const Real& x) { return lipschitz1(x, mpfr_asinh); }
Real atan(const Real& x) { return lipschitz1(x, mpfr_atan); }

void sin_cos(const Real& x, Real& s, Real& c) {
  s = Real(x.prec());
  c = Real(x.prec());
  int t = mpfr_sin_cos(s.mid_mut(), c.mid_mut(), x.mid(), MPFR_RNDN);
  int ts = t & 3, tc = (t >> 2) & 3;
  s.set_rad(x.rad() + rounding_error(s.mid(), ts));
  c.set_rad(x.rad() + rounding_error(c.mid(), tc));
}

Real sinh(const Real& x) {
  Real r(x.prec());
  int t = mpfr_sinh(r.mid_mut(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), t);
  if (!x.rad().is_zero()) e += x.rad() * safe(std::cosh(abs_hi(x)));
  r.set_rad(e);
  return r;
}

Real cosh(const Real& x) {
  Real r(x.prec());
  int t = mpfr_cosh(r.mid_mut(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), t);
  if (!x.rad().is_zero()) e += x.rad() * safe(std::cosh(abs_hi(x)));
  r.set_rad(e);
  return r;
}

Real atanh(const Real& x) {
  double t = abs_hi(x);
  if (!(t < 1)) throw DomainError("atanh argument not inside (-1, 1)");
  Real r(x.prec());
  int tern = mpfr_atanh(r.mid_mut(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), tern);
  if (!x.rad().is_zero()) {
    double d = Mag::down(1 - Mag::up(t * t));
    if (!(d > 0)) {
      e = Mag::infinity();
    } else {
      e += x.rad() / Mag::from_double(Mag::down(d));
    }
  }
  r.set_rad(e);
  return r;
}

Real acos(const Real& x) {
  double t = abs_hi(x);
  if (!(t < 1)) throw DomainError("acos argument not inside (-1, 1)");
  Real r(x.prec());
  int tern = mpfr_acos(r.mid_mut(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), tern);
  if (!x.rad().is_zero()) {
    double d = Mag::down(1 - Mag::up(t * t));
    if (!(d > 0)) {
      e = Mag::infinity();
    } else {
      e += x.rad() / Mag::from_double(Mag::down(std::sqrt(d)));
    }
  }
  r.set_rad(e);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  mpfr_prec_t p = pmax(x, y);
  if (y.is_exact() && mpfr_zero_p(y.mid()) && x.is_negative()) return Real::pi(p);
  if (!x.is_positive() && y.contains_zero()) throw DomainError("indeterminate branch");
  Real r(p);
  int t = mpfr_atan2(r.mid_mut(), y.mid(), x.mid(), MPFR_RNDN);
  Mag e = rounding_error(r.mid(), t);
  Mag rho = x.rad() + y.rad();
  if (!rho.is_zero()) {
    Mag xl = x.abs_lower(), yl = y.abs_lower();
    Mag zl = Mag::sqrt_lower(Mag::add_lower(Mag::mul_lower(xl, xl), Mag::mul_lower(yl, yl)));
    if (rho < zl) {
      e += (rho / zl).mul_2exp(1);
    } else {
      e += Mag::from_double(7.0);
    }
  }
  r.set_rad(e);
  return r;
}

Real rootn(const Real& x, unsigned long n) {
  if (n == 1) return x;
  if (!x.is_positive()) throw DomainError("root of a non-positive ball");
  Real r(x.prec());
  int t = mpfr_rootn_ui(r.mid_mut(), x.mid(), n, MPFR_RNDN);
  Mag e = rounding_error(r.mid(), t);
  if (!x.rad().is_zero()) {
    Mag res = r.mid_abs_upper() + e;
    e += (x.rad() * res) / Mag::mul_lower(x.abs_lower(), Mag::from_double(static_cast<double>(n)));
  }
  r.set_rad(e);
  return r;
}

Real pow(const Real& x, const Real& q) { return exp(q * log(x)); }

Real pow(const Real& x, long k) {
  if (k < 0) return 1 / pow(x, -k);
  Real result = Real::from_int(1, x.prec());
  Real base = x;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1;
    if (k > 0) base = base.sqr();
  }
  return result;
}

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.mid_mut(), r.mid_mut(), MPFR_RNDN);
  return r;
}

Real floor_ball(const Real& x, bool* ambiguous) {
  Real f(x.prec());
  mpfr_floor(f.mid_mut(), x.mid());
  if (ambiguous != nullptr) {
    Tmp lo(x.prec() + 64), hi(x.prec() + 64), r(64);
    set_mag(r.v, x.rad(), MPFR_RNDU);
    mpfr_sub(lo.v, x.mid(), r.v, MPFR_RNDD);
    mpfr_add(hi.v, x.mid(), r.v, MPFR_RNDU);
    mpfr_floor(lo.v, lo.v);
    mpfr_floor(hi.v, hi.v);
    *ambiguous = !x.rad().is_zero() &&
                 (mpfr_cmp(lo.v, hi.v) != 0 || x.contains_int(mpfr_get_si(hi.v, MPFR_RNDN)));
  }
  return f;
}

Real hull(const Real& a, const Real& b) {
  mpfr_prec_t p = pmax(a, b);
  Tmp lo(p + 64), hi(p + 64), t(p + 64), r(64);
  set_mag(r.v, a.rad(), MPFR_RNDU);
  mpfr_sub(lo.v, a.mid(), r.v, MPFR_RNDD);
  mpfr_add(hi.v, a.mid(), r.v, MPFR_RNDU);
  set_mag(r.v, b.rad(), MPFR_RNDU);
  mpfr_sub(t.v, b.mid(), r.v, MPFR_RNDD);
  mpfr_min(lo.v, lo.v, t.v, MPFR_RNDD);
  mpfr_add(t.v, b.mid(), r.v, MPFR_RNDU);
  mpfr_max(hi.v, hi.v, t.v, MPFR_RNDU);
  Real out(p);
  mpfr_add(out.mid_mut(), lo.v, hi.v, MPFR_RNDN);
  mpfr_div_2ui(out.mid_mut(), out.mid(), 1, MPFR_RNDN);
  mpfr_sub(t.v, hi.v, out.mid(), MPFR_RNDU);
  mpfr_sub(lo.v, out.mid(), lo.v, MPFR_RNDU);
  mpfr_max(t.v, t.v, lo.v, MPFR_RNDU);
  out.set_rad(mag_from_mpfr(t.v, true));
  return out;
}

// ---------------------------------------------------------------- Complex

Complex Complex::exp_pi_i(long p, long q, mpfr_prec_t prec) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  long period = 2 * q;
  p %= period;
  if (p < 0) p += period;
  if (p == 0) return Complex::from_int(1, prec);
  if (2 * p == period) return Complex::from_int(-1, prec);
  if (4 * p == period) return Complex(Real(prec), Real::from_int(1, prec));
  if (4 * p == 3 * period) return Complex(Real(prec), Real::from_int(-1, prec));
  Real angle = Real::pi(prec + 16) * p / q;
  Real s(prec), c(prec);
  sin_cos(angle, s, c);
  return Complex(c.with_prec(prec), s.with_prec(prec));
}

Mag Complex::abs_upper() const {
  Mag a = re_.abs_upper(), b = im_.abs_upper();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Mag::sqrt_upper(a * a + b * b);
}

Mag Complex::abs_lower() const {
  Mag a = re_.abs_lower(), b = im_.abs_lower();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Mag::sqrt_lower(Mag::add_lower(Mag::mul_lower(a, a), Mag::mul_lower(b, b)));
}

Complex operator*(const Complex& a, const Complex& b) {
  return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

Complex Complex::sqr() const {
  return Complex(re_.sqr() - im_.sqr(), (re_ * im_).mul_2si(1));
}

Real Complex::norm() const { return re_.sqr() + im_.sqr(); }

Complex Complex::inv() const {
  if (contains_zero()) {
    Complex z(prec());
    z.add_error(Mag::infinity());
    return z;
  }
  Real n = norm();
  return Complex(re_ / n, -im_ / n);
}

Real abs(const Complex& z) {
  Real r(z.prec());
  int t = mpfr_hypot(r.mid_mut(), z.re().mid(), z.im().mid(), MPFR_RNDN);
  r.set_rad(z.re().rad() + z.im().rad() + rounding_error(r.mid(), t));
  return r;
}

Real arg(const Complex& z) { return atan2(z.im(), z.re()); }

Complex exp(const Complex& z) {
  Real e = exp(z.re());
  Real s(z.prec()), c(z.prec());
  sin_cos(z.im(), s, c);
  return Complex(e * c, e * s);
}

Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }

Complex sqrt(const Complex& z) {
  if (z.re().is_positive()) {
    Real t = sqrt((abs(z) + z.re()).mul_2si(-1));
    return Complex(t, z.im() / t.mul_2si(1));
  }
  if (z.im().contains_zero()) {
    if (z.im().is_exact() && mpfr_zero_p(z.im().mid()) && z.re().is_negative())
      return Complex(Real(z.prec()), sqrt(-z.re()));
    if (z.contains_zero() && z.re().is_exact() && z.im().is_exact()) return Complex(z.prec());
    throw DomainError("indeterminate branch");
  }
  Real t = sqrt((abs(z) - z.re()).mul_2si(-1));
  Real other = abs(z.im()) / t.mul_2si(1);
  if (z.im().is_negative()) return Complex(other, -t);
  return Complex(other, t);
}

Complex principal_root(const Complex& z, int m) {
  if (m < 1) throw DomainError("root order must be positive");
  if (m == 1) return z;
  if (m == 2) return sqrt(z);
  if (!z.re().is_positive() && z.im().contains_zero()) {
    if (z.im().is_exact() && mpfr_zero_p(z.im().mid()) && z.re().is_negative()) {
      Real mod = rootn(-z.re(), static_cast<unsigned long>(m));
      return Complex::exp_pi_i(1, m, z.prec()) * mod;
    }
    throw DomainError("indeterminate branch");
  }
  Real mod = rootn(abs(z), static_cast<unsigned long>(m));
  Real theta = arg(z) / m;
  Real s(z.prec()), c(z.prec());
  sin_cos(theta, s, c);
  return Complex(mod * c, mod * s);
}

Complex halfshift_root(const Complex& z, int m) {
  if (z.re().is_positive() || z.im().is_nonzero()) return principal_root(z, m);
  Complex w = -z;
  if (!w.re().is_positive()) throw DomainError("indeterminate branch");
  return Complex::exp_pi_i(1, m, z.prec()) * principal_root(w, m);
}

Complex pow(const Complex& z, long k) {
  if (k < 0) return pow(z, -k).inv();
  Complex result = Complex::from_int(1, z.prec());
  Complex base = z;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1;
    if (k > 0) base = base.sqr();
  }
  return result;
}

Complex pow(const Complex& z, const Real& q) { return exp(log(z) * q); }

Complex hull(const Complex& a, const Complex& b) {
  return Complex(hull(a.re(), b.re()), hull(a.im(), b.im()));
}

std::vector<Fractional> fractional_parts(const std::vector<Real>& v) {
  std::vector<Fractional> out;
  out.reserve(v.size());
  for (const Real& x : v) {
    bool amb = false;
    Real f = floor_ball(x, &amb);
    out.push_back({x - f, amb});
  }
  return out;
}

}  // namespace superperiods
