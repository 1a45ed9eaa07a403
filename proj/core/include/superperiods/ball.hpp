#pragma once

#include <mpfr.h>

#include <complex>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "superperiods/errors.hpp"
#include "superperiods/mag.hpp"

namespace superperiods {

// Real ball: an MPFR midpoint and a Mag radius. Every operation returns a
// ball containing all results obtainable from points of the input balls.
// The precision of a result is the maximum of the operand precisions.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 53);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real from_int(long v, mpfr_prec_t prec);
  static Real from_double(double v, mpfr_prec_t prec);
  static Real from_mpq(const mpq_class& q, mpfr_prec_t prec);
  static Real from_mpfr(mpfr_srcptr x, mpfr_prec_t prec);
  static Real pi(mpfr_prec_t prec);
  static Real ln2(mpfr_prec_t prec);
  // Ball [lo, hi] for doubles lo <= hi.
  static Real interval(double lo, double hi, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
  mpfr_srcptr mid() const { return mid_; }
  mpfr_ptr mid_mut() { return mid_; }
  const Mag& rad() const { return rad_; }
  void set_rad(const Mag& r) { rad_ = r; }
  void add_rad(const Mag& r) { rad_ += r; }

  double to_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
  Mag mid_abs_upper() const;
  Mag mid_abs_lower() const;
  Mag abs_upper() const { return mid_abs_upper() + rad_; }
  Mag abs_lower() const { return Mag::sub_lower(mid_abs_lower(), rad_); }
  // Upper / lower bounds of the ball as doubles (outward rounded).
  double upper_double() const;
  double lower_double() const;

  bool is_exact() const { return rad_.is_zero(); }
  bool is_finite() const { return rad_.is_finite() && mpfr_number_p(mid_); }
  bool is_positive() const { return mpfr_sgn(mid_) > 0 && rad_ < mid_abs_lower(); }
  bool is_negative() const { return mpfr_sgn(mid_) < 0 && rad_ < mid_abs_lower(); }
  bool is_nonzero() const { return is_positive() || is_negative(); }
  bool contains_zero() const { return !is_nonzero(); }
  bool overlaps(const Real& o) const;
  bool contains(const Real& o) const;
  bool contains_int(long v) const;

  Real mid_ball() const;
  Real with_prec(mpfr_prec_t p) const;
  Real sqr() const;
  Real mul_2si(long k) const;

  Real operator-() const;
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator-(long a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator/(long a, const Real& b);
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator*(long a, const Real& b) { return b * a; }
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o) { return *this = *this / o; }

  // Scientific decimal of the midpoint with `digits` significant digits.
  std::string mid_string(int digits) const;

 private:
  friend Real add_error(Real r, int ternary);
  mpfr_t mid_;
  Mag rad_;
};

// Radius bound of a rounded MPFR result (zero when the operation was exact).
Mag rounding_error(mpfr_srcptr x, int ternary);
// Scientific rendering of a magnitude with 3 significant digits, rounded up.
std::string mag_string(const Mag& m);

Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
void sin_cos(const Real& x, Real& s, Real& c);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real asinh(const Real& x);
Real atanh(const Real& x);
Real atan(const Real& x);
Real acos(const Real& x);
// Angle of (x, y) in (-pi, pi]; throws DomainError if the box meets (-inf, 0].
Real atan2(const Real& y, const Real& x);
// x^(1/n) for x > 0.
Real rootn(const Real& x, unsigned long n);
// x^q for x > 0.
Real pow(const Real& x, const Real& q);
Real pow(const Real& x, long k);
Real abs(const Real& x);
Real floor_ball(const Real& x, bool* ambiguous);
// Smallest ball containing both.
Real hull(const Real& a, const Real& b);

class Complex {
 public:
  explicit Complex(mpfr_prec_t prec = 53) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(const Real& re) : re_(re), im_(re.prec()) {}

  static Complex from_int(long v, mpfr_prec_t prec) { return Complex(Real::from_int(v, prec)); }
  static Complex from_doubles(double re, double im, mpfr_prec_t prec) {
    return Complex(Real::from_double(re, prec), Real::from_double(im, prec));
  }
  static Complex from_cdouble(std::complex<double> z, mpfr_prec_t prec) {
    return from_doubles(z.real(), z.imag(), prec);
  }
  // e^{i pi p / q}
  static Complex exp_pi_i(long p, long q, mpfr_prec_t prec);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }

  std::complex<double> to_cdouble() const { return {re_.to_double(), im_.to_double()}; }
  // Radius of a disk containing the box.
  Mag rad() const { return re_.rad() + im_.rad(); }
  Mag abs_upper() const;
  Mag abs_lower() const;
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_exact() const { return re_.is_exact() && im_.is_exact(); }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool is_nonzero() const { return !contains_zero(); }
  bool overlaps(const Complex& o) const { return re_.overlaps(o.re_) && im_.overlaps(o.im_); }
  bool contains(const Complex& o) const { return re_.contains(o.re_) && im_.contains(o.im_); }
  bool is_real() const { return im_.contains_zero(); }

  Complex mid_ball() const { return Complex(re_.mid_ball(), im_.mid_ball()); }
  Complex with_prec(mpfr_prec_t p) const { return Complex(re_.with_prec(p), im_.with_prec(p)); }
  Complex conj() const { return Complex(re_, -im_); }
  Complex mul_i() const { return Complex(-im_, re_); }
  Complex mul_2si(long k) const { return Complex(re_.mul_2si(k), im_.mul_2si(k)); }
  Complex sqr() const;
  Real norm() const;  // |z|^2
  Complex inv() const;
  void add_error(const Mag& r) {
    re_.add_rad(r);
    im_.add_rad(r);
  }

  Complex operator-() const { return Complex(-re_, -im_); }
  friend Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re_ + b.re_, a.im_ + b.im_); }
  friend Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re_ - b.re_, a.im_ - b.im_); }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b) { return a * b.inv(); }
  friend Complex operator+(const Complex& a, const Real& b) { return Complex(a.re_ + b, a.im_); }
  friend Complex operator-(const Complex& a, const Real& b) { return Complex(a.re_ - b, a.im_); }
  friend Complex operator-(const Real& a, const Complex& b) { return Complex(a - b.re_, -b.im_); }
  friend Complex operator*(const Complex& a, const Real& b) { return Complex(a.re_ * b, a.im_ * b); }
  friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
  friend Complex operator/(const Complex& a, const Real& b) { return Complex(a.re_ / b, a.im_ / b); }
  friend Complex operator+(const Complex& a, long b) { return Complex(a.re_ + b, a.im_); }
  friend Complex operator-(const Complex& a, long b) { return Complex(a.re_ - b, a.im_); }
  friend Complex operator-(long a, const Complex& b) { return Complex(a - b.re_, -b.im_); }
  friend Complex operator*(const Complex& a, long b) { return Complex(a.re_ * b, a.im_ * b); }
  friend Complex operator/(const Complex& a, long b) { return Complex(a.re_ / b, a.im_ / b); }
  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator*=(const Real& o) {
    re_ *= o;
    im_ *= o;
    return *this;
  }

 private:
  Real re_, im_;
};

Real abs(const Complex& z);
// Principal argument in (-pi, pi]; DomainError if the box meets (-inf, 0].
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
// Principal square root; DomainError if the box meets (-inf, 0].
Complex sqrt(const Complex& z);
// Principal m-th root, arg in (-pi/m, pi/m]. A box meeting the negative real
// axis (or containing 0) raises DomainError("indeterminate branch"), except
// that exact negative reals are accepted (arg = pi).
Complex principal_root(const Complex& z, int m);
// An m-th root of z that equals the principal one off the cut and switches to
// e^{i pi/m} * root(-z) near the negative real axis. Never throws unless 0 is
// in the box.
Complex halfshift_root(const Complex& z, int m);
Complex pow(const Complex& z, long k);
// z^q via exp(q log z) with the principal log.
Complex pow(const Complex& z, const Real& q);
Complex hull(const Complex& a, const Complex& b);

struct Fractional {
  Real value;
  // The ball touches an integer, so the representative in [0,1) is not unique.
  bool ambiguous = false;
};

// x - floor(x) for each entry, radius propagated.
std::vector<Fractional> fractional_parts(const std::vector<Real>& v);

}  // namespace superperiods
