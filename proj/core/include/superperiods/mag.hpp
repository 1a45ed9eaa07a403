#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace superperiods {

// Nonnegative magnitude m * 2^e with m in [0.5, 1), used for ball radii.
// The exponent is a full int64 so radii like 2^-4000 stay representable.
// Every operation has a rounding direction: the plain operators round up,
// the *_lower helpers round down.
class Mag {
 public:
  constexpr Mag() = default;

  static Mag from_double(double x) {
    x = std::fabs(x);
    if (x == 0) return Mag();
    if (!std::isfinite(x)) return infinity();
    int k;
    double m = std::frexp(x, &k);
    return Mag(m, k);
  }
  static Mag pow2(int64_t e) { return Mag(0.5, e + 1); }
  static Mag infinity() {
    Mag r;
    r.m_ = 1.0;
    r.e_ = kInf;
    return r;
  }
  // m * 2^e for an arbitrary positive double m, rounded up.
  static Mag from_parts_upper(double m, int64_t e) { return normalize(std::fabs(m), e, true); }
  static Mag from_parts_lower(double m, int64_t e) { return normalize(std::fabs(m), e, false); }

  bool is_zero() const { return m_ == 0; }
  bool is_inf() const { return e_ == kInf; }
  bool is_finite() const { return e_ != kInf; }
  double mantissa() const { return m_; }
  int64_t exponent() const { return e_; }

  // Upper bound as a double; saturates to 2^-1000 below and +inf above.
  double to_double() const {
    if (is_zero()) return 0.0;
    if (is_inf() || e_ > 1024) return std::numeric_limits<double>::infinity();
    if (e_ < -1000) return std::ldexp(1.0, -1000);
    return std::ldexp(m_, static_cast<int>(e_));
  }
  // Lower bound as a double; flushes to zero below 2^-1000.
  double to_double_lower() const {
    if (is_zero() || e_ < -1000) return 0.0;
    if (is_inf()) return std::numeric_limits<double>::infinity();
    if (e_ > 1024) return std::numeric_limits<double>::max();
    return std::ldexp(m_, static_cast<int>(e_));
  }
  // Upper bound for log2 of the value (-inf for zero).
  double log2_upper() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    if (is_inf()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(e_) + up(std::log2(m_)) + 1e-12;
  }

  Mag mul_2exp(int64_t k) const {
    if (is_zero() || is_inf()) return *this;
    return Mag(m_, e_ + k);
  }

  friend Mag operator+(const Mag& a, const Mag& b) { return add(a, b, true); }
  friend Mag operator*(const Mag& a, const Mag& b) { return mul(a, b, true); }
  friend Mag operator/(const Mag& a, const Mag& b) { return div(a, b, true); }
  Mag& operator+=(const Mag& o) { return *this = *this + o; }
  Mag& operator*=(const Mag& o) { return *this = *this * o; }

  static Mag add_lower(const Mag& a, const Mag& b) { return add(a, b, false); }
  static Mag mul_lower(const Mag& a, const Mag& b) { return mul(a, b, false); }
  static Mag div_lower(const Mag& a, const Mag& b) { return div(a, b, false); }
  // max(a - b, 0), rounded down.
  static Mag sub_lower(const Mag& a, const Mag& b) {
    if (b.is_zero()) return a;
    if (a.is_inf()) return b.is_inf() ? Mag() : a;
    if (!(b < a)) return Mag();
    int64_t d = a.e_ - b.e_;
    if (d > 100) return normalize(std::nextafter(a.m_, 0.0), a.e_, false);
    double m = a.m_ - std::ldexp(b.m_, static_cast<int>(-d));
    if (m <= 0) return Mag();
    return normalize(std::nextafter(m, 0.0), a.e_, false);
  }
  // |a - b| upper bound is just a + b; this is max(a - b, 0) rounded up.
  static Mag sub_upper(const Mag& a, const Mag& b) {
    if (b.is_zero() || a.is_inf()) return a;
    if (!(b < a)) return Mag();
    int64_t d = a.e_ - b.e_;
    if (d > 100) return a;
    double m = a.m_ - std::ldexp(b.m_, static_cast<int>(-d));
    return normalize(up(m), a.e_, true);
  }
  static Mag sqrt_upper(const Mag& a) { return sqrt(a, true); }
  static Mag sqrt_lower(const Mag& a) { return sqrt(a, false); }

  friend bool operator<(const Mag& a, const Mag& b) {
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    if (a.is_inf()) return false;
    if (b.is_inf()) return true;
    if (a.e_ != b.e_) return a.e_ < b.e_;
    return a.m_ < b.m_;
  }
  friend bool operator>(const Mag& a, const Mag& b) { return b < a; }
  friend bool operator<=(const Mag& a, const Mag& b) { return !(b < a); }
  friend bool operator>=(const Mag& a, const Mag& b) { return !(a < b); }
  friend bool operator==(const Mag& a, const Mag& b) { return a.m_ == b.m_ && a.e_ == b.e_; }

  static Mag max(const Mag& a, const Mag& b) { return a < b ? b : a; }
  static Mag min(const Mag& a, const Mag& b) { return a < b ? a : b; }

  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

 private:
  static constexpr int64_t kInf = std::numeric_limits<int64_t>::max();

  constexpr Mag(double m, int64_t e) : m_(m), e_(e) {}

  static Mag normalize(double m, int64_t e, bool upward) {
    if (m == 0) return Mag();
    if (!std::isfinite(m)) return upward ? infinity() : Mag();
    int k;
    double mm = std::frexp(m, &k);
    return Mag(mm, e + k);
  }
  static Mag add(const Mag& a, const Mag& b, bool upward) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_inf() || b.is_inf()) return infinity();
    const Mag& hi = a.e_ >= b.e_ ? a : b;
    const Mag& lo = a.e_ >= b.e_ ? b : a;
    int64_t d = hi.e_ - lo.e_;
    if (d > 100) return upward ? normalize(up(hi.m_), hi.e_, true) : hi;
    double m = hi.m_ + std::ldexp(lo.m_, static_cast<int>(-d));
    return normalize(upward ? up(m) : std::nextafter(m, 0.0), hi.e_, upward);
  }
  static Mag mul(const Mag& a, const Mag& b, bool upward) {
    if (a.is_zero() || b.is_zero()) return Mag();
    if (a.is_inf() || b.is_inf()) return infinity();
    double m = a.m_ * b.m_;
    return normalize(upward ? up(m) : std::nextafter(m, 0.0), a.e_ + b.e_, upward);
  }
  static Mag div(const Mag& a, const Mag& b, bool upward) {
    if (a.is_zero()) return Mag();
    if (b.is_zero() || a.is_inf()) return upward ? infinity() : (b.is_zero() ? infinity() : a);
    if (b.is_inf()) return Mag();
    double m = a.m_ / b.m_;
    return normalize(upward ? up(m) : std::nextafter(m, 0.0), a.e_ - b.e_, upward);
  }
  static Mag sqrt(const Mag& a, bool upward) {
    if (a.is_zero() || a.is_inf()) return a;
    double m = a.m_;
    int64_t e = a.e_;
    if (e % 2 != 0) {
      m *= 2;
      e -= 1;
    }
    double s = std::sqrt(m);
    return normalize(upward ? up(s) : std::nextafter(s, 0.0), e / 2, upward);
  }

  double m_ = 0.0;
  int64_t e_ = 0;
};

}  // namespace superperiods
