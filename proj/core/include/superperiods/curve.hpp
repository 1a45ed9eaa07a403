#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "superperiods/ball.hpp"
#include "superperiods/roots.hpp"

namespace superperiods {

// Exact complex rational, used for user input so the curve can be rebuilt at
// any precision.
struct ExactComplex {
  mpq_class re, im;
  bool is_zero() const { return re == 0 && im == 0; }
};

Complex to_ball(const ExactComplex& z, long prec);
// gcd(f, f') is constant, computed exactly over Q(i).
bool exactly_separable(const std::vector<ExactComplex>& coeffs);

struct Differential {
  int i = 1;  // power of x is i - 1
  int j = 1;  // power of 1/y
  bool operator==(const Differential& o) const { return i == o.i && j == o.j; }
};

// The holomorphic differentials x^{i-1} dx / y^j, sorted by (j, i).
using DifferentialBasis = std::vector<Differential>;

int curve_genus(int m, int n);
DifferentialBasis differential_basis(int m, int n);

// y^m = f(x) normalized to monic f. The original leading coefficient c_f is
// kept so callers can map points back (y_original = c_f^{1/m} y).
class Curve {
 public:
  // Coefficients ascending. Throws InputError if m < 2, deg f < 3 or f is
  // not separable at this precision (PrecisionError).
  static Curve from_exact(int m, const std::vector<ExactComplex>& coeffs, long working_bits);
  static Curve from_balls(int m, const std::vector<Complex>& coeffs, long working_bits);

  int m() const { return m_; }
  int n() const { return n_; }
  int delta() const { return delta_; }
  int genus() const { return genus_; }
  bool infinite_is_branch() const { return delta_ != m_; }
  long prec() const { return prec_; }

  const std::vector<Complex>& coeffs() const { return coeffs_; }  // monic
  const Complex& leading() const { return leading_; }
  const std::vector<Complex>& branch_points() const { return x_; }
  const Complex& branch_point(int k) const { return x_[k]; }
  // Index of the branch point at 0, or -1 if f(0) != 0.
  int zero_branch() const { return zero_branch_; }
  // True when the sum of the roots certainly vanishes (the x^{n-1}
  // coefficient is exactly zero).
  bool root_sum_is_zero() const { return root_sum_zero_; }
  bool root_sum_is_nonzero() const { return root_sum_nonzero_; }

  // zeta^k with zeta = e^{2 pi i / m}
  Complex zeta(long k) const { return Complex::exp_pi_i(2 * k, m_, prec_); }
  Complex f(const Complex& x) const { return poly_eval(coeffs_, x); }
  DifferentialBasis basis() const { return differential_basis(m_, n_); }

 private:
  static Curve build(int m, std::vector<Complex> coeffs, long working_bits,
                     std::optional<std::vector<ExactComplex>> exact);
  int m_ = 2, n_ = 3, delta_ = 1, genus_ = 1;
  long prec_ = 128;
  std::vector<Complex> coeffs_;
  Complex leading_;
  std::vector<Complex> x_;
  int zero_branch_ = -1;
  bool root_sum_zero_ = false, root_sum_nonzero_ = false;
};

// Analytic branch data for the segment [a, b]. For a two-sided frame both
// endpoints are branch points; a one-sided frame ends at an ordinary point b.
struct EdgeFrame {
  int m = 2, n = 3;
  bool one_sided = false;
  Complex a, b;
  Complex half;    // (b - a) / 2
  Complex center;  // (b + a) / (b - a)
  std::vector<Complex> uplus, uminus;  // transformed branch points by Re sign
  int r = 0;       // exponent of e^{i pi r / m} in cab
  Complex cab;

  Complex u_of_x(const Complex& x) const { return (x * 2 - a - b) / (b - a); }
  Complex x_of_u(const Complex& u) const { return half * (u + center); }
  // All transformed branch points except the endpoint(s).
  std::vector<Complex> others() const;
};

// Throws DomainError("edge invalid") if a branch point disk meets the open
// segment (for one-sided frames: the half-open (a, b]).
EdgeFrame edge_frame(const Curve& c, int ia, int ib);
EdgeFrame edge_frame_to_point(const Curve& c, int ia, const Complex& b);

// ytilde(u) = prod_{U-} (u - u_k)^{1/m} prod_{U+} (u_k - u)^{1/m}, computed
// with a single m-th root and an explicit winding count.
Complex ytab_eval(const EdgeFrame& fr, const Complex& u);
// Same value from m-th roots of each factor (slow reference path).
Complex ytab_eval_termwise(const EdgeFrame& fr, const Complex& u);
// y_{a,b}(x) = cab * ytilde(u) * (1 - u^2)^{1/m}, or (1 + u)^{1/m} one-sided.
Complex branch_eval(const EdgeFrame& fr, const Complex& x);

struct CurvePoint {
  enum class Kind { Finite, Ramification, Infinite };
  Kind kind = Kind::Ramification;
  Complex x, y;   // Finite
  int index = 0;  // Ramification: branch point index; Infinite: sheet 1..delta

  static CurvePoint finite(Complex x, Complex y) {
    CurvePoint p;
    p.kind = Kind::Finite;
    p.x = std::move(x);
    p.y = std::move(y);
    return p;
  }
  static CurvePoint ramification(int k) {
    CurvePoint p;
    p.kind = Kind::Ramification;
    p.index = k;
    return p;
  }
  static CurvePoint infinite(int s) {
    CurvePoint p;
    p.kind = Kind::Infinite;
    p.index = s;
    return p;
  }
};

// True if y^m and f(x) have overlapping enclosures.
bool on_curve(const Curve& c, const Complex& x, const Complex& y);

}  // namespace superperiods
