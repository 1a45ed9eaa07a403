#pragma once

#include <vector>

#include "superperiods/periods.hpp"

namespace superperiods {

// mu m + nu n = delta with nu > 0 minimal; Phi(r, t) = (1 / (r^nu t^M), r^mu / t^N)
// maps the model r^delta = prod(1 - x_k r^nu t^M) onto the curve.
struct InfinityData {
  long mu = 0, nu = 0;
  long Mq = 1, Nq = 1;  // m / delta, n / delta
  long delta = 1;

  // (x, y) = Phi(r, t)
  void phi(const Complex& r, const Complex& t, Complex& x, Complex& y) const;
};
InfinityData infinity_data(int m, int n);

struct DivisorTerm {
  CurvePoint point;
  long coeff = 0;
};

struct Divisor {
  std::vector<DivisorTerm> terms;
  long degree() const;
};

struct AJResult {
  std::vector<Complex> value;       // sum of coefficients times integrals from the base point
  std::vector<Fractional> reduced;  // coordinates in R^{2g}/Z^{2g}
  bool ambiguous() const;
};

// Integrals from the tree root P0 to arbitrary curve points. Finite points
// (x, y) live on the monic model y^m = f(x) / leading.
class AbelJacobi {
 public:
  AbelJacobi(const Curve& c, const SpanningTree& tree, const ElementaryData& elem, const QuadOptions& opt,
             int threads = 1);

  const InfinityData& infinity() const { return inf_; }
  // Sum of edge integrals along the tree path root -> k.
  const std::vector<Complex>& ramification(int k) const { return ram_[k]; }
  // Integral from P0 to (x, y). InputError if the point is off the curve or
  // x is a branch point.
  std::vector<Complex> finite(const Complex& x, const Complex& y) const;
  // Integral from P0 to the infinite point with sheet label s in 1..delta.
  std::vector<Complex> infinite(int s) const;
  std::vector<Complex> point(const CurvePoint& p) const;

  // Which construction infinite(s) uses: 'a' (delta = 1), 'b' or 'c'.
  char infinite_case() const;
  // Auxiliary points Q_i used for the infinite point s (cases b and c).
  std::vector<std::pair<Complex, Complex>> auxiliary_points(int s) const;
  // Index of the branch point used as anchor for a finite point at x.
  int anchor_for(const Complex& x) const;

 private:
  std::vector<Complex> ram_sum() const;
  std::vector<Complex> sum_finite(const std::vector<std::pair<Complex, Complex>>& pts) const;

  const Curve& c_;
  const SpanningTree& tree_;
  const ElementaryData& elem_;
  QuadOptions opt_;
  int threads_;
  InfinityData inf_;
  std::vector<std::vector<Complex>> ram_;
};

AJResult abel_jacobi(const AbelJacobi& aj, const PeriodData& p, const Divisor& d);

}  // namespace superperiods
