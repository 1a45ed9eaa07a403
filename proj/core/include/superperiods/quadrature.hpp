#pragma once

#include <complex>
#include <string>
#include <vector>

#include "superperiods/ball.hpp"
#include "superperiods/curve.hpp"

namespace superperiods {

enum class SchemeKind { Auto, DoubleExponential, GaussChebyshev };

struct QuadOptions {
  double lambda = 1.5707963267948966;  // pi / 2
  double d_nats = 0;                   // requested error e^{-D}
  long prec = 128;                     // node evaluation precision
  SchemeKind scheme = SchemeKind::Auto;
};

// Error analysis for one power j of 1/y on one edge.
struct PowerReport {
  int j = 0;
  int lmax = 0;
  double r = 0, M1 = 0, M2 = 0, B = 0;
  // log2 of the truncation + discretization bound added to every radius;
  // kept in log form because the bound drops far below the double range
  double log2_error = -1e300;
};

struct EdgeReport {
  SchemeKind scheme = SchemeKind::DoubleExponential;
  double r0 = 0;
  double h = 0;  // DE step (0 for GC)
  long points = 0;
  std::vector<PowerReport> powers;
};

// moments[j][l] = integral over [-1, 1] of u^l w_j(u) / ytilde(u)^j du, with
// w_j = (1 - u^2)^{-j/m} two-sided and (1 + u)^{-j/m} one-sided. Entries for
// j with lmax[j] < 0 are empty.
struct EdgeMoments {
  std::vector<std::vector<Complex>> moments;
  EdgeReport report;
};

// lmax[j] for j = 0..m-1 (index 0 unused); -1 means not requested.
EdgeMoments integrate_edge(const EdgeFrame& fr, const std::vector<int>& lmax, const QuadOptions& opt);

// Requested moment bounds for a differential basis: lmax[j] = max(i) - 1.
std::vector<int> moment_orders(int m, const DifferentialBasis& basis);

// --- parameter selection pieces, exposed for testing and reports ---

struct StripPoint {
  double r = 0, t = 0;  // u = tanh(lambda sinh(t + i r)) for the nearest preimage
};
// Distance of each transformed branch point to [-1, 1] in the strip
// parametrization, minimized over all preimages.
std::vector<StripPoint> de_strip_points(const std::vector<std::complex<double>>& u, double lambda);
// Largest usable r: 0.9 * asin(min(1, pi / (2 lambda))).
double de_r_ceiling(double lambda);
double de_x_r(double r, double lambda);
// Upper bound for B(r, alpha) in ball arithmetic.
double de_b_const(double r, double alpha, double lambda);
// Minimal N h from the truncation condition.
double de_truncation_nh(double alpha, double lambda, double M1, double d_nats);
// Step bound 2 pi r / (D + log(2 M2 B + e^{-D})).
double de_step(double r, double M2, double B, double d_nats);
long gc_points(double M, double r, double d_nats);
// Gauss-Chebyshev ellipse parameters r_k from 2 cosh r_k = |u_k - 1| + |u_k + 1|.
std::vector<double> gc_r(const std::vector<std::complex<double>>& u);

struct BoundShape {
  std::vector<Complex> pts;  // transformed branch points (low precision balls)
  int m = 2, j = 1, lmax = 0;
  bool one_sided = false;
};
BoundShape bound_shape(const EdgeFrame& fr, int j, int lmax);

// Certified sup over u in [-1, 1] of max(1,|u|)^lmax prod |u - u_k|^{-j/m}
// (times |1 - u|^{j/m} one-sided).
double bound_on_segment(const BoundShape& s);
// Same sup over the boundary lines Im t = +-r of t -> tanh(lambda sinh t).
// Returns +inf if a branch point may lie on the boundary.
double bound_on_boundary(const BoundShape& s, double r, double lambda);
// Same sup over the ellipse |u - 1| + |u + 1| = 2 cosh r via distance bounds.
double bound_on_ellipse(const BoundShape& s, double r);

// Nodes for k = 0..N of the DE scheme (u_k = tanh(lambda sinh(k h))).
struct DENode {
  Real u, weight;  // weight = lambda cosh(kh) / cosh(lambda sinh(kh))^2
  Real e2;         // e^{-2 lambda sinh(kh)}, so that 1 - u = 2 e2 / (1 + e2) stays accurate
};
std::vector<DENode> de_nodes(double h, long n, double lambda, long prec);

const char* scheme_name(SchemeKind k);

}  // namespace superperiods
