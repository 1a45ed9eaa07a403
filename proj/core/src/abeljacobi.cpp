#include "superperiods/abeljacobi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "superperiods/roots.hpp"

namespace superperiods {

namespace {

using Poly = std::vector<Complex>;  // ascending coefficients

Poly poly_mul(const Poly& a, const Poly& b, long prec) {
  Poly out(a.size() + b.size() - 1, Complex(prec));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void poly_add_into(Poly& a, const Poly& b, long prec) {
  if (a.size() < b.size()) a.resize(b.size(), Complex(prec));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

// (t + z)^k
Poly binomial_power(const Complex& z, long k, long prec) {
  Poly out{Complex::from_int(1, prec)};
  Poly lin{z, Complex::from_int(1, prec)};
  for (long i = 0; i < k; ++i) out = poly_mul(out, lin, prec);
  return out;
}

// Coefficients of prod_k (1 - x_k w) = sum_i f_{n-i} w^i; the w^n term is
// dropped when 0 is a branch point.
Poly reversed_f(const Curve& c) {
  const auto& f = c.coeffs();
  int n = c.n();
  Poly out;
  for (int i = 0; i <= n; ++i) out.push_back(f[n - i]);
  if (c.zero_branch() >= 0) out.pop_back();
  return out;
}

// h(t) / t, after checking and clearing the constant term.
Poly divide_by_t(Poly h) {
  if (!h[0].contains_zero()) throw InternalError("auxiliary polynomial does not vanish at t = 0");
  h.erase(h.begin());
  if (h[0].contains_zero()) throw PrecisionError("t = 0 is not certified to be a simple root");
  while (h.size() > 1 && h.back().contains_zero()) {
    if (!h.back().is_exact()) throw PrecisionError("leading coefficient of auxiliary polynomial not certified");
    h.pop_back();
  }
  return h;
}

void add_scaled(std::vector<Complex>& acc, const std::vector<Complex>& v, long k) {
  for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += v[b] * k;
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    while (true) {
      std::size_t i = next++;
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  int nt = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (nt == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void InfinityData::phi(const Complex& r, const Complex& t, Complex& x, Complex& y) const {
  x = (pow(r, nu) * pow(t, Mq)).inv();
  y = pow(r, mu) * pow(t, Nq).inv();
}

InfinityData infinity_data(int m, int n) {
  InfinityData d;
  d.delta = std::gcd(m, n);
  d.Mq = m / d.delta;
  d.Nq = n / d.delta;
  long nu = 1;
  while ((nu * n - d.delta) % m != 0) ++nu;
  d.nu = nu;
  d.mu = (d.delta - nu * n) / m;
  return d;
}

long Divisor::degree() const {
  long s = 0;
  for (auto& t : terms) s += t.coeff;
  return s;
}

bool AJResult::ambiguous() const {
  return std::any_of(reduced.begin(), reduced.end(), [](const Fractional& f) { return f.ambiguous; });
}

AbelJacobi::AbelJacobi(const Curve& c, const SpanningTree& tree, const ElementaryData& elem, const QuadOptions& opt,
                       int threads)
    : c_(c), tree_(tree), elem_(elem), opt_(opt), threads_(threads), inf_(infinity_data(c.m(), c.n())) {
  int g = c.genus();
  ram_.assign(c.n(), std::vector<Complex>(g, Complex(c.prec())));
  // BFS order: a child's sum extends its parent's
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto& te = tree.edges[e];
    ram_[te.b] = ram_[te.a];
    for (int b = 0; b < g; ++b) ram_[te.b][b] += elem.edge_int[e][b];
  }
}

int AbelJacobi::anchor_for(const Complex& x) const {
  std::vector<int> order(c_.n());
  std::iota(order.begin(), order.end(), 0);
  auto xd = x.to_cdouble();
  std::vector<double> dist(c_.n());
  for (int k = 0; k < c_.n(); ++k) dist[k] = std::abs(c_.branch_point(k).to_cdouble() - xd);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
  // The nearest branch point always sees x: any other point on the segment
  // would be nearer. Ball overlaps can still reject it, so try the rest too.
  for (int k : order) {
    try {
      edge_frame_to_point(c_, k, x);
      return k;
    } catch (const DomainError&) {
    }
  }
  throw PrecisionError("no branch point has a certified sight line to the point");
}

std::vector<Complex> AbelJacobi::finite(const Complex& x, const Complex& y) const {
  int g = c_.genus(), m = c_.m();
  if (!on_curve(c_, x, y)) throw InputError("point is not on the curve");
  for (int k = 0; k < c_.n(); ++k)
    if (c_.branch_point(k).overlaps(x)) throw InputError("finite point lies over a branch point; use P<k>");
  int a = anchor_for(x);
  EdgeFrame fr = edge_frame_to_point(c_, a, x);

  Complex ratio = y / branch_eval(fr, x);
  auto rd = ratio.to_cdouble();
  double sreal = m * std::arg(rd) / (2 * M_PI);
  long s = std::lround(sreal);
  if (std::fabs(sreal - s) > 0.25 || std::fabs(std::abs(rd) - 1) > 0.25)
    throw InternalError("sheet index is not an integer");
  s = ((s % m) + m) % m;

  EdgeMoments em = integrate_edge(fr, moment_orders(m, elem_.basis), opt_);
  std::vector<Complex> leg = edge_values(fr, em, elem_.basis);
  std::vector<Complex> out = ram_[a];
  for (int b = 0; b < g; ++b) out[b] += c_.zeta(-s * elem_.basis[b].j) * leg[b];
  return out;
}

std::vector<Complex> AbelJacobi::ram_sum() const {
  std::vector<Complex> acc(c_.genus(), Complex(c_.prec()));
  for (auto& v : ram_) add_scaled(acc, v, 1);
  return acc;
}

std::vector<Complex> AbelJacobi::sum_finite(const std::vector<std::pair<Complex, Complex>>& pts) const {
  std::vector<std::vector<Complex>> parts(pts.size());
  parallel_for(pts.size(), threads_, [&](std::size_t i) { parts[i] = finite(pts[i].first, pts[i].second); });
  std::vector<Complex> acc(c_.genus(), Complex(c_.prec()));
  for (auto& v : parts) add_scaled(acc, v, 1);
  return acc;
}

char AbelJacobi::infinite_case() const {
  if (inf_.delta == 1) return 'a';
  // With M = 1 the line r = zeta meets the curve simply at t = 0 unless the
  // root sum vanishes; then t = 0 is a double root and the tangent-free
  // construction below is used instead.
  if (inf_.Mq == 1 && c_.root_sum_is_nonzero()) return 'b';
  return 'c';
}

std::vector<std::pair<Complex, Complex>> AbelJacobi::auxiliary_points(int s) const {
  long prec = c_.prec();
  Complex zd = Complex::exp_pi_i(2L * s, inf_.delta, prec);  // zeta_delta^s
  Poly rev = reversed_f(c_);
  Poly h;
  char kind = infinite_case();
  if (kind == 'b') {
    Complex w = pow(zd, inf_.nu);
    Complex wp = Complex::from_int(1, prec);
    for (auto& co : rev) {
      h.push_back(co * wp);
      wp = wp * w;
    }
    h[0] = h[0] - 1L;
  } else if (kind == 'c') {
    // w(t) = (t + zd)^nu t^M, h = sum rev_i w^i - (t + zd)^delta
    Poly w(inf_.Mq, Complex(prec));
    for (auto& co : binomial_power(zd, inf_.nu, prec)) w.push_back(co);
    h = {rev.back()};
    for (std::size_t i = rev.size() - 1; i-- > 0;) {
      h = poly_mul(h, w, prec);
      h[0] += rev[i];
    }
    Poly sub = binomial_power(zd, inf_.delta, prec);
    for (auto& co : sub) co = -co;
    poly_add_into(h, sub, prec);
  } else {
    return {};
  }
  Poly q = divide_by_t(std::move(h));
  std::vector<std::pair<Complex, Complex>> pts;
  if (q.size() < 2) return pts;
  IsolatedRoots rts = poly_roots(q, prec);
  for (auto& t : rts.roots) {
    Complex r = kind == 'b' ? zd : t + zd;
    Complex x(prec), y(prec);
    inf_.phi(r, t, x, y);
    pts.emplace_back(x, y);
  }
  return pts;
}

std::vector<Complex> AbelJacobi::infinite(int s) const {
  if (s < 1 || s > inf_.delta) throw InputError("infinite point index out of range");
  char kind = infinite_case();
  std::vector<Complex> out(c_.genus(), Complex(c_.prec()));
  if (kind == 'a') {
    add_scaled(out, ram_sum(), inf_.nu);
    return out;
  }
  add_scaled(out, sum_finite(auxiliary_points(s)), -1);
  int z = c_.zero_branch();
  long corr = inf_.Nq * c_.m() - inf_.Mq;
  if (kind == 'c') {
    add_scaled(out, ram_sum(), inf_.nu);
    corr -= inf_.nu;
  }
  if (z >= 0) add_scaled(out, ram_[z], corr);
  return out;
}

std::vector<Complex> AbelJacobi::point(const CurvePoint& p) const {
  switch (p.kind) {
    case CurvePoint::Kind::Ramification:
      if (p.index < 0 || p.index >= c_.n()) throw InputError("branch point index out of range");
      return ram_[p.index];
    case CurvePoint::Kind::Infinite:
      return infinite(p.index);
    case CurvePoint::Kind::Finite:
      break;
  }
  return finite(p.x, p.y);
}

AJResult abel_jacobi(const AbelJacobi& aj, const PeriodData& p, const Divisor& d) {
  if (d.degree() != 0) throw InputError("divisor must have degree zero");
  AJResult res;
  res.value.assign(p.genus, Complex(aj.ramification(0).empty() ? 64 : aj.ramification(0)[0].prec()));
  for (auto& t : d.terms) {
    if (t.coeff == 0) continue;
    add_scaled(res.value, aj.point(t.point), t.coeff);
  }
  res.reduced = lattice_reduce(p, res.value);
  return res;
}

}  // namespace superperiods
