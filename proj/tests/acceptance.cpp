// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "superperiods/pipeline.hpp"

using namespace superperiods;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

QuadOptions quad(long bits, SchemeKind k) {
  QuadOptions o;
  o.prec = bits + 32;
  o.d_nats = bits * std::log(2.0) + std::log(4.0);
  o.scheme = k;
  return o;
}

PipelineOptions popts(long bits, TreeStrategy t = TreeStrategy::Capacity) {
  PipelineOptions o;
  o.target_bits = bits;
  o.tree = t;
  return o;
}

std::vector<ExactComplex> to_exact(const std::vector<mpq_class>& c) {
  std::vector<ExactComplex> out;
  for (auto& q : c) out.push_back({q, 0});
  return out;
}

std::vector<ExactComplex> int_poly(std::initializer_list<long> c) {
  std::vector<ExactComplex> out;
  for (long v : c) out.push_back(oracle::exact(v));
  return out;
}

// Random separable integer polynomial with |c| <= bound.
std::vector<ExactComplex> random_curve(std::mt19937_64& rng, int n, int bound) {
  while (true) {
    auto c = to_exact(oracle::random_int_poly(rng, n, bound));
    if (exactly_separable(c)) return c;
  }
}

double lattice_residual(const PeriodData& p, const std::vector<Complex>& v) {
  double worst = 0;
  for (auto& x : lattice_coordinates(p, v)) {
    double d = x.to_double();
    worst = std::max(worst, std::fabs(d - std::round(d)) + x.rad().to_double());
  }
  return worst;
}

std::unique_ptr<AbelJacobi> make_aj(const Computation& c) {
  return std::make_unique<AbelJacobi>(c.curve, c.tree, c.elementary, c.quad);
}

Outcome quadrature_exactness() {
  Outcome o;
  double slowest = 0;
  int checks = 0;
  struct Alpha {
    int j, m;
  };
  for (Alpha a : {Alpha{1, 2}, Alpha{1, 3}, Alpha{2, 3}, Alpha{1, 5}, Alpha{4, 5}})
    for (long bits : {128L, 512L, 2000L})
      for (SchemeKind k : {SchemeKind::DoubleExponential, SchemeKind::Auto}) {
      EdgeFrame f;
      f.m = a.m;
      std::vector<int> lmax(a.m, -1);
      lmax[a.j] = 0;
      auto t0 = std::chrono::steady_clock::now();
      EdgeMoments em = integrate_edge(f, lmax, quad(bits, k));
      double dt = seconds_since(t0);
      slowest = std::max(slowest, dt);
      Real want = oracle::beta_half(mpq_class(a.j, a.m), bits + 32);
      const Complex& got = em.moments[a.j][0];
      bool ok = got.re().contains(want) && got.im().contains_zero() && got.rad().log2_upper() < -bits + 2 && dt < 1.0;
      ++checks;
      if (!ok) {
        o.pass = false;
        o.detail += " alpha=" + std::to_string(a.j) + "/" + std::to_string(a.m) + "@" + std::to_string(bits) + "/" + scheme_name(k);
      }
    }
  o.detail = std::to_string(checks) + " integrals, slowest " + fmt("%.3f s", slowest) + o.detail;
  return o;
}

Outcome cm_checks() {
  Outcome o;
  double slowest = 0;
  for (long digits : {50L, 300L}) {
    long bits = Precision::bits_from_digits(digits);
    double tol = std::pow(10.0, -(static_cast<double>(digits) - 10));
    for (auto [poly, jwant] : {std::pair{int_poly({0, -1, 0, 1}), 1728L}, std::pair{int_poly({-1, 0, 0, 1}), 0L}}) {
      auto t0 = std::chrono::steady_clock::now();
      auto comp = compute_periods_retry(2, poly, popts(bits));
      Complex j = oracle::j_invariant(comp->periods.tau(0, 0));
      double dt = seconds_since(t0);
      slowest = std::max(slowest, dt);
      double err = abs(j - jwant).upper_double();
      if (!(err < tol) || dt >= 5.0) {
        o.pass = false;
        o.detail += " j=" + std::to_string(jwant) + "@" + std::to_string(digits) + "d err " + fmt("%.2e", err);
      }
    }
  }
  o.detail = "j = 1728 and j = 0 at 50/300 digits, slowest " + fmt("%.2f s", slowest) + o.detail;
  return o;
}

Outcome structural_suite() {
  Outcome o;
  struct Case {
    int m, n, genus;
    long bits;
  };
  for (Case c : {Case{2, 8, 3, 512}, Case{7, 8, 21, 512}, Case{2, 30, 14, 2000}}) {
    auto t0 = std::chrono::steady_clock::now();
    auto comp = compute_periods_retry(c.m, to_exact(oracle::bernoulli_poly(c.n)), popts(c.bits));
    double dt = seconds_since(t0);
    const auto& s = comp->symplectic;
    IntMatrix jp = standard_symplectic(s.genus, s.zero_block);
    IntMatrix chk = int_multiply(int_multiply(int_transpose(s.S), comp->intersections), s.S);
    bool exact = true;
    for (std::size_t a = 0; a < chk.rows(); ++a)
      for (std::size_t b = 0; b < chk.cols(); ++b) exact = exact && chk(a, b) == jp(a, b);
    // period_data throws unless tau is symmetric within radii and Im tau is certified positive definite
    bool ok = comp->curve.genus() == c.genus && exact && static_cast<int>(comp->periods.tau.rows()) == c.genus;
    if (c.n == 30 && dt >= 120) ok = false;
    if (!ok) o.pass = false;
    o.detail += " B" + std::to_string(c.m) + "," + std::to_string(c.n) + ":g=" + std::to_string(comp->curve.genus()) +
                (exact ? "" : ",S^TKS!=J") + "," + fmt("%.1fs", dt);
  }
  return o;
}

Outcome torsion() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> pm(2, 5), pn(3, 8);
  long bits = 128;
  double tol = std::ldexp(1.0, -static_cast<int>(bits) / 2), worst = 0;
  for (int t = 0; t < 5; ++t) {
    int m = pm(rng), n = pn(rng);
    auto comp = compute_periods_retry(m, random_curve(rng, n, 10), popts(bits));
    auto aj = make_aj(*comp);
    for (int k = 0; k < comp->curve.n(); ++k) {
      std::vector<Complex> v;
      for (int b = 0; b < comp->curve.genus(); ++b)
        v.push_back((aj->ramification(k)[b] - aj->ramification(0)[b]) * static_cast<long>(m));
      worst = std::max(worst, lattice_residual(comp->periods, v));
    }
    o.detail += " (" + std::to_string(m) + "," + std::to_string(n) + ")";
  }
  o.pass = worst < tol;
  o.detail = "curves" + o.detail + ", worst residual " + fmt("%.2e", worst);
  return o;
}

Outcome scheme_cross_validation() {
  Outcome o;
  long bits = 512;
  Curve c = Curve::from_exact(2, to_exact(oracle::bernoulli_poly(8)), bits + 64);
  SpanningTree tree = spanning_tree(c, M_PI / 2);
  std::vector<int> lmax = moment_orders(2, c.basis());
  long de_pts = 0, gc_pts = 0;
  int edges = 0;
  for (auto& e : tree.edges) {
    EdgeFrame f = edge_frame(c, e.a, e.b);
    EdgeMoments de = integrate_edge(f, lmax, quad(bits, SchemeKind::DoubleExponential));
    EdgeMoments gc = integrate_edge(f, lmax, quad(bits, SchemeKind::GaussChebyshev));
    for (std::size_t l = 0; l < de.moments[1].size(); ++l)
      if (!de.moments[1][l].overlaps(gc.moments[1][l])) o.pass = false;
    if (gc.report.points >= de.report.points) o.pass = false;
    de_pts += de.report.points;
    gc_pts += gc.report.points;
    ++edges;
  }
  o.detail = std::to_string(edges) + " edges, nodes DE " + std::to_string(de_pts) + " vs GC " + std::to_string(gc_pts);
  return o;
}

Outcome tree_invariance() {
  Outcome o;
  std::mt19937_64 rng(777);
  long bits = 128;
  double tol = std::ldexp(1.0, -static_cast<int>(bits) / 2), worst = 0;
  int differing = 0;
  struct Shape {
    int m, n;
  };
  // prefer curves where the two strategies disagree, so the check is not vacuous
  auto same_tree = [](const SpanningTree& x, const SpanningTree& y) {
    if (x.edges.size() != y.edges.size()) return false;
    for (std::size_t e = 0; e < x.edges.size(); ++e)
      if (x.edges[e].a != y.edges[e].a || x.edges[e].b != y.edges[e].b) return false;
    return true;
  };
  for (Shape sh : {Shape{2, 7}, Shape{3, 5}, Shape{4, 6}}) {
    std::vector<ExactComplex> coeffs;
    for (int attempt = 0; attempt < 20; ++attempt) {
      coeffs = random_curve(rng, sh.n, 10);
      Curve c = Curve::from_exact(sh.m, coeffs, 128);
      if (!same_tree(spanning_tree(c, M_PI / 2, TreeStrategy::Capacity),
                     spanning_tree(c, M_PI / 2, TreeStrategy::Euclidean)))
        break;
    }
    auto a = compute_periods_retry(sh.m, coeffs, popts(bits, TreeStrategy::Capacity));
    auto b = compute_periods_retry(sh.m, coeffs, popts(bits, TreeStrategy::Euclidean));
    bool same = same_tree(a->tree, b->tree);
    if (!same) ++differing;
    int g = a->periods.genus;
    IntMatrix M(2 * g, 2 * g, 0);
    for (int k = 0; k < 2 * g; ++k) {
      std::vector<Complex> v(g);
      for (int r = 0; r < g; ++r) v[r] = k < g ? b->periods.OA(r, k) : b->periods.OB(r, k - g);
      auto coords = lattice_coordinates(a->periods, v);
      for (int r = 0; r < 2 * g; ++r) {
        double x = coords[r].to_double();
        M(r, k) = std::llround(x);
        worst = std::max(worst, std::fabs(x - M(r, k)) + coords[r].rad().to_double());
      }
    }
    if (std::llabs(int_determinant(M)) != 1) o.pass = false;
  }
  if (!(worst < tol)) o.pass = false;
  o.detail = "3 curves (" + std::to_string(differing) + " with different trees), |det M| = 1, residual " + fmt("%.2e", worst);
  return o;
}

Outcome infinity_relation() {
  Outcome o;
  long bits = 128;
  double tol = std::ldexp(1.0, -static_cast<int>(bits) / 2), worst = 0;
  struct Case {
    int m;
    std::vector<ExactComplex> f;
  };
  std::vector<Case> cases{{2, int_poly({3, -1, 2, 1})}, {2, int_poly({-1, 2, 0, 3, 0, -2, 1})}, {3, int_poly({1, -1, 2, 0, 1, 3, 1})}};
  for (auto& c : cases) {
    auto comp = compute_periods_retry(c.m, c.f, popts(bits));
    auto aj = make_aj(*comp);
    const Curve& cu = comp->curve;
    std::vector<Complex> d(cu.genus(), Complex(cu.prec()));
    for (int k = 0; k < cu.n(); ++k)
      for (int b = 0; b < cu.genus(); ++b) d[b] += aj->ramification(k)[b] * aj->infinity().nu;
    for (int s = 1; s <= cu.delta(); ++s) {
      auto v = aj->infinite(s);
      for (int b = 0; b < cu.genus(); ++b) d[b] -= v[b];
    }
    double r = lattice_residual(comp->periods, d);
    worst = std::max(worst, r);
    o.detail += " delta=" + std::to_string(cu.delta()) + "(" + std::string(1, aj->infinite_case()) + ")";
  }
  o.pass = worst < tol;
  o.detail = "curves" + o.detail + ", worst residual " + fmt("%.2e", worst);
  return o;
}

Outcome symplectic_oracle() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-2, 2);
  int done = 0;
  for (int it = 0; it < 200; ++it) {
    int size = 2 + static_cast<int>(rng() % 11);  // 2..12
    int g = 1 + static_cast<int>(rng() % (size / 2));
    int z = size - 2 * g;
    IntMatrix s0 = int_identity(size);
    for (int step = 0; step < 2 * size; ++step) {
      int a = static_cast<int>(rng() % size), b = static_cast<int>(rng() % size);
      if (a == b) continue;
      int t = coef(rng);
      for (int r = 0; r < size; ++r) s0(r, a) += t * s0(r, b);
    }
    IntMatrix jp = standard_symplectic(g, z);
    IntMatrix k = int_multiply(int_multiply(int_transpose(s0), jp), s0);
    SymplecticChange s = symplectic_reduce(k);
    IntMatrix chk = int_multiply(int_multiply(int_transpose(s.S), k), s.S);
    bool ok = s.genus == g && s.zero_block == z && std::llabs(int_determinant(s.S)) == 1;
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b) ok = ok && chk(a, b) == jp(a, b);
    if (ok) ++done;
  }
  o.pass = done == 200;
  o.detail = std::to_string(done) + "/200 reduced exactly to J";
  return o;
}

Outcome scaling_probe() {
  Outcome o;
  Curve c = Curve::from_exact(3, int_poly({2, -1, 0, 3, 1}), 2200);
  SpanningTree tree = spanning_tree(c, M_PI / 2);
  EdgeFrame f = edge_frame(c, tree.edges[0].a, tree.edges[0].b);
  std::vector<int> lmax = moment_orders(3, c.basis());
  std::vector<double> x, y;
  std::string pts;
  for (long bits : {128L, 256L, 512L, 1024L, 2048L}) {
    EdgeMoments em = integrate_edge(f, lmax, quad(bits, SchemeKind::DoubleExponential));
    x.push_back(std::log(static_cast<double>(bits)));
    y.push_back(std::log(static_cast<double>(em.report.points)));
    pts += " " + std::to_string(em.report.points);
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) mx += x[k] / x.size(), my += y[k] / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) sxy += (x[k] - mx) * (y[k] - my), sxx += (x[k] - mx) * (x[k] - mx);
  double slope = sxy / sxx;
  o.pass = slope >= 0.9 && slope <= 1.2;
  o.detail = "N =" + pts + ", fitted exponent " + fmt("%.3f", slope);
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Entry> all{{1, "quadrature exactness", quadrature_exactness},
                         {2, "genus-1 CM checks", cm_checks},
                         {3, "structural period-matrix suite", structural_suite},
                         {4, "m-torsion", torsion},
                         {5, "scheme cross-validation", scheme_cross_validation},
                         {6, "tree invariance", tree_invariance},
                         {7, "infinity relation", infinity_relation},
                         {8, "symplectic reducer oracle", symplectic_oracle},
                         {9, "scaling probe", scaling_probe}};
  int failures = 0;
  for (auto& e : all) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    double dt = seconds_since(t0);
    if (!out.pass) ++failures;
    std::printf("criterion %d %s: %s (%s; %.1f s)\n", e.id, e.name, out.pass ? "PASS" : "FAIL", out.detail.c_str(), dt);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
