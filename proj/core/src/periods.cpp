#include "superperiods/periods.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace superperiods {

Complex shift_moments(const std::vector<Complex>& moments, const Complex& center, int i) {
  long prec = moments.empty() ? center.prec() : moments[0].prec();
  Complex acc(prec);
  // Horner in center: sum_l binom(i-1, l) center^{i-1-l} I_l
  Complex cpow = Complex::from_int(1, prec);
  mpz_class binom = 1;
  for (int l = i - 1; l >= 0; --l) {
    // term for index l uses center^{i-1-l}; walk l downward so the power grows
    acc += moments[l] * cpow * Real::from_mpq(mpq_class(binom), prec);
    cpow = cpow * center;
    binom = binom * l / (i - l);
  }
  return acc;
}

std::vector<Complex> edge_values(const EdgeFrame& fr, const EdgeMoments& em, const DifferentialBasis& basis) {
  std::vector<Complex> out;
  out.reserve(basis.size());
  Complex cinv = fr.cab.inv();
  for (const auto& d : basis) {
    Complex sh = shift_moments(em.moments[d.j], fr.center, d.i);
    out.push_back(pow(cinv, d.j) * pow(fr.half, d.i) * sh);
  }
  return out;
}

std::vector<EdgeFrame> tree_frames(const Curve& c, const SpanningTree& tree) {
  std::vector<EdgeFrame> out;
  for (auto& e : tree.edges) out.push_back(edge_frame(c, e.a, e.b));
  return out;
}

ElementaryData elementary_integrals(const Curve& c, const SpanningTree& tree, const QuadOptions& opt, int threads) {
  return elementary_integrals(c, tree_frames(c, tree), opt, threads);
}

ElementaryData elementary_integrals(const Curve& c, std::vector<EdgeFrame> frames, const QuadOptions& opt,
                                    int threads) {
  ElementaryData d;
  d.basis = c.basis();
  std::vector<int> lmax = moment_orders(c.m(), d.basis);
  std::size_t ne = frames.size();
  d.frames = std::move(frames);
  d.reports.resize(ne);
  d.edge_int.resize(ne);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    while (true) {
      std::size_t e = next++;
      if (e >= ne) return;
      try {
        EdgeMoments em = integrate_edge(d.frames[e], lmax, opt);
        d.edge_int[e] = edge_values(d.frames[e], em, d.basis);
        d.reports[e] = em.report;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = ne;
      }
    }
  };
  int nt = std::max(1, std::min<int>(threads, static_cast<int>(ne)));
  if (nt == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return d;
}

Complex period_of_cycle(const Curve& c, const ElementaryData& d, int e, int l, int b) {
  int j = d.basis[b].j;
  Complex fac = c.zeta(-static_cast<long>(l) * j) * (1 - c.zeta(-j));
  return fac * d.edge_int[e][b];
}

namespace {

double max_upper(const Complex& z) { return abs(z).upper_double(); }

}  // namespace

PeriodData period_data(const Curve& c, const ElementaryData& d, const SymplecticChange& s, long target_bits) {
  int g = c.genus();
  int m = c.m();
  long prec = c.prec();
  std::size_t ncyc = d.edge_int.size() * static_cast<std::size_t>(m - 1);
  if (s.S.rows() != ncyc) throw InternalError("symplectic change has the wrong size");
  if (s.genus != g) throw InternalError("symplectic rank does not match the genus");

  // Omega_Gamma entries on demand: cycle (e, l) = column e*(m-1)+l.
  std::vector<std::vector<Complex>> cyc(ncyc);
  for (std::size_t col = 0; col < ncyc; ++col) {
    int e = static_cast<int>(col / (m - 1)), l = static_cast<int>(col % (m - 1));
    for (int b = 0; b < g; ++b) cyc[col].push_back(period_of_cycle(c, d, e, l, b));
  }
  auto combine = [&](std::size_t scol) {
    std::vector<Complex> v(g, Complex(prec));
    for (std::size_t r = 0; r < ncyc; ++r) {
      int64_t k = s.S(r, scol);
      if (k == 0) continue;
      for (int b = 0; b < g; ++b) v[b] += cyc[r][b] * k;
    }
    return v;
  };

  PeriodData p;
  p.genus = g;
  p.basis = d.basis;
  p.OA = ComplexMatrix(g, g, Complex(prec));
  p.OB = ComplexMatrix(g, g, Complex(prec));
  for (int k = 0; k < g; ++k) {
    auto a = combine(k), bb = combine(g + k);
    for (int b = 0; b < g; ++b) {
      p.OA(b, k) = a[b];
      p.OB(b, k) = bb[b];
    }
  }
  double tol = std::ldexp(1.0, -static_cast<int>(target_bits) + static_cast<int>(Precision::guard(g)));
  for (std::size_t k = 2 * g; k < ncyc; ++k) {
    for (auto& z : combine(k)) {
      double up = max_upper(z);
      p.dropped_column_max = std::max(p.dropped_column_max, up);
      if (!z.contains_zero() && up > tol) throw InternalError("nonzero column in period matrix");
    }
  }

  p.tau = solve(p.OA, p.OB);
  Mag rad_max;
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      if (p.tau(a, b).rad() > rad_max) rad_max = p.tau(a, b).rad();
      if (a < b) {
        p.symmetry_defect = std::max(p.symmetry_defect, max_upper(p.tau(a, b) - p.tau(b, a)));
        if (!p.tau(a, b).overlaps(p.tau(b, a))) throw InternalError("pipeline inconsistency: tau not symmetric");
      }
    }
  RealMatrix im(g, g, Real(prec));
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) im(a, b) = (p.tau(a, b).im() + p.tau(b, a).im()).mul_2si(-1);
  if (!certified_positive_definite(im)) {
    if (rad_max.log2_upper() > -20) throw PrecisionError("Im tau not certified positive definite");
    throw InternalError("pipeline inconsistency: Im tau not positive definite");
  }

  RealMatrix omr(2 * g, 2 * g, Real(prec));
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      omr(a, b) = p.OA(a, b).re();
      omr(a, g + b) = p.OB(a, b).re();
      omr(g + a, b) = p.OA(a, b).im();
      omr(g + a, g + b) = p.OB(a, b).im();
    }
  p.omega_r_inv = inverse(omr);
  return p;
}

std::vector<Real> lattice_coordinates(const PeriodData& p, const std::vector<Complex>& v) {
  int g = p.genus;
  if (static_cast<int>(v.size()) != g) throw InputError("vector length must equal the genus");
  long prec = v.empty() ? 64 : v[0].prec();
  std::vector<Real> iv;
  for (auto& z : v) iv.push_back(z.re());
  for (auto& z : v) iv.push_back(z.im());
  std::vector<Real> out(2 * g, Real(prec));
  for (int a = 0; a < 2 * g; ++a)
    for (int b = 0; b < 2 * g; ++b) out[a] += p.omega_r_inv(a, b) * iv[b];
  return out;
}

std::vector<Fractional> lattice_reduce(const PeriodData& p, const std::vector<Complex>& v) {
  return fractional_parts(lattice_coordinates(p, v));
}

}  // namespace superperiods
