#pragma once

#include <vector>

#include "superperiods/homology.hpp"
#include "superperiods/linalg.hpp"
#include "superperiods/quadrature.hpp"

namespace superperiods {

// Per-edge integrals of the basis differentials along the lift y_{a,b}.
struct ElementaryData {
  DifferentialBasis basis;
  std::vector<EdgeFrame> frames;
  std::vector<EdgeReport> reports;
  // edge_int[e][b] = int_a^b x^{i-1} dx / y_{a,b}(x)^j for basis entry b
  std::vector<std::vector<Complex>> edge_int;
};

// Binomial shift: sum_l binom(i-1, l) center^{i-1-l} moments[l].
Complex shift_moments(const std::vector<Complex>& moments, const Complex& center, int i);

// C^{-j} ((b-a)/2)^i * shifted moments, for each basis entry.
std::vector<Complex> edge_values(const EdgeFrame& fr, const EdgeMoments& em, const DifferentialBasis& basis);

// Integrates every tree edge; edges run on up to `threads` workers.
ElementaryData elementary_integrals(const Curve& c, const SpanningTree& tree, const QuadOptions& opt, int threads = 1);
ElementaryData elementary_integrals(const Curve& c, std::vector<EdgeFrame> frames, const QuadOptions& opt,
                                    int threads = 1);
std::vector<EdgeFrame> tree_frames(const Curve& c, const SpanningTree& tree);

// zeta^{-lj} (1 - zeta^{-j}) * edge_int[e][b]
Complex period_of_cycle(const Curve& c, const ElementaryData& d, int e, int l, int b);

struct PeriodData {
  int genus = 0;
  DifferentialBasis basis;
  ComplexMatrix OA, OB, tau;
  RealMatrix omega_r_inv;  // inverse of [[Re OA, Re OB], [Im OA, Im OB]]
  double symmetry_defect = 0;   // max |tau - tau^T| (upper bound)
  double dropped_column_max = 0;  // max |entry| of the zero columns
};

// Columns of (OA, OB) as sparse integer combinations of cycle periods.
// Checks the trailing delta-1 columns vanish, tau symmetry and Im tau > 0.
PeriodData period_data(const Curve& c, const ElementaryData& d, const SymplecticChange& s, long target_bits);

// frac(Omega_R^{-1} iota(v)), iota stacking real then imaginary parts.
std::vector<Fractional> lattice_reduce(const PeriodData& p, const std::vector<Complex>& v);
// Omega_R^{-1} iota(v) without taking fractional parts.
std::vector<Real> lattice_coordinates(const PeriodData& p, const std::vector<Complex>& v);

}  // namespace superperiods
