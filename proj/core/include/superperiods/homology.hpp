#pragma once

#include <complex>
#include <vector>

#include "superperiods/curve.hpp"
#include "superperiods/linalg.hpp"

namespace superperiods {

enum class TreeStrategy { Capacity, Euclidean };

struct EdgeCapacity {
  double value = 0;
  // False when another branch point lies on the closed segment.
  bool usable = false;
};

struct TreeEdge {
  int a = 0, b = 0;  // oriented parent -> child
  double capacity = 0;
};

struct SpanningTree {
  int root = 0;
  std::vector<TreeEdge> edges;  // BFS order from the root
  std::vector<int> parent;      // parent[root] = -1
  std::vector<int> parent_edge; // index into edges, -1 for the root

  // Edge indices along the path root -> k.
  std::vector<int> path_to(int k) const;
};

// Low-precision a priori cost measure of integrating along [x_a, x_b].
// m = 2: min_c (|c - a| + |c - b|) / |b - a|; m > 2: min_c r_c with
// r_c = |Im asinh(atanh(u_c) / lambda)|. Empty minimum gives +inf.
EdgeCapacity edge_capacity(int m, const std::vector<std::complex<double>>& x, int a, int b, double lambda);
EdgeCapacity edge_capacity(const Curve& c, int a, int b, double lambda);

// Greedy maximum-capacity spanning tree (ties broken lexicographically), or
// a Euclidean minimum spanning tree. Throws DomainError("degenerate
// configuration") if the usable edges do not connect all branch points.
SpanningTree spanning_tree(int m, const std::vector<std::complex<double>>& x, double lambda,
                           TreeStrategy strategy = TreeStrategy::Capacity);
SpanningTree spanning_tree(const Curve& c, double lambda, TreeStrategy strategy = TreeStrategy::Capacity);

struct CycleIndex {
  int edge = 0;
  int shift = 0;  // 0 .. m-2
};

// Cycles ordered edge-major, shift-minor.
std::vector<CycleIndex> cycle_indices(int m, const SpanningTree& tree);

struct ShiftValue {
  double raw = 0;  // (rho + m arg(...)) / 2 pi before snapping
  long value = 0;
  double rho = 0;
};

// s_x at the shared endpoint of two frames. b_eq_c selects the b = c case
// (shared point is the end of the first edge and start of the second);
// otherwise a = c. Throws InternalError if the value is not within 1e-6 of an
// integer.
ShiftValue intersection_shift(int m, const EdgeFrame& ab, const EdgeFrame& cd, bool b_eq_c);

IntMatrix intersection_matrix(const Curve& c, const SpanningTree& tree, const std::vector<EdgeFrame>& frames);

struct SymplecticChange {
  IntMatrix S;
  int genus = 0;
  int zero_block = 0;
};

// Integer symplectic basis: S^T K S = [[0, I, 0], [-I, 0, 0], [0, 0, 0]].
// Throws DomainError("non-principal polarization") if an elementary divisor
// other than 1 shows up.
SymplecticChange symplectic_reduce(const IntMatrix& k);
IntMatrix standard_symplectic(int genus, int zero_block);

}  // namespace superperiods
