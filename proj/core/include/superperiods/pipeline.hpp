#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "superperiods/abeljacobi.hpp"

namespace superperiods {

struct PipelineOptions {
  long target_bits = 128;
  double lambda = 1.5707963267948966;
  TreeStrategy tree = TreeStrategy::Capacity;
  SchemeKind scheme = SchemeKind::Auto;
  int threads = 1;      // 0 = hardware concurrency
  int max_retries = 3;  // guard doublings after the first attempt
};

// Everything computed for one curve at one working precision.
struct Computation {
  explicit Computation(Curve c) : curve(std::move(c)) {}

  Precision precision;
  int guard_scale = 1;
  Curve curve;
  SpanningTree tree;
  IntMatrix intersections;
  SymplecticChange symplectic;
  QuadOptions quad;
  ElementaryData elementary;
  PeriodData periods;

  // Largest radius over Omega_A, Omega_B and tau.
  Mag max_radius() const;
};

// One attempt. Throws PrecisionError if the result does not reach the target.
std::unique_ptr<Computation> compute_periods(int m, const std::vector<ExactComplex>& coeffs,
                                             const PipelineOptions& opt, int guard_scale = 1);

// Runs fn(guard_scale) with guard_scale = 1, 2, 4, ... and rethrows the last
// PrecisionError (or DomainError from a straddled cut) as PrecisionExhausted.
void with_precision_retry(const PipelineOptions& opt, const std::function<void(int)>& fn);

// compute_periods under with_precision_retry.
std::unique_ptr<Computation> compute_periods_retry(int m, const std::vector<ExactComplex>& coeffs,
                                                   const PipelineOptions& opt);

int resolve_threads(int requested);

}  // namespace superperiods
