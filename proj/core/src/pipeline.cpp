#include "superperiods/pipeline.hpp"

#include <cmath>
#include <thread>

namespace superperiods {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Mag Computation::max_radius() const {
  Mag r;
  for (const ComplexMatrix* mat : {&periods.OA, &periods.OB, &periods.tau})
    for (std::size_t a = 0; a < mat->rows(); ++a)
      for (std::size_t b = 0; b < mat->cols(); ++b)
        if ((*mat)(a, b).rad() > r) r = (*mat)(a, b).rad();
  return r;
}

std::unique_ptr<Computation> compute_periods(int m, const std::vector<ExactComplex>& coeffs,
                                             const PipelineOptions& opt, int guard_scale) {
  int n = static_cast<int>(coeffs.size()) - 1;
  while (n > 0 && coeffs[n].is_zero()) --n;
  if (m < 2 || n < 3) throw InputError("need m >= 2 and deg f >= 3");
  int g = curve_genus(m, n);
  Precision prec = Precision::for_genus(opt.target_bits, g, guard_scale);

  auto comp = std::make_unique<Computation>(Curve::from_exact(m, coeffs, prec.working_bits));
  comp->precision = prec;
  comp->guard_scale = guard_scale;
  const Curve& c = comp->curve;
  comp->tree = spanning_tree(c, opt.lambda, opt.tree);
  std::vector<EdgeFrame> frames = tree_frames(c, comp->tree);
  comp->intersections = intersection_matrix(c, comp->tree, frames);
  comp->symplectic = symplectic_reduce(comp->intersections);

  comp->quad.lambda = opt.lambda;
  comp->quad.scheme = opt.scheme;
  comp->quad.prec = prec.working_bits;
  comp->quad.d_nats = prec.working_bits * std::log(2.0) + std::log(4.0);
  comp->elementary = elementary_integrals(c, std::move(frames), comp->quad, resolve_threads(opt.threads));
  comp->periods = period_data(c, comp->elementary, comp->symplectic, opt.target_bits);

  if (comp->max_radius().log2_upper() > -static_cast<double>(opt.target_bits))
    throw PrecisionError("period matrix radius exceeds the target");
  return comp;
}

void with_precision_retry(const PipelineOptions& opt, const std::function<void(int)>& fn) {
  int scale = 1;
  for (int attempt = 0;; ++attempt, scale *= 2) {
    try {
      fn(scale);
      return;
    } catch (const PrecisionError& e) {
      if (attempt >= opt.max_retries) throw PrecisionExhausted(std::string("precision retries exhausted: ") + e.what());
    } catch (const DomainError& e) {
      // straddled cuts and overlapping disks can resolve at higher precision;
      // input-level degeneracy ends up here after the last retry
      if (attempt >= opt.max_retries) throw PrecisionExhausted(std::string("precision retries exhausted: ") + e.what());
    }
  }
}

std::unique_ptr<Computation> compute_periods_retry(int m, const std::vector<ExactComplex>& coeffs,
                                                   const PipelineOptions& opt) {
  std::unique_ptr<Computation> out;
  with_precision_retry(opt, [&](int scale) { out = compute_periods(m, coeffs, opt, scale); });
  return out;
}

}  // namespace superperiods
