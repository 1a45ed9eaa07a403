#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "superperiods/pipeline.hpp"

namespace superperiods::cli {

// Exact literal: integer, p/q, decimal (1.25, -3e-2), an imaginary part
// written with a trailing i ("2-3/4i", "0.5i"), or a pair "(re,im)".
ExactComplex parse_number(const std::string& s);

// Sum of terms c*x^k, c x^k, x^k, x, c with exact coefficients as above.
// Returns ascending coefficients.
std::vector<ExactComplex> parse_polynomial(const std::string& s);

// Comma- or whitespace-separated root list; returns prod (x - r) ascending.
std::vector<ExactComplex> parse_roots(const std::string& s);

struct ParsedTerm {
  long coeff = 0;
  CurvePoint::Kind kind = CurvePoint::Kind::Ramification;
  int index = 0;           // P<k> or inf<s>
  ExactComplex x, y;       // (x, y): x exact, y selects the sheet
};
// Whitespace-separated "c*(x,y)", "c*P<k>", "c*inf<s>" (also "Pk", "infs").
std::vector<ParsedTerm> parse_divisor(const std::string& s);

// The curve point for (x, y): the m-th root of f(x) closest to y. Throws
// InputError if y^m is not within 1e-6 (relative) of f(x).
CurvePoint resolve_finite(const Curve& c, const ExactComplex& x, const ExactComplex& y);

struct JobConfig {
  std::string command;  // periods | tau | homology | abel-jacobi | integration-report
  int m = 2;
  std::string poly, roots;
  long digits = 38;
  long bits = 0;  // overrides digits when > 0
  double lambda = 1.5707963267948966;
  std::string tree = "capacity";
  std::string scheme = "auto";
  int threads = 1;
  std::string divisor;
};

long target_bits(const JobConfig& cfg);
long target_digits(const JobConfig& cfg);

// Midpoints at `digits` significant digits, radius with 3.
nlohmann::ordered_json complex_json(const Complex& z, long digits);
nlohmann::ordered_json matrix_json(const ComplexMatrix& a, long digits);
nlohmann::ordered_json int_matrix_json(const IntMatrix& a);

// Runs a job; writes JSON to out and diagnostics to err. Exit codes: 0 ok,
// 1 internal failure, 2 precision retries exhausted, 3 invalid input.
int run_job(const JobConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace superperiods::cli
