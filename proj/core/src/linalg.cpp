#include "superperiods/linalg.hpp"

#include <gmpxx.h>

#include <utility>

namespace superperiods {

namespace {

// Index of the candidate pivot with the largest midpoint magnitude.
template <class T>
std::size_t pick_pivot(const Matrix<T>& m, std::size_t col, std::size_t from) {
  std::size_t best = from;
  Mag best_mag;
  for (std::size_t i = from; i < m.rows(); ++i) {
    Mag v = m(i, col).abs_lower();
    if (i == from || best_mag < v) {
      best = i;
      best_mag = v;
    }
  }
  return best;
}

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace

ComplexMatrix solve(const ComplexMatrix& a_in, const ComplexMatrix& b_in) {
  std::size_t n = a_in.rows();
  ComplexMatrix a = a_in, b = b_in;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = pick_pivot(a, k, k);
    swap_rows(a, k, p);
    swap_rows(b, k, p);
    if (a(k, k).contains_zero()) throw PrecisionError("matrix not certified invertible");
    Complex inv = a(k, k).inv();
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex f = a(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
  ComplexMatrix x(n, b.cols(), Complex(a_in.rows() ? a_in(0, 0).prec() : 53));
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = b(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= a(ii, k) * x(k, j);
      x(ii, j) = s / a(ii, ii);
    }
  }
  return x;
}

RealMatrix inverse(const RealMatrix& a_in) {
  std::size_t n = a_in.rows();
  mpfr_prec_t prec = n ? a_in(0, 0).prec() : 53;
  RealMatrix a = a_in;
  RealMatrix inv(n, n, Real(prec));
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = Real::from_int(1, prec);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = pick_pivot(a, k, k);
    swap_rows(a, k, p);
    swap_rows(inv, k, p);
    if (a(k, k).contains_zero()) throw PrecisionError("matrix not certified invertible");
    Real piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      Real f = a(i, k);
      if (f.is_exact() && mpfr_zero_p(f.mid())) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

bool certified_positive_definite(const RealMatrix& a_in) {
  std::size_t n = a_in.rows();
  RealMatrix a = a_in;
  for (std::size_t k = 0; k < n; ++k) {
    if (!a(k, k).is_positive()) return false;
    Real l = sqrt(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) a(i, k) /= l;
    for (std::size_t j = k + 1; j < n; ++j)
      for (std::size_t i = j; i < n; ++i) a(i, j) -= a(i, k) * a(j, k);
  }
  return true;
}

IntMatrix int_identity(std::size_t n) {
  IntMatrix m(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      int64_t v = a(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        int64_t t;
        if (__builtin_mul_overflow(v, b(k, j), &t) || __builtin_add_overflow(c(i, j), t, &c(i, j)))
          throw InternalError("integer overflow in matrix product");
      }
    }
  return c;
}

IntMatrix int_transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

namespace {

// Fraction-free elimination; returns rank and sets det (for square input).
std::size_t bareiss(const IntMatrix& in, mpz_class* det) {
  std::size_t rows = in.rows(), cols = in.cols();
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = static_cast<long>(in(i, j));
  mpz_class prev = 1;
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != rank) {
      std::swap(m[p], m[rank]);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[i][j] * m[rank][c] - m[i][c] * m[rank][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  if (det != nullptr) {
    if (rows != cols || rank < rows) {
      *det = 0;
    } else {
      *det = sign * m[rows - 1][cols - 1];
    }
  }
  return rank;
}

}  // namespace

int64_t int_determinant(const IntMatrix& a) {
  if (a.rows() == 0) return 1;
  mpz_class d;
  bareiss(a, &d);
  if (!d.fits_slong_p()) throw InternalError("determinant overflow");
  return d.get_si();
}

std::size_t int_rank(const IntMatrix& a) { return bareiss(a, nullptr); }

}  // namespace superperiods
