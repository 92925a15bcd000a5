#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "gph/matrix.hpp"

namespace gph {

using Complex = std::complex<double>;

// Small dense complex matrix, used only for spectral work.
struct CMatrix {
  std::size_t n = 0;
  std::vector<Complex> a;  // row-major n x n

  CMatrix() = default;
  explicit CMatrix(const Matrix& m);
  CMatrix(std::size_t n, Complex fill);
  static CMatrix identity(std::size_t n);

  Complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

CMatrix operator*(const CMatrix& x, const CMatrix& y);
CMatrix operator+(CMatrix x, const CMatrix& y);
CMatrix operator*(Complex s, CMatrix x);
// Real part, rejecting imaginary residue above tol * max(1, max |entry|).
Matrix real_part(const CMatrix& x, double tol = 1e-8);

// exp(A t) by Pade scaling and squaring.
Matrix expm(const Matrix& a, double t = 1.0);

// LU with partial pivoting; throws SingularMatrixError when a pivot is negligible.
class Lu {
 public:
  explicit Lu(const Matrix& a);
  Matrix solve(const Matrix& b) const;
  Vector solve(const Vector& b) const;
  // Solves x^T A = b^T.
  Vector solve_left(const Vector& b) const;
  Matrix inverse() const;
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

Matrix solve(const Matrix& a, const Matrix& b);
Vector solve(const Matrix& a, const Vector& b);
Matrix inverse(const Matrix& a);

struct EigenSystem {
  std::vector<Complex> values;   // descending real part, then descending imaginary part
  std::vector<std::vector<Complex>> vectors;  // right eigenvectors, same order
  bool distinct = true;

  std::size_t size() const { return values.size(); }
};

// |phi_i - phi_j| > 1e-8 * max(1, |phi_i|, |phi_j|) for all pairs.
bool eigenvalues_distinct(const std::vector<Complex>& values);

EigenSystem eigen(const Matrix& a);

// L_p(A) = prod_{j != p} (A - phi_j I) / (phi_p - phi_j).
CMatrix lagrange_coefficient_complex(const Matrix& a, const EigenSystem& eig, std::size_t p);
// Real-valued L_p(A); requires phi_p real (conjugate partners make the product real).
Matrix lagrange_coefficient(const Matrix& a, const EigenSystem& eig, std::size_t p);

// Leading exponential behaviour of u^T exp(A t) v as t grows: the first eigenvalue
// (in eig order) whose spectral weight u^T L_p(A) v is not negligible. Returns
// nothing when every weight vanishes. Complex leading pairs throw
// UnsupportedSpectrumError since the ratio limits built on top of them oscillate.
struct Asymptote {
  std::size_t index;
  double rate;    // real eigenvalue phi_p
  Matrix coeff;   // L_p(A)
};
std::optional<Asymptote> leading_term(const Matrix& a, const EigenSystem& eig, const Vector& u,
                                      const Vector& v);

using RealFunction = std::function<double(double)>;

struct QuadratureOptions {
  double tol = 1e-9;
  int max_depth = 48;
  long max_evaluations = 2'000'000;
};

// Adaptive Simpson on [a, b]. Throws AccuracyError (carrying the best estimate) when
// the tolerance is not met within the refinement budget.
double integrate(const RealFunction& f, double a, double b, double tol = 1e-9);
double integrate(const RealFunction& f, double a, double b, const QuadratureOptions& opt);

// Integral over [a, inf) for integrands with exponential decay: sums unit-doubling
// panels until a panel contributes less than tol.
double integrate_to_infinity(const RealFunction& f, double a, double tol = 1e-9,
                             double first_panel = 1.0);

}  // namespace gph
