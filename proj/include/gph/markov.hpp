#pragma once

#include <utility>

#include "gph/matrix.hpp"

namespace gph {

// Absorbing CTMC generator Q = [[T, D], [0, 0]] with m transient and p absorbing states.
class Generator {
 public:
  Generator() = default;

  std::size_t m() const { return T_.rows(); }
  std::size_t p() const { return D_.cols(); }
  std::size_t states() const { return m() + p(); }
  const Matrix& T() const { return T_; }
  const Matrix& D() const { return D_; }
  // D 1_p, the total exit rate of each transient state.
  Vector exit_total() const;
  Matrix assembled() const;

 private:
  friend class GeneratorAccess;
  Matrix T_;
  Matrix D_;
};

struct ValidationOptions {
  double row_sum_tol = 1e-9;
  // Overwrite the diagonal of T with minus the off-diagonal row sum (incl. D) first.
  bool repair_diagonal = false;
  // Reject T with an eigenvalue of nonnegative real part.
  bool require_nonsingular = true;
};

Generator validate_generator(const Matrix& T, const Matrix& D, const ValidationOptions& opt = {});

// Full (m+p)x(m+p) transition matrix exp(Q t).
Matrix transition_matrix(const Generator& g, double t);

// (exp(T t), T^{-1}(exp(T t) - I) D): the top blocks of exp(Q t).
std::pair<Matrix, Matrix> block_exponential(const Generator& g, double t);

// pi^T exp(T t) 1 and pi^T exp(T t) delta for a single absorbing state.
double classical_ph_survival(const Vector& pi, const Generator& g, double t);
double classical_ph_density(const Vector& pi, const Generator& g, double t);

// Embed a sub-intensity matrix with block diagonal diag(d) applied on the left:
// returns [[diag(d) T, diag(d) D], [0, 0]].
Matrix scaled_generator(const Generator& g, const Vector& d);

}  // namespace gph
