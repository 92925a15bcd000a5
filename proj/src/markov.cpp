#include "gph/markov.hpp"

#include <cmath>
#include <string>

#include "gph/error.hpp"
#include "gph/numkernel.hpp"

namespace gph {

class GeneratorAccess {
 public:
  static Generator make(Matrix T, Matrix D) {
    Generator g;
    g.T_ = std::move(T);
    g.D_ = std::move(D);
    return g;
  }
};

Vector Generator::exit_total() const { return D_ * ones(p()); }

Matrix Generator::assembled() const {
  const std::size_t n = states();
  Matrix q(n, n);
  for (std::size_t i = 0; i < m(); ++i) {
    for (std::size_t j = 0; j < m(); ++j) q(i, j) = T_(i, j);
    for (std::size_t j = 0; j < p(); ++j) q(i, m() + j) = D_(i, j);
  }
  return q;
}

static std::string cell(const char* name, std::size_t i, std::size_t j) {
  return std::string(name) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
}

Generator validate_generator(const Matrix& T_in, const Matrix& D, const ValidationOptions& opt) {
  if (!T_in.square()) throw DimensionError("generator: T is not square");
  if (T_in.rows() == 0) throw DimensionError("generator: no transient states");
  if (D.rows() != T_in.rows())
    throw DimensionError("generator: D has " + std::to_string(D.rows()) + " rows, T has " +
                         std::to_string(T_in.rows()));
  if (D.cols() == 0) throw DimensionError("generator: no absorbing states");
  if (!T_in.all_finite() || !D.all_finite())
    throw ValidationError("generator: non-finite rate");

  Matrix T = T_in;
  const std::size_t m = T.rows();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && T(i, j) < 0.0)
        throw ValidationError(cell("T", i, j) + " is negative off the diagonal");
    for (std::size_t j = 0; j < D.cols(); ++j)
      if (D(i, j) < 0.0) throw ValidationError(cell("D", i, j) + " is negative");
    if (opt.repair_diagonal) {
      double off = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) off += T(i, j);
      for (std::size_t j = 0; j < D.cols(); ++j) off += D(i, j);
      T(i, i) = -off;
    }
    if (T(i, i) > 0.0) throw ValidationError(cell("T", i, i) + " is positive");
    double row = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      row += T(i, j);
      scale += std::abs(T(i, j));
    }
    for (std::size_t j = 0; j < D.cols(); ++j) {
      row += D(i, j);
      scale += D(i, j);
    }
    if (std::abs(row) > opt.row_sum_tol * std::max(1.0, scale))
      throw ValidationError("row " + std::to_string(i + 1) + " of [T D] sums to " +
                            std::to_string(row) + ", expected 0");
  }
  if (opt.require_nonsingular) {
    const EigenSystem es = eigen(T);
    if (!(es.values.front().real() < 0.0))
      throw ValidationError(
          "T is singular: absorption is not certain (dominant eigenvalue has real part " +
          std::to_string(es.values.front().real()) + ")");
  }
  return GeneratorAccess::make(std::move(T), D);
}

static void check_time(double t, const char* op) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError(std::string(op) + ": time must be finite and >= 0");
}

Matrix transition_matrix(const Generator& g, double t) {
  check_time(t, "transition_matrix");
  return expm(g.assembled(), t);
}

std::pair<Matrix, Matrix> block_exponential(const Generator& g, double t) {
  check_time(t, "block_exponential");
  Matrix e = expm(g.T(), t);
  Matrix top = e - Matrix::identity(g.m());
  return {std::move(e), solve(g.T(), top * g.D())};
}

static void check_pi(const Vector& pi, const Generator& g) {
  if (pi.size() != g.m()) throw DimensionError("initial law has wrong length");
  if (g.p() != 1) throw DimensionError("classical PH law needs exactly one absorbing state");
}

double classical_ph_survival(const Vector& pi, const Generator& g, double t) {
  check_pi(pi, g);
  check_time(t, "classical_ph_survival");
  return sum(row_times(pi, expm(g.T(), t)));
}

double classical_ph_density(const Vector& pi, const Generator& g, double t) {
  check_pi(pi, g);
  check_time(t, "classical_ph_density");
  return dot(row_times(pi, expm(g.T(), t)), g.D().col(0));
}

Matrix scaled_generator(const Generator& g, const Vector& d) {
  Matrix q = g.assembled();
  for (std::size_t i = 0; i < g.m(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) *= d[i];
  return q;
}

}  // namespace gph
