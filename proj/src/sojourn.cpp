#include "gph/sojourn.hpp"

#include <cmath>

#include "branches.hpp"

namespace gph {

double residual_lifetime(const GphDistribution& dist, const InformationState& info) {
  const auto& model = dist.model();
  detail::check_info(model, info);
  if (!model.is_transient(info.state)) return 0.0;
  model.require_psi_nonsingular("residual_lifetime");
  const std::size_t i = info.state;
  const Vector one = ones(model.m());
  const double rg = Lu(model.psiT()).solve(one)[i];
  const double rq = Lu(model.T()).solve(one)[i];
  return -(info.smt[i] * rg + (1.0 - info.smt[i]) * rq);
}

namespace {

// e_i^T A^{-1}(e^{A nu} - I) as a row vector.
Vector integrated_exp_row(const Matrix& a, std::size_t i, double nu) {
  const std::size_t m = a.rows();
  Matrix e = expm(a, nu) - Matrix::identity(m);
  return row_times(Lu(a).solve_left(unit(m, i)), e);
}

// e_i^T A^{-1}(A^{-1}(e^{A nu} - I) - nu I) as a row vector.
Vector twice_integrated_exp_row(const Matrix& a, std::size_t i, double nu) {
  const std::size_t m = a.rows();
  const Lu lu(a);
  const Vector r = lu.solve_left(unit(m, i));  // e_i^T A^{-1}
  const Vector r2 = lu.solve_left(r);          // e_i^T A^{-2}
  Matrix e = expm(a, nu) - Matrix::identity(m);
  return row_times(r2, e) - nu * r;
}

}  // namespace

double expected_occupation(const GphDistribution& dist, const OccupationQuery& q) {
  const auto& model = dist.model();
  const auto& info = q.info;
  detail::check_info(model, info);
  if (q.target >= model.states()) throw DimensionError("occupation: target state out of range");
  if (std::abs(q.from - info.age) > 1e-12 * std::max(1.0, info.age))
    throw DomainError("occupation: query start must equal the information age");
  if (std::isnan(q.to) || q.to < q.from) throw DomainError("occupation: requires to >= from");
  const bool infinite = std::isinf(q.to);
  const double nu = infinite ? 0.0 : q.to - q.from;
  const std::size_t i = info.state, j = q.target, m = model.m();

  if (!model.is_transient(i)) {
    if (j != i) return 0.0;
    if (infinite) throw DomainError("occupation: infinite horizon in an absorbing state");
    return nu;
  }
  model.require_psi_nonsingular("expected_occupation");
  const double sg = info.smt[i], sq = 1.0 - info.smt[i];

  if (model.is_transient(j)) {
    if (infinite) {
      const double g = Lu(model.psiT()).solve_left(unit(m, i))[j];
      const double h = Lu(model.T()).solve_left(unit(m, i))[j];
      return -(sg * g + sq * h);
    }
    const double g = integrated_exp_row(model.psiT(), i, nu)[j];
    const double h = integrated_exp_row(model.T(), i, nu)[j];
    return sg * g + sq * h;
  }
  if (infinite)
    throw DomainError("occupation: time in an absorbing state diverges on an infinite horizon");
  const std::size_t c = j - m;
  const double g = dot(twice_integrated_exp_row(model.psiT(), i, nu), model.psiD().col(c));
  const double h = dot(twice_integrated_exp_row(model.T(), i, nu), model.D().col(c));
  return sg * g + sq * h;
}

}  // namespace gph
