#pragma once

// Two-branch propagation shared by the distribution, hazard and competing modules.

#include <algorithm>
#include <cmath>
#include <string>

#include "gph/error.hpp"
#include "gph/mixture.hpp"
#include "gph/numkernel.hpp"

namespace gph::detail {

// Row vectors u_G^T e^{(Psi T - c I) nu} and u_Q^T e^{(T - c I) nu}.
struct Branches {
  Vector g;
  Vector q;
};

inline Matrix shifted(const Matrix& a, double c) {
  Matrix s = a;
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) -= c;
  return s;
}

inline Branches propagate(const MixtureModel& model, const Vector& ug, const Vector& uq, double nu,
                          double shift = 0.0) {
  Branches b;
  b.g = row_times(ug, expm(shifted(model.psiT(), shift), nu));
  b.q = row_times(uq, expm(shifted(model.T(), shift), nu));
  return b;
}

// (u^T S, u^T (I - S)) for u = e_i and weights smt.
inline std::pair<Vector, Vector> split_state(std::size_t m, std::size_t i, const Vector& smt) {
  Vector ug(m, 0.0), uq(m, 0.0);
  ug[i] = smt[i];
  uq[i] = 1.0 - smt[i];
  return {ug, uq};
}

inline std::pair<Vector, Vector> split_initial(const MixtureModel& model) {
  Vector ug = hadamard(model.pi(), model.s0());
  Vector uq = model.pi() - ug;
  return {ug, uq};
}

inline void check_info(const MixtureModel& model, const InformationState& info) {
  if (info.state >= model.states())
    throw DimensionError("information: state outside the state space");
  if (info.smt.size() != model.m()) throw DimensionError("information: smt has wrong length");
  if (!(info.age >= 0.0) || !std::isfinite(info.age))
    throw DomainError("information: age must be finite and >= 0");
}

// Elapsed nu = s - t, tolerating round-off when s was built as t + d.
inline double elapsed(const InformationState& info, double s, const char* op) {
  if (!std::isfinite(s)) throw DomainError(std::string(op) + ": horizon must be finite");
  const double nu = s - info.age;
  if (nu < -1e-12 * std::max(1.0, std::abs(info.age)))
    throw DomainError(std::string(op) + ": horizon s precedes the information age t");
  return std::max(nu, 0.0);
}

inline void check_time(double t, const char* op) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError(std::string(op) + ": time must be finite and >= 0");
}

// Limit as nu -> inf of (u_G^T e^{Psi T nu} v_G + u_Q^T e^{T nu} v_Q) divided by the same
// expression with v = 1, using the leading spectral terms of each branch.
inline double longrun_ratio(const MixtureModel& model, const Vector& ug, const Vector& uq,
                            const Vector& vg, const Vector& vq) {
  const Vector one = ones(model.m());
  const auto g = leading_term(model.psiT(), model.eig_psiT(), ug, one);
  const auto q = leading_term(model.T(), model.eig_T(), uq, one);
  if (!g && !q) throw OutOfSupportError("long-run limit: survival vanishes identically");
  auto coef = [](const Vector& u, const Matrix& l, const Vector& v) {
    return dot(row_times(u, l), v);
  };
  if (g && q) {
    const double tol = 1e-9 * std::max({1.0, std::abs(g->rate), std::abs(q->rate)});
    if (std::abs(g->rate - q->rate) <= tol)
      return (coef(ug, g->coeff, vg) + coef(uq, q->coeff, vq)) /
             (coef(ug, g->coeff, one) + coef(uq, q->coeff, one));
  }
  if (g && (!q || g->rate > q->rate)) return coef(ug, g->coeff, vg) / coef(ug, g->coeff, one);
  return coef(uq, q->coeff, vq) / coef(uq, q->coeff, one);
}

// Survival below this (after rescaling by exp(-shift nu)) has no usable digits.
constexpr double kSupportFloor = 1e-13;

}  // namespace gph::detail
