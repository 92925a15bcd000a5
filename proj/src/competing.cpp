#include "gph/competing.hpp"

#include <cmath>

#include "branches.hpp"

namespace gph {

namespace {

std::size_t cause_index(const CompetingModel& cm, CauseLabel j) {
  if (j.label() < 1 || j.label() > cm.p())
    throw DimensionError("cause " + std::to_string(j.label()) + " outside 1.." +
                         std::to_string(cm.p()));
  return j.index();
}

// u_G^T (Psi T)^{-1}(e^{Psi T nu} - I) Psi D e_j + u_Q^T T^{-1}(e^{T nu} - I) D e_j
double sub_cdf(const MixtureModel& model, const Vector& ug, const Vector& uq, std::size_t c,
               double nu) {
  const std::size_t m = model.m();
  const Vector rg = Lu(model.psiT()).solve_left(ug);
  const Vector rq = Lu(model.T()).solve_left(uq);
  const Matrix eg = expm(model.psiT(), nu) - Matrix::identity(m);
  const Matrix eq = expm(model.T(), nu) - Matrix::identity(m);
  return dot(row_times(rg, eg), model.psiD().col(c)) + dot(row_times(rq, eq), model.D().col(c));
}

double ultimate(const MixtureModel& model, const Vector& u, std::size_t c) {
  return -dot(Lu(model.T()).solve_left(u), model.D().col(c));
}

struct Pieces {
  double F, f, p, surv, surv_density;
};

Pieces evaluate(const MixtureModel& model, const Vector& ug, const Vector& uq, std::size_t c,
                double nu) {
  model.require_psi_nonsingular("sub_distribution");
  const auto b = detail::propagate(model, ug, uq, nu);
  Pieces out;
  out.F = sub_cdf(model, ug, uq, c, nu);
  out.f = dot(b.g, model.psiD().col(c)) + dot(b.q, model.D().col(c));
  out.p = ultimate(model, ug + uq, c);
  out.surv = sum(b.g) + sum(b.q);
  out.surv_density = dot(b.g, hadamard(model.psi(), model.delta())) + dot(b.q, model.delta());
  return out;
}

}  // namespace

SubDistribution sub_distribution(const CompetingModel& cm, const InformationState& info,
                                 CauseLabel j, double s) {
  const auto& model = cm.model();
  detail::check_info(model, info);
  const std::size_t c = cause_index(cm, j);
  const double nu = detail::elapsed(info, s, "sub_distribution");
  if (!model.is_transient(info.state)) {
    const double hit = info.state == model.m() + c ? 1.0 : 0.0;
    return {hit, 0.0, 0.0};
  }
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  const Pieces pc = evaluate(model, ug, uq, c, nu);
  return {pc.F, pc.f, pc.p - pc.F};
}

OverallSurvival overall_survival(const CompetingModel& cm, const InformationState& info, double s) {
  const auto& model = cm.model();
  detail::check_info(model, info);
  const double nu = detail::elapsed(info, s, "overall_survival");
  if (!model.is_transient(info.state)) return {0.0, 0.0};
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  const auto b = detail::propagate(model, ug, uq, nu);
  return {sum(b.g) + sum(b.q),
          dot(b.g, hadamard(model.psi(), model.delta())) + dot(b.q, model.delta())};
}

double cause_forward_intensity(const CompetingModel& cm, const InformationState& info, CauseLabel j,
                               double s) {
  const auto& model = cm.model();
  detail::check_info(model, info);
  const std::size_t c = cause_index(cm, j);
  const double nu = detail::elapsed(info, s, "cause_forward_intensity");
  if (!model.is_transient(info.state))
    throw OutOfSupportError("cause_forward_intensity: information state is absorbing");
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  const auto b = detail::propagate(model, ug, uq, nu, model.spectral_shift());
  const double den = sum(b.g) + sum(b.q);
  if (!(den >= detail::kSupportFloor))
    throw OutOfSupportError("cause_forward_intensity: survival has vanished");
  return std::max(0.0, (dot(b.g, model.psiD().col(c)) + dot(b.q, model.D().col(c))) / den);
}

double cause_instantaneous_intensity(const CompetingModel& cm, const InformationState& info,
                                     CauseLabel j) {
  const auto& model = cm.model();
  detail::check_info(model, info);
  const std::size_t c = cause_index(cm, j);
  if (!model.is_transient(info.state))
    throw OutOfSupportError("cause_instantaneous_intensity: information state is absorbing");
  const std::size_t i = info.state;
  return (1.0 + info.smt[i] * (model.psi()[i] - 1.0)) * model.D()(i, c);
}

double longrun_cause_instantaneous(const CompetingModel& cm, std::size_t i, CauseLabel j) {
  const auto& model = cm.model();
  const std::size_t c = cause_index(cm, j);
  if (!model.is_transient(i)) throw DomainError("longrun_cause_instantaneous: state not transient");
  const double s = posterior_limit(model, i);
  return (1.0 + s * (model.psi()[i] - 1.0)) * model.D()(i, c);
}

double longrun_cause_intensity(const CompetingModel& cm, const InformationState& info,
                               CauseLabel j) {
  const auto& model = cm.model();
  detail::check_info(model, info);
  const std::size_t c = cause_index(cm, j);
  if (!model.is_transient(info.state))
    throw OutOfSupportError("longrun_cause_intensity: information state is absorbing");
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  return detail::longrun_ratio(model, ug, uq, model.psiD().col(c), model.D().col(c));
}

double ultimate_absorption(const CompetingModel& cm, const InformationState& info, CauseLabel j) {
  const auto& model = cm.model();
  detail::check_info(model, info);
  const std::size_t c = cause_index(cm, j);
  if (!model.is_transient(info.state)) return info.state == model.m() + c ? 1.0 : 0.0;
  return ultimate(model, unit(model.m(), info.state), c);
}

CauseConditional conditional_on_cause(const CompetingModel& cm, const InformationState& info,
                                      CauseLabel j, double s) {
  const auto& model = cm.model();
  detail::check_info(model, info);
  if (!model.is_transient(info.state))
    throw OutOfSupportError("conditional_on_cause: information state is absorbing");
  const std::size_t c = cause_index(cm, j);
  const double nu = detail::elapsed(info, s, "conditional_on_cause");
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  const Pieces pc = evaluate(model, ug, uq, c, nu);
  if (!(pc.p > 0.0))
    throw DegenerateInformationError("conditional_on_cause: cause is never reached");
  if (!(pc.surv > 0.0)) throw OutOfSupportError("conditional_on_cause: survival has vanished");
  return {pc.F / pc.p, (pc.p - pc.F) / pc.surv};
}

UnconditionalFamily unconditional_family(const CompetingModel& cm, CauseLabel j, double t) {
  const auto& model = cm.model();
  const std::size_t c = cause_index(cm, j);
  detail::check_time(t, "unconditional_family");
  const auto [ug, uq] = detail::split_initial(model);
  const Pieces pc = evaluate(model, ug, uq, c, t);
  UnconditionalFamily u{};
  u.F = pc.F;
  u.f = pc.f;
  u.Fbar = pc.p - pc.F;
  if (!(pc.surv > 0.0)) throw OutOfSupportError("unconditional_family: survival has vanished");
  u.alpha = pc.f / pc.surv;
  if (!(pc.p > 0.0))
    throw DegenerateInformationError("unconditional_family: cause is never reached");
  u.F_tilde = pc.F / pc.p;
  u.p_tilde = u.Fbar / pc.surv;
  return u;
}

double cause_residual_lifetime(const CompetingModel& cm, const InformationState& info,
                               CauseLabel j) {
  const auto& model = cm.model();
  detail::check_info(model, info);
  const std::size_t c = cause_index(cm, j);
  if (!model.is_transient(info.state)) return 0.0;
  model.require_psi_nonsingular("cause_residual_lifetime");
  const std::size_t i = info.state;
  const Vector x = Lu(model.T()).solve(model.D().col(c));  // T^{-1} D e_j
  const double g = Lu(model.psiT()).solve(x)[i];
  const double q = Lu(model.T()).solve(x)[i];
  return info.smt[i] * g + (1.0 - info.smt[i]) * q;
}

}  // namespace gph
