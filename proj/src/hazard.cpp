#include "gph/hazard.hpp"

#include <cmath>

#include "branches.hpp"

namespace gph {

using detail::check_info;
using detail::elapsed;

static double ratio_or_throw(double num, double den, const char* op) {
  if (!(den >= detail::kSupportFloor))
    throw OutOfSupportError(std::string(op) + ": survival has vanished (rescaled value " +
                            std::to_string(den) + ")");
  return std::max(0.0, num / den);
}

static double shifted_ratio(const MixtureModel& model, const Vector& ug, const Vector& uq,
                            double nu, const char* op) {
  const double c = model.spectral_shift();
  const auto b = detail::propagate(model, ug, uq, nu, c);
  // Rescale so the larger branch weight is O(1); the ratio does not change.
  const double num = dot(b.g, hadamard(model.psi(), model.delta())) + dot(b.q, model.delta());
  const double den = sum(b.g) + sum(b.q);
  const double w = sum(ug) + sum(uq);
  return ratio_or_throw(num, w > 0.0 ? den / w : 0.0, op);
}

double forward_intensity(const GphDistribution& dist, const InformationState& info, double s) {
  const auto& model = dist.model();
  check_info(model, info);
  const double nu = elapsed(info, s, "forward_intensity");
  if (!model.is_transient(info.state))
    throw OutOfSupportError("forward_intensity: information state is absorbing");
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  const double c = model.spectral_shift();
  const auto b = detail::propagate(model, ug, uq, nu, c);
  const double num = dot(b.g, hadamard(model.psi(), model.delta())) + dot(b.q, model.delta());
  return ratio_or_throw(num, sum(b.g) + sum(b.q), "forward_intensity");
}

double forward_intensity_at_duration(const GphDistribution& dist, const InformationState& info,
                                     double d) {
  if (!(d >= 0.0)) throw DomainError("forward_intensity: duration must be >= 0");
  return forward_intensity(dist, info, info.age + d);
}

double instantaneous_intensity(const GphDistribution& dist, const InformationState& info) {
  const auto& model = dist.model();
  check_info(model, info);
  if (!model.is_transient(info.state))
    throw OutOfSupportError("instantaneous_intensity: information state is absorbing");
  const std::size_t i = info.state;
  return (1.0 + info.smt[i] * (model.psi()[i] - 1.0)) * model.delta()[i];
}

double baseline_intensity(const GphDistribution& dist, double t) {
  detail::check_time(t, "baseline_intensity");
  const auto [ug, uq] = detail::split_initial(dist.model());
  return shifted_ratio(dist.model(), ug, uq, t, "baseline_intensity");
}

SurvivalDensity survival_from_intensity(const GphDistribution& dist, const InformationState& info,
                                        double s, double tol) {
  const double nu = elapsed(info, s, "survival_from_intensity");
  auto lambda = [&](double u) { return forward_intensity(dist, info, info.age + u); };
  const double cumulative = integrate(lambda, 0.0, nu, tol);
  const double surv = std::exp(-cumulative);
  return {surv, lambda(nu) * surv};
}

double longrun_forward_intensity(const GphDistribution& dist, const InformationState& info) {
  const auto& model = dist.model();
  check_info(model, info);
  if (!model.is_transient(info.state))
    throw OutOfSupportError("longrun_forward_intensity: information state is absorbing");
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  return detail::longrun_ratio(model, ug, uq, hadamard(model.psi(), model.delta()), model.delta());
}

double longrun_instantaneous(const GphDistribution& dist, std::size_t i) {
  const auto& model = dist.model();
  if (!model.is_transient(i)) throw DomainError("longrun_instantaneous: state is not transient");
  const double s = posterior_limit(model, i);
  return (1.0 + s * (model.psi()[i] - 1.0)) * model.delta()[i];
}

double longrun_baseline(const GphDistribution& dist) {
  const auto& model = dist.model();
  const auto [ug, uq] = detail::split_initial(model);
  return detail::longrun_ratio(model, ug, uq, hadamard(model.psi(), model.delta()), model.delta());
}

}  // namespace gph
