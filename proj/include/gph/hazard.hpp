#pragma once

#include <utility>

#include "gph/gph.hpp"

namespace gph {

// lambda_i(t, s) = f_i(t, s) / Fbar_i(t, s). Throws OutOfSupportError when the
// survival (rescaled by the slowest decay rate of the two chains) drops below 1e-13.
double forward_intensity(const GphDistribution& dist, const InformationState& info, double s);
// Same curve in the duration parameterization d = s - t.
double forward_intensity_at_duration(const GphDistribution& dist, const InformationState& info,
                                     double d);
// lambda_i(t) = e_i^T (I + S(t)(Psi - I)) delta.
double instantaneous_intensity(const GphDistribution& dist, const InformationState& info);
// alpha(t) = f(t) / Fbar(t) for the unconditional law.
double baseline_intensity(const GphDistribution& dist, double t);

struct SurvivalDensity {
  double survival;
  double density;
};
// exp(-int_t^s lambda_i(t,u) du) and lambda_i(t,s) times it, by quadrature.
SurvivalDensity survival_from_intensity(const GphDistribution& dist, const InformationState& info,
                                        double s, double tol = 1e-10);

double longrun_forward_intensity(const GphDistribution& dist, const InformationState& info);
double longrun_instantaneous(const GphDistribution& dist, std::size_t i);
double longrun_baseline(const GphDistribution& dist);

}  // namespace gph
