#pragma once

#include <limits>

#include "gph/gph.hpp"

namespace gph {

// R_i(t) = -e_i^T (S(t)(Psi T)^{-1} + (I - S(t)) T^{-1}) 1; zero in an absorbing state.
double residual_lifetime(const GphDistribution& dist, const InformationState& info);

// Expected time spent in `target` over [from, to] given information at age `from`.
// `to` may be +infinity for transient targets.
struct OccupationQuery {
  double from = 0.0;
  double to = 0.0;
  std::size_t target = 0;
  InformationState info;
};

double expected_occupation(const GphDistribution& dist, const OccupationQuery& q);

constexpr double kInfiniteHorizon = std::numeric_limits<double>::infinity();

}  // namespace gph
