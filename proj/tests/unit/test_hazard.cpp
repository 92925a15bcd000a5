#include <doctest.h>

#include <cmath>

#include "gph/error.hpp"
#include "gph/hazard.hpp"
#include "gph/marriage.hpp"

using namespace gph;

namespace {
const MixtureModel kHet = marriage_model(MarriageVariant::single, true).model;
const MixtureModel kHom = marriage_model(MarriageVariant::single, false).model;
}  // namespace

TEST_CASE("forward intensity is density over survival") {
  const GphDistribution d(kHet);
  const auto info = posterior_current(kHet, kMarried, 4.0);
  for (double s : {4.0, 5.0, 9.0, 20.0})
    CHECK(forward_intensity(d, info, s) ==
          doctest::Approx(conditional_density(d, info, s) / conditional_survival(d, info, s))
              .epsilon(1e-12));
  CHECK(forward_intensity_at_duration(d, info, 1.0) == doctest::Approx(forward_intensity(d, info, 5.0)));
  CHECK_THROWS_AS(forward_intensity(d, info, 3.0), DomainError);
}

TEST_CASE("instantaneous intensity is the forward intensity at zero duration") {
  const GphDistribution d(kHet);
  for (double t : {0.01, 4.0, 10.0}) {
    const auto info = posterior_current(kHet, kMarried, t);
    CHECK(instantaneous_intensity(d, info) == doctest::Approx(forward_intensity(d, info, t)).epsilon(1e-12));
  }
}

TEST_CASE("baseline intensity is the unconditional hazard") {
  const GphDistribution d(kHet);
  for (double t : {0.0, 1.0, 6.0, 25.0})
    CHECK(baseline_intensity(d, t) == doctest::Approx(density(d, t) / survival(d, t)).epsilon(1e-12));
}

TEST_CASE("survival recovered from the intensity") {
  const GphDistribution d(kHet);
  const auto info = posterior_current(kHet, kSeparated, 4.0);
  for (double s : {4.5, 7.0, 15.0}) {
    const auto sd = survival_from_intensity(d, info, s);
    CHECK(sd.survival == doctest::Approx(conditional_survival(d, info, s)).epsilon(1e-8));
    CHECK(sd.density == doctest::Approx(conditional_density(d, info, s)).epsilon(1e-8));
  }
}

TEST_CASE("homogeneous forward intensity does not depend on the anchor age") {
  const GphDistribution d(kHom);
  for (double dur : {0.0, 1.0, 5.0}) {
    const double a = forward_intensity_at_duration(d, posterior_current(kHom, kMarried, 0.01), dur);
    const double b = forward_intensity_at_duration(d, posterior_current(kHom, kMarried, 10.0), dur);
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("long-run limits agree with far-horizon evaluation") {
  const GphDistribution d(kHet);
  const auto info = posterior_current(kHet, kMarried, 10.0);
  const double lim = longrun_forward_intensity(d, info);
  CHECK(lim == doctest::Approx(0.25 * 0.21578273809112836).epsilon(1e-10));
  CHECK(std::abs(forward_intensity(d, info, 2010.0) - lim) <= 1e-8);
  CHECK(std::abs(baseline_intensity(d, 2000.0) - longrun_baseline(d)) <= 1e-8);
  CHECK(longrun_instantaneous(d, kMarried) ==
        doctest::Approx(0.25 * 0.07).epsilon(1e-10));
  const GphDistribution h(kHom);
  CHECK(longrun_forward_intensity(h, posterior_current(kHom, kMarried, 1.0)) ==
        doctest::Approx(0.21578273809112836).epsilon(1e-10));
}

TEST_CASE("absorbing information states are rejected") {
  const GphDistribution d(kHet);
  CHECK_THROWS_AS(forward_intensity(d, prior_information(kHet, 4, 1.0), 2.0), OutOfSupportError);
}
