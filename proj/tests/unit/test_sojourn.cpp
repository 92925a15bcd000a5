#include <doctest.h>

#include <cmath>

#include "gph/error.hpp"
#include "gph/marriage.hpp"
#include "gph/sojourn.hpp"
#include "oracle.hpp"

using namespace gph;

namespace {
const MixtureModel kHet = marriage_model(MarriageVariant::single, true).model;
const MixtureModel kHom = marriage_model(MarriageVariant::single, false).model;
}  // namespace

TEST_CASE("residual lifetime integrates the conditional survival") {
  const GphDistribution d(kHet);
  for (double t : {0.01, 4.0, 10.0}) {
    const auto info = posterior_current(kHet, kMarried, t);
    const double q = integrate_to_infinity(
        [&](double u) { return conditional_survival(d, info, t + u); }, 0.0, 1e-10, 8.0);
    CHECK(residual_lifetime(d, info) == doctest::Approx(q).epsilon(1e-8));
  }
}

TEST_CASE("homogeneous residual lifetime is constant in the age") {
  const GphDistribution d(kHom);
  const double r0 = residual_lifetime(d, posterior_current(kHom, kMarried, 0.01));
  for (double t : {1.0, 5.0, 20.0})
    CHECK(std::abs(residual_lifetime(d, posterior_current(kHom, kMarried, t)) - r0) <= 1e-12);
}

TEST_CASE("occupation time integrates the conditional transition probabilities") {
  const GphDistribution d(kHet);
  const auto info = posterior_current(kHet, kMarried, 4.0);
  for (std::size_t j = 0; j < 5; ++j) {
    const double want = oracle::gauss_legendre(
        [&](double h) { return conditional_transition(info, kHet, h)(kMarried, j); }, 0.0, 6.0, 40);
    const double got = expected_occupation(d, OccupationQuery{4.0, 10.0, j, info});
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("occupation over the whole horizon adds up") {
  const GphDistribution d(kHet);
  const auto info = posterior_current(kHet, kSeparated, 2.0);
  double total = 0.0;
  for (std::size_t j = 0; j < 5; ++j) total += expected_occupation(d, OccupationQuery{2.0, 9.0, j, info});
  CHECK(total == doctest::Approx(7.0).epsilon(1e-12));
  double inf_total = 0.0;
  for (std::size_t j = 0; j < 4; ++j)
    inf_total += expected_occupation(d, OccupationQuery{2.0, kInfiniteHorizon, j, info});
  CHECK(inf_total == doctest::Approx(residual_lifetime(d, info)).epsilon(1e-12));
  CHECK_THROWS_AS(expected_occupation(d, OccupationQuery{2.0, kInfiniteHorizon, 4, info}), DomainError);
  CHECK_THROWS_AS(expected_occupation(d, OccupationQuery{1.0, 3.0, 0, info}), DomainError);
}
