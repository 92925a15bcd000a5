#include <doctest.h>

#include <cmath>

#include "gph/competing.hpp"
#include "gph/error.hpp"
#include "gph/marriage.hpp"
#include "oracle.hpp"

using namespace gph;

namespace {
const CompetingModel kCm(marriage_model(MarriageVariant::competing, true).model);
const CauseLabel kW(kCauseWidowed), kD(kCauseDivorced);
}  // namespace

TEST_CASE("sub-distributions add up to the overall law") {
  for (double t : {0.01, 4.0, 10.0}) {
    const auto info = posterior_current(kCm.model(), kMarried, t);
    for (double dur : {0.0, 0.7, 3.0, 12.0}) {
      const double s = t + dur;
      const auto w = sub_distribution(kCm, info, kW, s), d = sub_distribution(kCm, info, kD, s);
      const auto o = overall_survival(kCm, info, s);
      CHECK(std::abs(w.F + d.F + o.survival - 1.0) <= 1e-12);
      CHECK(std::abs(w.f + d.f - o.density) <= 1e-13);
      CHECK(std::abs(cause_forward_intensity(kCm, info, kW, s) +
                     cause_forward_intensity(kCm, info, kD, s) - o.density / o.survival) <= 1e-13);
    }
    CHECK(std::abs(ultimate_absorption(kCm, info, kW) + ultimate_absorption(kCm, info, kD) - 1.0) <= 1e-13);
  }
}

TEST_CASE("sub-distribution is the integral of its density") {
  const auto info = posterior_current(kCm.model(), kSeparated, 3.0);
  for (double s : {4.0, 8.0}) {
    const double q = oracle::gauss_legendre(
        [&](double u) { return sub_distribution(kCm, info, kD, u).f; }, 3.0, s, 40);
    CHECK(sub_distribution(kCm, info, kD, s).F == doctest::Approx(q).epsilon(1e-11));
  }
  const auto far = sub_distribution(kCm, info, kD, 400.0);
  CHECK(far.F == doctest::Approx(ultimate_absorption(kCm, info, kD)).epsilon(1e-10));
  CHECK(far.Fbar == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("ultimate absorption does not depend on the regime") {
  const auto mm = kCm.model();
  const auto a = fixed_information(mm, kMarried, 2.0, 0.0);
  const auto b = fixed_information(mm, kMarried, 2.0, 1.0);
  CHECK(ultimate_absorption(kCm, a, kD) == doctest::Approx(ultimate_absorption(kCm, b, kD)).epsilon(1e-13));
  // From M: divorce directly (0.07) or via S (0.25 * 0.5/0.6).
  const double want = (0.07 + 0.25 * 0.5 / 0.6) / 0.37;
  CHECK(ultimate_absorption(kCm, a, kD) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("instantaneous cause intensity") {
  const auto info = posterior_current(kCm.model(), kMarried, 4.0);
  const double s = info.smt[kMarried];
  CHECK(cause_instantaneous_intensity(kCm, info, kD) == doctest::Approx((s * 0.25 + 1 - s) * 0.07).epsilon(1e-13));
  CHECK(cause_instantaneous_intensity(kCm, info, kD) ==
        doctest::Approx(cause_forward_intensity(kCm, info, kD, 4.0)).epsilon(1e-12));
  CHECK(longrun_cause_instantaneous(kCm, kMarried, kD) == doctest::Approx(0.25 * 0.07).epsilon(1e-10));
  CHECK(std::abs(longrun_cause_intensity(kCm, info, kD) - cause_forward_intensity(kCm, info, kD, 2004.0)) <= 1e-8);
}

TEST_CASE("conditional-on-cause and unconditional families") {
  const auto info = posterior_current(kCm.model(), kMarried, 4.0);
  const auto c = conditional_on_cause(kCm, info, kD, 7.0);
  const auto sd = sub_distribution(kCm, info, kD, 7.0);
  const double p = ultimate_absorption(kCm, info, kD);
  CHECK(c.F_tilde == doctest::Approx(sd.F / p).epsilon(1e-13));
  CHECK(c.p_tilde == doctest::Approx(sd.Fbar / overall_survival(kCm, info, 7.0).survival).epsilon(1e-13));
  const auto u = unconditional_family(kCm, kD, 3.0);
  CHECK(u.Fbar + u.F == doctest::Approx(u.F / u.F_tilde).epsilon(1e-12));
  CHECK(u.alpha > 0.0);
}

TEST_CASE("cause residual lifetime integrates the tail") {
  const auto info = posterior_current(kCm.model(), kMarried, 4.0);
  const double q = integrate_to_infinity(
      [&](double u) { return sub_distribution(kCm, info, kD, 4.0 + u).Fbar; }, 0.0, 1e-11, 8.0);
  CHECK(cause_residual_lifetime(kCm, info, kD) == doctest::Approx(q).epsilon(1e-8));
}

TEST_CASE("cause labels are checked") {
  const auto info = posterior_current(kCm.model(), kMarried, 4.0);
  CHECK_THROWS(sub_distribution(kCm, info, CauseLabel(3), 5.0));
  CHECK_THROWS(sub_distribution(kCm, info, CauseLabel(0), 5.0));
}
