#include <doctest.h>

#include <cmath>
#include <random>

#include "gph/error.hpp"
#include "gph/gph.hpp"
#include "gph/marriage.hpp"
#include "oracle.hpp"

using namespace gph;

namespace {

GphDistribution random_dist(std::mt19937_64& rng, std::size_t m) {
  const auto r = oracle::random_model(rng, m, 1);
  return GphDistribution(MixtureModel(validate_generator(r.T, r.D), r.psi, r.pi, r.s0));
}

}  // namespace

TEST_CASE("unit speed reduces to the classical law") {
  std::mt19937_64 rng(17);
  const auto r = oracle::random_model(rng, 5, 1);
  const GphDistribution d(MixtureModel(validate_generator(r.T, r.D), Vector(5, 1.0), r.pi, r.s0));
  const Vector delta = r.D.col(0);
  for (double t : {0.0, 0.1, 1.0, 4.0, 12.0}) {
    const Matrix e = oracle::series_expm(r.T, t);
    CHECK(std::abs(survival(d, t) - sum(row_times(r.pi, e))) <= 1e-12);
    CHECK(std::abs(density(d, t) - dot(row_times(r.pi, e), delta)) <= 1e-12);
  }
}

TEST_CASE("Erlang mixture matches the closed form") {
  const auto d = erlang_mixture(0.3, 3, 2.0, 1.0);
  for (double t : {0.05, 0.5, 1.0, 3.0, 8.0})
    CHECK(std::abs(density(d, t) - (0.3 * oracle::erlang_pdf(t, 3, 2.0) +
                                     0.7 * oracle::erlang_pdf(t, 3, 1.0))) <= 1e-13);
  CHECK(moment(d, 1) == doctest::Approx(0.3 * 1.5 + 0.7 * 3.0).epsilon(1e-13));
  CHECK_THROWS_AS(erlang_mixture(1.3, 3, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(erlang_mixture(0.3, 0, 2.0, 1.0), DomainError);
}

TEST_CASE("survival at zero is the initial mass, density integrates to it") {
  const auto d = GphDistribution(marriage_model(MarriageVariant::single).model);
  CHECK(survival(d, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  const double mass = integrate_to_infinity([&](double t) { return density(d, t); }, 0.0, 1e-11, 4.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(survival(d, -1.0), DomainError);
}

TEST_CASE("conditional survival at the information time is one") {
  const auto mm = marriage_model(MarriageVariant::single).model;
  const GphDistribution d(mm);
  const auto info = posterior_current(mm, kMarried, 4.0);
  CHECK(conditional_survival(d, info, 4.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(conditional_survival(d, info, 3.0), DomainError);
  CHECK(conditional_survival(d, prior_information(mm, 4, 1.0), 2.0) == 0.0);
}

TEST_CASE("moments agree with the Laplace transform") {
  std::mt19937_64 rng(1);
  const auto d = random_dist(rng, 4);
  const double h = 1e-5;
  const double l0 = laplace_transform(d, 0.0);
  CHECK(l0 == doctest::Approx(1.0).epsilon(1e-12));
  const double d1 = (-3 * l0 + 4 * laplace_transform(d, h) - laplace_transform(d, 2 * h)) / (2 * h);
  CHECK(-d1 == doctest::Approx(moment(d, 1)).epsilon(1e-5));
  CHECK_THROWS_AS(laplace_transform(d, -1.0), DomainError);
}

TEST_CASE("mover-stayer models reject finite moments") {
  const auto mm = marriage_model(MarriageVariant::single).model.with_psi({1.0, 0.0, 1.0, 1.0});
  const GphDistribution d(mm);
  CHECK_THROWS_AS(moment(d, 1), SingularMatrixError);
  CHECK(survival(d, 1e3) > 0.0);
}

TEST_CASE("classical representation preserves the law") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    const auto d = random_dist(rng, 3 + rep);
    const ClassicalPH c = to_classical(d);
    CHECK(c.size() == 2 * d.m());
    for (double t : {0.0, 0.4, 2.0, 7.0}) {
      CHECK(c.survival(t) == doctest::Approx(survival(d, t)).epsilon(1e-11));
      CHECK(c.density(t) == doctest::Approx(density(d, t)).epsilon(1e-11));
    }
    for (unsigned n = 1; n <= 4; ++n) CHECK(c.moment(n) == doctest::Approx(moment(d, n)).epsilon(1e-10));
  }
}

TEST_CASE("scaling time") {
  std::mt19937_64 rng(4);
  const auto d = random_dist(rng, 3);
  const auto s = scale(d, 2.5);
  for (double t : {0.3, 1.0, 5.0}) CHECK(survival(s, t) == doctest::Approx(survival(d, t / 2.5)).epsilon(1e-12));
  CHECK_THROWS_AS(scale(d, 0.0), DomainError);
}

TEST_CASE("convolution matches numerical convolution of densities") {
  const auto a = erlang_mixture(0.4, 2, 3.0, 1.0);
  const auto b = erlang_mixture(0.8, 1, 0.5, 2.0);
  const ClassicalPH c = convolve(a, b);
  for (double t : {0.5, 1.5, 4.0}) {
    const double want = oracle::gauss_legendre(
        [&](double u) { return density(a, u) * density(b, t - u); }, 0.0, t, 64);
    CHECK(c.density(t) == doctest::Approx(want).epsilon(1e-10));
  }
  CHECK(c.moment(1) == doctest::Approx(moment(a, 1) + moment(b, 1)).epsilon(1e-12));
}

TEST_CASE("finite mixtures") {
  const auto a = erlang_mixture(0.4, 2, 3.0, 1.0);
  const auto b = erlang_mixture(0.8, 1, 0.5, 2.0);
  const ClassicalPH c = mix({0.25, 0.75}, std::vector<GphDistribution>{a, b});
  CHECK(c.survival(1.2) == doctest::Approx(0.25 * survival(a, 1.2) + 0.75 * survival(b, 1.2)).epsilon(1e-12));
  CHECK_THROWS_AS(mix({0.5, 0.6}, std::vector<GphDistribution>{a, b}), DomainError);
}

TEST_CASE("dense approximation converges on a lognormal target") {
  auto F = [](double x) {
    return x <= 0.0 ? 0.0 : 0.5 * std::erfc(-(std::log(x) - 0.2) / (0.5 * std::sqrt(2.0)));
  };
  const Vector probes = probe_grid(F);
  double prev = 1.0;
  for (unsigned n : {4u, 8u, 16u, 32u}) {
    const DenseApproximation approx(F, n);
    const double d = probe_distance(approx, F, probes);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.05);
  const DenseApproximation approx(F, 8);
  double wsum = 0.0;
  for (double w : approx.weights()) wsum += w;
  CHECK(wsum == doctest::Approx(F(8.0)).epsilon(1e-12));
  CHECK_THROWS_AS(DenseApproximation([](double x) { return 1.0 - x; }, 4), DomainError);
}

TEST_CASE("quantile inverts a cdf") {
  auto F = [](double x) { return 1.0 - std::exp(-x); };
  CHECK(quantile(F, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(quantile(F, 1.0), DomainError);
}
