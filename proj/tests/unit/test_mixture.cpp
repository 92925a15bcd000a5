#include <doctest.h>

#include <cmath>
#include <random>

#include "gph/error.hpp"
#include "gph/marriage.hpp"
#include "gph/mixture.hpp"
#include "oracle.hpp"

using namespace gph;

namespace {

// Current-state posterior straight from the two transition matrices.
double oracle_current(const MixtureModel& mm, std::size_t i, double t) {
  const std::size_t m = mm.m();
  const Matrix eg = oracle::series_expm(mm.psiT(), t), eq = oracle::series_expm(mm.T(), t);
  double a = 0.0, b = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    a += mm.pi()[k] * mm.s0()[k] * eg(k, i);
    b += mm.pi()[k] * (1.0 - mm.s0()[k]) * eq(k, i);
  }
  return a / (a + b);
}

}  // namespace

TEST_CASE("model construction validates its inputs") {
  const Generator g = validate_generator(Matrix{{-1.0}}, Matrix{{1.0}});
  CHECK_NOTHROW(MixtureModel(g, {0.5}, {1.0}, {0.3}));
  CHECK_THROWS_AS(MixtureModel(g, {-0.5}, {1.0}, {0.3}), DomainError);
  CHECK_THROWS_AS(MixtureModel(g, {0.5}, {1.2}, {0.3}), DomainError);
  CHECK_THROWS_AS(MixtureModel(g, {0.5}, {1.0}, {1.3}), DomainError);
  CHECK_THROWS_AS(MixtureModel(g, {0.5, 1.0}, {1.0}, {0.3}), DimensionError);
}

TEST_CASE("G is Psi times Q") {
  const auto mm = marriage_model(MarriageVariant::single).model;
  const Matrix g = mm.G(), q = mm.Q();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(g(i, j) == doctest::Approx(i < 4 ? 0.25 * q(i, j) : 0.0));
  CHECK(mm.psi_nonsingular());
}

TEST_CASE("current-state posterior against the direct formula") {
  const auto mm = marriage_model(MarriageVariant::single).model;
  for (double t : {0.01, 1.0, 4.0, 10.0, 30.0})
    for (std::size_t i = 0; i < 4; ++i) {
      const auto info = posterior_current(mm, i, t);
      CHECK(info.regime == InfoRegime::current);
      CHECK(info.smt[i] == doctest::Approx(oracle_current(mm, i, t)).epsilon(1e-11));
    }
  CHECK(posterior_current(mm, kMarried, 0.01).smt[kMarried] == doctest::Approx(0.4972).epsilon(1e-3));
  CHECK(posterior_current(mm, kMarried, 10.0).smt[kMarried] == doctest::Approx(0.8382).epsilon(1e-3));
}

TEST_CASE("posterior equals the prior when both regimes coincide and S is uniform") {
  const auto mm = marriage_model(MarriageVariant::single, false).model.with_s0(Vector(4, 0.3));
  for (double t : {0.5, 5.0})
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(posterior_current(mm, i, t).smt[i] == doctest::Approx(0.3).epsilon(1e-12));
      CHECK(posterior_endpoints(mm, 0, i, t).smt[i] == doctest::Approx(0.3).epsilon(1e-12));
    }
}

TEST_CASE("endpoint posterior") {
  const auto mm = marriage_model(MarriageVariant::single).model;
  const double t = 3.0;
  const Matrix eg = oracle::series_expm(mm.psiT(), t), eq = oracle::series_expm(mm.T(), t);
  const double s = mm.s0()[0];
  const double want = s * eg(0, 1) / (s * eg(0, 1) + (1 - s) * eq(0, 1));
  CHECK(posterior_endpoints(mm, 0, 1, t).smt[1] == doctest::Approx(want).epsilon(1e-11));
  // N is never re-entered from M.
  CHECK_THROWS_AS(posterior_endpoints(mm, 1, 0, t), DegenerateInformationError);
}

TEST_CASE("full-path posterior uses the likelihood ratio") {
  const auto mm = marriage_model(MarriageVariant::single).model;
  PathRecord path{{{0, 1.2}, {1, 3.0}, {2, 0.5}}, std::nullopt};
  const auto ll = path_log_likelihood(path, mm);
  // Hand computation: jumps N->M (0.95), M->S (0.25), censored in S.
  const double lq = std::log(0.95) - 0.95 * 1.2 + std::log(0.25) - 0.37 * 3.0 - 0.6 * 0.5;
  const double lg = lq + 2 * std::log(0.25) + 0.75 * (0.95 * 1.2 + 0.37 * 3.0 + 0.6 * 0.5);
  CHECK(ll.log_q == doctest::Approx(lq).epsilon(1e-13));
  CHECK(ll.log_g == doctest::Approx(lg).epsilon(1e-13));
  const auto info = posterior_full(mm, path);
  const double want = 0.5 * std::exp(lg) / (0.5 * std::exp(lg) + 0.5 * std::exp(lq));
  CHECK(info.smt[2] == doctest::Approx(want).epsilon(1e-12));
  CHECK(info.age == doctest::Approx(4.7));
  CHECK(info.state == 2);
}

TEST_CASE("path validation") {
  CHECK_THROWS(PathRecord{{}, std::nullopt}.validate(4, 1));
  CHECK_THROWS(PathRecord{{{0, -1.0}}, std::nullopt}.validate(4, 1));
  CHECK_THROWS(PathRecord{{{0, 1.0}, {0, 1.0}}, std::nullopt}.validate(4, 1));
  CHECK_THROWS(PathRecord{{{0, 0.0}}, 4}.validate(4, 1));
  CHECK_NOTHROW(PathRecord{{{0, 0.0}}, std::nullopt}.validate(4, 1));
  CHECK_NOTHROW(PathRecord{{{0, 1.0}, {1, 0.2}}, 4}.validate(4, 1));
}

TEST_CASE("mixture transition rows are stochastic and blend the regimes") {
  const auto mm = marriage_model(MarriageVariant::single).model;
  const Matrix p = mixture_transition(mm, 2.0);
  for (std::size_t i = 0; i < 5; ++i) CHECK(sum(p.row(i)) == doctest::Approx(1.0).epsilon(1e-12));
  const Matrix eg = oracle::series_expm(mm.G(), 2.0), eq = oracle::series_expm(mm.Q(), 2.0);
  for (std::size_t j = 0; j < 5; ++j)
    CHECK(p(1, j) == doctest::Approx(0.5 * eg(1, j) + 0.5 * eq(1, j)).epsilon(1e-12));
  const auto blocks = transition_blocks(p, 4);
  CHECK(blocks.F11.rows() == 4);
  CHECK(blocks.F12.cols() == 1);
  const auto info = posterior_current(mm, 1, 4.0);
  const Matrix c = conditional_transition(info, mm, 1.0);
  const double s = info.smt[1];
  const Matrix eg1 = oracle::series_expm(mm.G(), 1.0), eq1 = oracle::series_expm(mm.Q(), 1.0);
  CHECK(c(1, 2) == doctest::Approx(s * eg1(1, 2) + (1 - s) * eq1(1, 2)).epsilon(1e-12));
}

TEST_CASE("posterior limit matches a long-horizon posterior") {
  const auto mm = marriage_model(MarriageVariant::single).model;
  for (std::size_t i = 1; i < 4; ++i)
    CHECK(posterior_limit(mm, i) == doctest::Approx(posterior_current(mm, i, 400.0).smt[i]).epsilon(1e-8));
  // Slower regime dominates survivors in the heterogeneous model.
  CHECK(posterior_limit(mm, kMarried) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rate estimation from hand-made paths") {
  std::vector<PathRecord> paths{
      {{{0, 2.0}, {1, 1.0}}, 2},
      {{{0, 1.0}, {1, 3.0}}, std::nullopt},
  };
  const RateEstimate est = estimate_generator(paths, 2, 1);
  CHECK(*est.rate(0, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(*est.rate(1, 2) == doctest::Approx(0.25));
  CHECK(*est.rate(0, 0) == doctest::Approx(-2.0 / 3.0));
  CHECK(*est.standard_error(0, 1) == doctest::Approx(std::sqrt(2.0) / 3.0));
  CHECK(*est.rate(1, 0) == 0.0);
  const std::vector<PathRecord> only0{{{{0, 1.0}}, std::nullopt}};
  CHECK_FALSE(estimate_generator(only0, 2, 1).rate(1, 2).has_value());
  CHECK_THROWS_AS(estimate_generator({}, 2, 1), InsufficientSampleError);
}
