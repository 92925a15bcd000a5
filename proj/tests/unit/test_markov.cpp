#include <doctest.h>

#include <random>

#include "gph/error.hpp"
#include "gph/markov.hpp"
#include "oracle.hpp"

using namespace gph;

TEST_CASE("validate_generator accepts conservative rows") {
  const Generator g = validate_generator(Matrix{{-1.0, 0.4}, {0.2, -0.5}}, Matrix{{0.6}, {0.3}});
  CHECK(g.m() == 2);
  CHECK(g.p() == 1);
  CHECK(g.states() == 3);
  CHECK(g.exit_total()[0] == doctest::Approx(0.6));
  const Matrix q = g.assembled();
  CHECK(q.rows() == 3);
  CHECK(q(2, 2) == 0.0);
  CHECK(q(0, 2) == doctest::Approx(0.6));
}

TEST_CASE("validate_generator rejects bad input") {
  CHECK_THROWS_AS(validate_generator(Matrix{{-1.0, 0.4}, {0.2, -0.5}}, Matrix{{0.5}, {0.3}}),
                  ValidationError);
  CHECK_THROWS_AS(validate_generator(Matrix{{-1.0, -0.1}, {0.2, -0.5}}, Matrix{{1.1}, {0.3}}),
                  ValidationError);
  CHECK_THROWS_AS(validate_generator(Matrix{{-1.0, 0.4}}, Matrix{{0.6}}), DimensionError);
  // Closed class {0,1}: no way out.
  CHECK_THROWS(validate_generator(Matrix{{-1.0, 1.0}, {1.0, -1.0}}, Matrix{{0.0}, {0.0}}));
}

TEST_CASE("diagonal repair") {
  ValidationOptions opt;
  opt.repair_diagonal = true;
  const Generator g = validate_generator(Matrix{{0.0, 0.4}, {0.2, 0.0}}, Matrix{{0.6}, {0.3}}, opt);
  CHECK(g.T()(0, 0) == doctest::Approx(-1.0));
  CHECK(g.T()(1, 1) == doctest::Approx(-0.5));
}

TEST_CASE("transition matrix is stochastic and matches the block form") {
  std::mt19937_64 rng(2);
  const auto r = oracle::random_model(rng, 4, 2);
  const Generator g = validate_generator(r.T, r.D);
  const Matrix p = transition_matrix(g, 1.3);
  for (std::size_t i = 0; i < p.rows(); ++i) CHECK(sum(p.row(i)) == doctest::Approx(1.0));
  const auto [e, f] = block_exponential(g, 1.3);
  CHECK(max_abs_diff(e, oracle::series_expm(r.T, 1.3)) <= 1e-12);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(f(i, j) == doctest::Approx(p(i, 4 + j)));
}

TEST_CASE("classical PH survival of an exponential") {
  const Generator g = validate_generator(Matrix{{-2.0}}, Matrix{{2.0}});
  CHECK(classical_ph_survival({1.0}, g, 0.7) == doctest::Approx(std::exp(-1.4)).epsilon(1e-14));
  CHECK(classical_ph_density({1.0}, g, 0.7) == doctest::Approx(2 * std::exp(-1.4)).epsilon(1e-14));
}

TEST_CASE("scaled generator multiplies rows") {
  const Generator g = validate_generator(Matrix{{-1.0, 0.4}, {0.2, -0.5}}, Matrix{{0.6}, {0.3}});
  const Matrix s = scaled_generator(g, {2.0, 0.5});
  CHECK(s(0, 1) == doctest::Approx(0.8));
  CHECK(s(1, 2) == doctest::Approx(0.15));
  CHECK(s(2, 2) == 0.0);
}
