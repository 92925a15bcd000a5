#pragma once

#include <functional>
#include <random>

#include "gph/matrix.hpp"

namespace oracle {

// Taylor series exponential in long double with power-of-two scaling.
gph::Matrix series_expm(const gph::Matrix& a, double t);

// Gauss-Jordan inverse in long double.
gph::Matrix gauss_inverse(const gph::Matrix& a);

// Composite Gauss-Legendre (8 points) on n equal panels.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);

// Random sign-correct sub-generator with one absorbing column per cause.
struct RandomModel {
  gph::Matrix T, D;
  gph::Vector psi, pi, s0;
};
RandomModel random_model(std::mt19937_64& rng, std::size_t m, std::size_t p);

double erlang_pdf(double t, int k, double rate);

}  // namespace oracle
