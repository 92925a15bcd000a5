#pragma once

#include <vector>

#include "gph/mixture.hpp"

namespace gph {

// GPH(pi, T, Psi, S): absorption time of the two-regime mixture with one absorbing state.
class GphDistribution {
 public:
  explicit GphDistribution(MixtureModel model);
  const MixtureModel& model() const { return model_; }
  std::size_t m() const { return model_.m(); }

 private:
  MixtureModel model_;
};

// Conditional law given information at age t, evaluated at horizon s >= t.
double conditional_survival(const GphDistribution& dist, const InformationState& info, double s);
double conditional_density(const GphDistribution& dist, const InformationState& info, double s);

// Unconditional law from (pi, S = diag(s0)).
double survival(const GphDistribution& dist, double t);
double density(const GphDistribution& dist, double t);

double laplace_transform(const GphDistribution& dist, double theta);
double moment(const GphDistribution& dist, unsigned n);

// Classical phase-type (pi, T) with exit vector delta = -T 1.
struct ClassicalPH {
  Vector pi;
  Matrix T;
  Vector delta;

  ClassicalPH(Vector pi, Matrix T);
  std::size_t size() const { return pi.size(); }
  double survival(double t) const;
  double density(double t) const;
  double laplace(double theta) const;
  double moment(unsigned n) const;
};

ClassicalPH to_classical(const GphDistribution& dist);
// Conditional variant: initial law (S(t) e_i ; (I - S(t)) e_i).
ClassicalPH to_classical(const GphDistribution& dist, const InformationState& info);

GphDistribution scale(const GphDistribution& dist, double p);

// Sum of independent variables: run a, then start b on absorption.
ClassicalPH convolve(const ClassicalPH& a, const ClassicalPH& b);
ClassicalPH convolve(const GphDistribution& a, const GphDistribution& b);
ClassicalPH mix(const Vector& weights, const std::vector<ClassicalPH>& laws);
ClassicalPH mix(const Vector& weights, const std::vector<GphDistribution>& laws);

// Erlang chain at rate beta2 with Psi = (beta1/beta2) I and S = alpha I.
GphDistribution erlang_mixture(double alpha, unsigned m, double beta1, double beta2);

// F_n(t) = sum_j p_j Erlang(j, n) CDF(t), p_j = F(j/n) - F((j-1)/n), j = 1..n^2, plus an
// atom F(0) at zero.
class DenseApproximation {
 public:
  DenseApproximation(const RealFunction& target_cdf, unsigned n);
  unsigned n() const { return n_; }
  // weights()[0] is the atom at zero, weights()[j] = p_j.
  const Vector& weights() const { return weights_; }
  double cdf(double t) const;

 private:
  unsigned n_;
  Vector weights_;
  Vector cumulative_;  // C_k = F(min(k, n^2)/n)
  Vector lgamma_;      // log k!
};

double quantile(const RealFunction& cdf, double prob);
// 128 equally spaced points on [0, quantile(0.999)].
Vector probe_grid(const RealFunction& cdf);
double probe_distance(const DenseApproximation& approx, const RealFunction& cdf,
                      const Vector& probes);

}  // namespace gph
