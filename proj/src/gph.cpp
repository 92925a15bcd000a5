#include "gph/gph.hpp"

#include <algorithm>
#include <cmath>

#include "branches.hpp"
#include "gph/kernels.hpp"

namespace gph {

using detail::check_info;
using detail::check_time;
using detail::elapsed;
using detail::propagate;

GphDistribution::GphDistribution(MixtureModel model) : model_(std::move(model)) {
  if (model_.p() != 1)
    throw DimensionError("GPH law needs exactly one absorbing state; use the competing module");
}

double conditional_survival(const GphDistribution& dist, const InformationState& info, double s) {
  const auto& model = dist.model();
  check_info(model, info);
  const double nu = elapsed(info, s, "conditional_survival");
  if (!model.is_transient(info.state)) return 0.0;
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  const auto b = propagate(model, ug, uq, nu);
  return sum(b.g) + sum(b.q);
}

double conditional_density(const GphDistribution& dist, const InformationState& info, double s) {
  const auto& model = dist.model();
  check_info(model, info);
  const double nu = elapsed(info, s, "conditional_density");
  if (!model.is_transient(info.state)) return 0.0;
  const auto [ug, uq] = detail::split_state(model.m(), info.state, info.smt);
  const auto b = propagate(model, ug, uq, nu);
  return dot(b.g, hadamard(model.psi(), model.delta())) + dot(b.q, model.delta());
}

double survival(const GphDistribution& dist, double t) {
  check_time(t, "survival");
  const auto [ug, uq] = detail::split_initial(dist.model());
  const auto b = propagate(dist.model(), ug, uq, t);
  return sum(b.g) + sum(b.q);
}

double density(const GphDistribution& dist, double t) {
  check_time(t, "density");
  const auto& model = dist.model();
  const auto [ug, uq] = detail::split_initial(model);
  const auto b = propagate(model, ug, uq, t);
  return dot(b.g, hadamard(model.psi(), model.delta())) + dot(b.q, model.delta());
}

static Matrix resolvent_arg(const Matrix& a, double theta) {
  Matrix r = a * -1.0;
  for (std::size_t i = 0; i < r.rows(); ++i) r(i, i) += theta;
  return r;
}

double laplace_transform(const GphDistribution& dist, double theta) {
  const auto& model = dist.model();
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw DomainError("laplace_transform: theta must be finite and >= 0");
  model.require_psi_nonsingular("laplace_transform");
  const auto [ug, uq] = detail::split_initial(model);
  const Vector xg = solve(resolvent_arg(model.psiT(), theta), hadamard(model.psi(), model.delta()));
  const Vector xq = solve(resolvent_arg(model.T(), theta), model.delta());
  return dot(ug, xg) + dot(uq, xq);
}

double moment(const GphDistribution& dist, unsigned n) {
  const auto& model = dist.model();
  if (n == 0) return 1.0;
  model.require_psi_nonsingular("moment");
  const auto [ug, uq] = detail::split_initial(model);
  // n! u^T (-A)^{-n} 1
  const Lu lg(model.psiT() * -1.0), lq(model.T() * -1.0);
  Vector xg = ones(model.m()), xq = ones(model.m());
  double fact = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    xg = lg.solve(xg);
    xq = lq.solve(xq);
    fact *= k;
  }
  return fact * (dot(ug, xg) + dot(uq, xq));
}

// ---- classical representation ---------------------------------------------

ClassicalPH::ClassicalPH(Vector pi_, Matrix T_) : pi(std::move(pi_)), T(std::move(T_)) {
  if (!T.square() || T.rows() != pi.size()) throw DimensionError("classical PH: size mismatch");
  delta = -1.0 * (T * ones(size()));
  for (double& d : delta)
    if (d < 0.0 && d > -1e-12) d = 0.0;
}

double ClassicalPH::survival(double t) const {
  check_time(t, "survival");
  return sum(row_times(pi, expm(T, t)));
}

double ClassicalPH::density(double t) const {
  check_time(t, "density");
  return dot(row_times(pi, expm(T, t)), delta);
}

double ClassicalPH::laplace(double theta) const {
  if (!(theta >= 0.0)) throw DomainError("laplace: theta must be >= 0");
  return dot(pi, solve(resolvent_arg(T, theta), delta));
}

double ClassicalPH::moment(unsigned n) const {
  if (n == 0) return 1.0;
  const Lu lu(T * -1.0);
  Vector x = ones(size());
  double fact = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    x = lu.solve(x);
    fact *= k;
  }
  return fact * dot(pi, x);
}

static Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

static Vector concat(const Vector& a, const Vector& b) {
  Vector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

static ClassicalPH classical_from_split(const MixtureModel& model, const Vector& ug,
                                        const Vector& uq) {
  return ClassicalPH(concat(ug, uq), block_diag(model.psiT(), model.T()));
}

ClassicalPH to_classical(const GphDistribution& dist) {
  const auto [ug, uq] = detail::split_initial(dist.model());
  return classical_from_split(dist.model(), ug, uq);
}

ClassicalPH to_classical(const GphDistribution& dist, const InformationState& info) {
  check_info(dist.model(), info);
  if (!dist.model().is_transient(info.state))
    throw DomainError("to_classical: information state is absorbing");
  const auto [ug, uq] = detail::split_state(dist.m(), info.state, info.smt);
  return classical_from_split(dist.model(), ug, uq);
}

GphDistribution scale(const GphDistribution& dist, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("scale: factor must be positive");
  const auto& model = dist.model();
  Generator g = validate_generator(model.T() * (1.0 / p), model.D() * (1.0 / p));
  return GphDistribution(model.with_generator(std::move(g)));
}

ClassicalPH convolve(const ClassicalPH& a, const ClassicalPH& b) {
  const std::size_t na = a.size(), nb = b.size();
  Matrix t = block_diag(a.T, b.T);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) t(i, na + j) = a.delta[i] * b.pi[j];
  const double defect = std::max(0.0, 1.0 - sum(a.pi));
  return ClassicalPH(concat(a.pi, defect * b.pi), std::move(t));
}

ClassicalPH convolve(const GphDistribution& a, const GphDistribution& b) {
  return convolve(to_classical(a), to_classical(b));
}

ClassicalPH mix(const Vector& weights, const std::vector<ClassicalPH>& laws) {
  if (laws.empty()) throw DomainError("mix: no components");
  if (weights.size() != laws.size()) throw DimensionError("mix: one weight per component");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("mix: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mix: weights must sum to 1");
  Vector pi;
  Matrix t;
  for (std::size_t k = 0; k < laws.size(); ++k) {
    pi = concat(pi, weights[k] * laws[k].pi);
    t = k == 0 ? laws[k].T : block_diag(t, laws[k].T);
  }
  return ClassicalPH(std::move(pi), std::move(t));
}

ClassicalPH mix(const Vector& weights, const std::vector<GphDistribution>& laws) {
  std::vector<ClassicalPH> c;
  for (const auto& d : laws) c.push_back(to_classical(d));
  return mix(weights, c);
}

GphDistribution erlang_mixture(double alpha, unsigned m, double beta1, double beta2) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("erlang_mixture: alpha outside [0,1]");
  if (m == 0) throw DomainError("erlang_mixture: need at least one phase");
  if (!(beta1 > 0.0) || !(beta2 > 0.0)) throw DomainError("erlang_mixture: rates must be > 0");
  Matrix T(m, m), D(m, 1);
  for (unsigned i = 0; i < m; ++i) {
    T(i, i) = -beta2;
    if (i + 1 < m)
      T(i, i + 1) = beta2;
    else
      D(i, 0) = beta2;
  }
  MixtureModel model(validate_generator(T, D), Vector(m, beta1 / beta2), unit(m, 0),
                     Vector(m, alpha));
  return GphDistribution(std::move(model));
}

// ---- dense approximation ---------------------------------------------------

DenseApproximation::DenseApproximation(const RealFunction& target_cdf, unsigned n) : n_(n) {
  if (n == 0) throw DomainError("dense_approximation: n must be >= 1");
  const std::size_t K = static_cast<std::size_t>(n) * n;
  cumulative_.resize(K + 1);
  weights_.resize(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    const double f = target_cdf(static_cast<double>(k) / n);
    if (!std::isfinite(f) || f < -1e-12 || f > 1.0 + 1e-12)
      throw DomainError("dense_approximation: target cdf value outside [0,1]");
    if (k > 0 && f < cumulative_[k - 1] - 1e-12)
      throw DomainError("dense_approximation: target cdf is not monotone");
    cumulative_[k] = std::clamp(f, k > 0 ? cumulative_[k - 1] : 0.0, 1.0);
    weights_[k] = k == 0 ? cumulative_[0] : cumulative_[k] - cumulative_[k - 1];
  }
  lgamma_.resize(K + 1);
  for (std::size_t k = 0; k <= K; ++k) lgamma_[k] = std::lgamma(static_cast<double>(k) + 1.0);
}

double DenseApproximation::cdf(double t) const {
  if (!(t >= 0.0)) return 0.0;
  const std::size_t K = cumulative_.size() - 1;
  const double lambda = static_cast<double>(n_) * t;
  if (lambda == 0.0) return cumulative_[0];
  Vector pmf(K + 1);
  const double ll = std::log(lambda);
  double mass = 0.0;
  for (std::size_t k = 0; k <= K; ++k) {
    pmf[k] = std::exp(-lambda + static_cast<double>(k) * ll - lgamma_[k]);
    mass += pmf[k];
  }
  const double body = kernels::active().dot(pmf.data(), cumulative_.data(), K + 1);
  return body + std::max(0.0, 1.0 - mass) * cumulative_[K];
}

double quantile(const RealFunction& cdf, double prob) {
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("quantile: probability must be in (0,1)");
  double hi = 1.0;
  for (int k = 0; cdf(hi) < prob; ++k) {
    if (k > 200) throw DomainError("quantile: cdf never reaches the requested level");
    hi *= 2.0;
  }
  double lo = 0.0;
  if (cdf(lo) >= prob) return 0.0;
  for (int k = 0; k < 200 && hi - lo > 1e-14 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) >= prob ? hi : lo) = mid;
  }
  return hi;
}

Vector probe_grid(const RealFunction& cdf) {
  const double top = quantile(cdf, 0.999);
  Vector g(128);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = top * static_cast<double>(k) / 127.0;
  return g;
}

double probe_distance(const DenseApproximation& approx, const RealFunction& cdf,
                      const Vector& probes) {
  double d = 0.0;
  for (double x : probes) d = std::max(d, std::abs(approx.cdf(x) - cdf(x)));
  return d;
}

}  // namespace gph
