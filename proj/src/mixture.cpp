#include "gph/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gph/error.hpp"

namespace gph {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_weights(const Vector& v, std::size_t m, const char* name, bool unit_interval) {
  if (v.size() != m)
    throw DimensionError(std::string(name) + ": expected " + std::to_string(m) + " entries");
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0 || (unit_interval && v[i] > 1.0))
      throw DomainError(std::string(name) + "[" + std::to_string(i + 1) + "] = " +
                        std::to_string(v[i]) + " is out of range");
  }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void check_time(double t, const char* op) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError(std::string(op) + ": time must be finite and >= 0");
}

}  // namespace

MixtureModel::MixtureModel(Generator g, Vector psi, Vector pi, Vector s0)
    : gen_(std::move(g)), psi_(std::move(psi)), pi_(std::move(pi)), s0_(std::move(s0)) {
  const std::size_t m = gen_.m();
  check_weights(psi_, m, "psi", false);
  check_weights(pi_, m, "pi", true);
  check_weights(s0_, m, "s0", true);
  if (sum(pi_) > 1.0 + 1e-12) throw DomainError("pi sums to more than 1");
  delta_ = gen_.exit_total();
  psiT_ = scale_rows(psi_, gen_.T());
  psiD_ = scale_rows(psi_, gen_.D());
  eig_T_ = eigen(gen_.T());
  eig_psiT_ = eigen(psiT_);
  shift_ = std::max(eig_T_.values.front().real(), eig_psiT_.values.front().real());
  shift_ = std::min(shift_, 0.0);
}

Matrix MixtureModel::G() const { return scaled_generator(gen_, psi_); }

bool MixtureModel::psi_nonsingular() const {
  return std::all_of(psi_.begin(), psi_.end(), [](double x) { return x > 0.0; });
}

void MixtureModel::require_psi_nonsingular(const char* op) const {
  for (std::size_t i = 0; i < psi_.size(); ++i)
    if (!(psi_[i] > 0.0))
      throw SingularMatrixError(std::string(op) + ": psi[" + std::to_string(i + 1) +
                                "] = 0 makes Psi T singular");
}

MixtureModel MixtureModel::with_psi(Vector psi) const { return {gen_, std::move(psi), pi_, s0_}; }
MixtureModel MixtureModel::with_pi(Vector pi) const { return {gen_, psi_, std::move(pi), s0_}; }
MixtureModel MixtureModel::with_s0(Vector s0) const { return {gen_, psi_, pi_, std::move(s0)}; }
MixtureModel MixtureModel::with_generator(Generator g) const { return {std::move(g), psi_, pi_, s0_}; }

std::string_view regime_name(InfoRegime r) {
  switch (r) {
    case InfoRegime::initial: return "initial";
    case InfoRegime::current: return "current";
    case InfoRegime::endpoints: return "endpoints";
    case InfoRegime::full: return "full";
  }
  return "unknown";
}

static void check_state(const MixtureModel& model, std::size_t state) {
  if (state >= model.states())
    throw DimensionError("state " + std::to_string(state + 1) + " is outside the state space");
}

InformationState prior_information(const MixtureModel& model, std::size_t state, double age) {
  check_state(model, state);
  check_time(age, "information");
  return {state, age, model.s0(), InfoRegime::initial};
}

InformationState fixed_information(const MixtureModel& model, std::size_t state, double age,
                                   double s) {
  check_state(model, state);
  check_time(age, "information");
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("posterior weight must lie in [0,1]");
  return {state, age, Vector(model.m(), s), InfoRegime::initial};
}

// ---- paths -----------------------------------------------------------------

double PathRecord::elapsed() const {
  double t = 0.0;
  for (const auto& v : visits) t += v.duration;
  return t;
}

std::size_t PathRecord::current_state() const {
  if (absorbed) return *absorbed;
  return visits.back().state;
}

void PathRecord::validate(std::size_t m, std::size_t p) const {
  if (visits.empty()) throw DomainError("path: no visits");
  for (std::size_t k = 0; k < visits.size(); ++k) {
    const auto& v = visits[k];
    const std::string where = "path visit " + std::to_string(k + 1);
    if (v.state >= m) throw DomainError(where + ": state is not transient");
    if (!std::isfinite(v.duration) || v.duration < 0.0)
      throw DomainError(where + ": negative or non-finite sojourn");
    const bool last = k + 1 == visits.size();
    if (v.duration == 0.0 && !(last && !absorbed))
      throw DomainError(where + ": zero sojourn before a jump");
    if (k > 0 && visits[k - 1].state == v.state)
      throw DomainError(where + ": repeats the previous state");
  }
  if (absorbed && (*absorbed < m || *absorbed >= m + p))
    throw DomainError("path: terminal state is not absorbing");
}

PathStatistics::PathStatistics(std::size_t m_, std::size_t p_)
    : m(m_), p(p_), occupancy(m_, 0.0), counts(m_, m_ + p_) {}

void PathStatistics::add(const PathRecord& path) {
  path.validate(m, p);
  for (std::size_t k = 0; k < path.visits.size(); ++k) {
    const auto& v = path.visits[k];
    occupancy[v.state] += v.duration;
    if (k + 1 < path.visits.size())
      counts(v.state, path.visits[k + 1].state) += 1.0;
    else if (path.absorbed)
      counts(v.state, *path.absorbed) += 1.0;
  }
}

void PathStatistics::merge(const PathStatistics& other) {
  if (other.m != m || other.p != p) throw DimensionError("path statistics: shape mismatch");
  occupancy = occupancy + other.occupancy;
  counts += other.counts;
}

static double rate_to(const MixtureModel& model, std::size_t k, std::size_t j) {
  return j < model.m() ? model.T()(k, j) : model.D()(k, j - model.m());
}

LogLikelihood path_log_likelihood(const PathRecord& path, const MixtureModel& model) {
  path.validate(model.m(), model.p());
  double lq = 0.0, lg = 0.0;
  for (std::size_t k = 0; k < path.visits.size(); ++k) {
    const auto& v = path.visits[k];
    const double qk = -model.T()(v.state, v.state);
    const double psi = model.psi()[v.state];
    lq -= qk * v.duration;
    lg -= psi * qk * v.duration;
    std::optional<std::size_t> next;
    if (k + 1 < path.visits.size())
      next = path.visits[k + 1].state;
    else
      next = path.absorbed;
    if (!next) continue;
    const double q = rate_to(model, v.state, *next);
    const double g = psi * q;
    lq = q > 0.0 ? lq + std::log(q) : kNegInf;
    lg = g > 0.0 ? lg + std::log(g) : kNegInf;
  }
  return {lq, lg};
}

Likelihood path_likelihood(const PathRecord& path, const MixtureModel& model) {
  const auto ll = path_log_likelihood(path, model);
  return {std::exp(ll.log_q), std::exp(ll.log_g)};
}

// ---- posteriors ------------------------------------------------------------

InformationState posterior_full(const MixtureModel& model, const PathRecord& path) {
  const auto ll = path_log_likelihood(path, model);
  const double s = model.s0()[path.start_state()];
  const double a = s > 0.0 ? std::log(s) + ll.log_g : kNegInf;
  const double b = s < 1.0 ? std::log1p(-s) + ll.log_q : kNegInf;
  if (a == kNegInf && b == kNegInf)
    throw DegenerateInformationError("path has zero likelihood under both regimes");
  double post;
  if (a == kNegInf)
    post = 0.0;
  else if (b == kNegInf)
    post = 1.0;
  else
    post = 1.0 / (1.0 + std::exp(b - a));
  return {path.current_state(), path.elapsed(), Vector(model.m(), post), InfoRegime::full};
}

static Matrix expm_G(const MixtureModel& model, double t) { return expm(model.G(), t); }

// Posterior weights from a row vector u over transient states: u^T S e^{Gt} / u^T P(t).
static InformationState posterior_from_row(const MixtureModel& model, const Vector& u,
                                           std::size_t i, double t, InfoRegime regime) {
  const std::size_t m = model.m(), n = model.states();
  Vector ufull(n, 0.0), ug(n, 0.0), uq(n, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    ug[k] = u[k] * model.s0()[k];
    uq[k] = u[k] * (1.0 - model.s0()[k]);
  }
  const Vector num = row_times(ug, expm_G(model, t));
  const Vector qpart = row_times(uq, expm(model.Q(), t));
  const Vector den = num + qpart;
  if (!(den[i] > 0.0))
    throw DegenerateInformationError("state " + std::to_string(i + 1) +
                                     " is unreachable under the given information");
  Vector smt(m);
  for (std::size_t j = 0; j < m; ++j) smt[j] = den[j] > 0.0 ? clamp01(num[j] / den[j]) : model.s0()[j];
  return {i, t, std::move(smt), regime};
}

InformationState posterior_endpoints(const MixtureModel& model, std::size_t i0, std::size_t i,
                                     double t) {
  check_state(model, i);
  check_time(t, "posterior_endpoints");
  if (i0 >= model.m()) throw DomainError("posterior_endpoints: start state must be transient");
  return posterior_from_row(model, unit(model.m(), i0), i, t, InfoRegime::endpoints);
}

InformationState posterior_current(const MixtureModel& model, std::size_t i, double t) {
  check_state(model, i);
  check_time(t, "posterior_current");
  return posterior_from_row(model, model.pi(), i, t, InfoRegime::current);
}

static Matrix blend(const Vector& s, const Matrix& eg, const Matrix& eq, std::size_t m) {
  Matrix p = eq;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < p.cols(); ++j) p(k, j) = s[k] * eg(k, j) + (1.0 - s[k]) * eq(k, j);
  return p;
}

Matrix mixture_transition(const MixtureModel& model, double t) {
  check_time(t, "mixture_transition");
  return blend(model.s0(), expm_G(model, t), expm(model.Q(), t), model.m());
}

Matrix conditional_transition(const InformationState& info, const MixtureModel& model, double h) {
  check_time(h, "conditional_transition");
  if (info.smt.size() != model.m()) throw DimensionError("information: smt has wrong length");
  return blend(info.smt, expm_G(model, h), expm(model.Q(), h), model.m());
}

TransitionBlocks transition_blocks(const Matrix& p, std::size_t m) {
  if (!p.square() || p.rows() < m) throw DimensionError("transition_blocks: bad shape");
  const std::size_t n = p.rows();
  TransitionBlocks b{Matrix(m, m), Matrix(m, n - m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) (j < m ? b.F11(i, j) : b.F12(i, j - m)) = p(i, j);
  return b;
}

double posterior_limit(const MixtureModel& model, std::size_t i) {
  check_state(model, i);
  const std::size_t m = model.m();
  const Vector ug = hadamard(model.pi(), model.s0());
  const Vector uq = model.pi() - ug;
  if (i >= m) {
    const Vector col = model.D().col(i - m);
    const Vector x = solve(model.T(), col);
    const double den = dot(model.pi(), x);
    if (den == 0.0) throw DegenerateInformationError("absorbing state is never reached");
    return clamp01(dot(ug, x) / den);
  }
  const Vector ei = unit(m, i);
  const auto g = leading_term(model.psiT(), model.eig_psiT(), ug, ei);
  const auto q = leading_term(model.T(), model.eig_T(), uq, ei);
  if (!g && !q) throw DegenerateInformationError("state is unreachable from pi");
  if (!g) return 0.0;
  if (!q) return 1.0;
  const double tol = 1e-9 * std::max({1.0, std::abs(g->rate), std::abs(q->rate)});
  if (g->rate > q->rate + tol) return 1.0;
  if (q->rate > g->rate + tol) return 0.0;
  const double cg = dot(row_times(ug, g->coeff), ei);
  const double cq = dot(row_times(uq, q->coeff), ei);
  return clamp01(cg / (cg + cq));
}

// ---- estimation ------------------------------------------------------------

RateEstimate::RateEstimate(PathStatistics stats) : stats_(std::move(stats)) {}

std::optional<double> RateEstimate::exit_rate(std::size_t k) const {
  if (k >= m()) throw DimensionError("estimate: state is not transient");
  if (!visited(k)) return std::nullopt;
  double n = 0.0;
  for (std::size_t j = 0; j < m() + p(); ++j) n += stats_.counts(k, j);
  return n / stats_.occupancy[k];
}

std::optional<double> RateEstimate::rate(std::size_t k, std::size_t j) const {
  if (k >= m() || j >= m() + p()) throw DimensionError("estimate: index out of range");
  if (!visited(k)) return std::nullopt;
  if (j == k) return -*exit_rate(k);
  return stats_.counts(k, j) / stats_.occupancy[k];
}

std::optional<double> RateEstimate::standard_error(std::size_t k, std::size_t j) const {
  if (k >= m() || j >= m() + p()) throw DimensionError("estimate: index out of range");
  if (!visited(k)) return std::nullopt;
  double n = stats_.counts(k, j);
  if (j == k) {
    n = 0.0;
    for (std::size_t l = 0; l < m() + p(); ++l) n += stats_.counts(k, l);
  }
  return std::sqrt(n) / stats_.occupancy[k];
}

std::optional<double> RateEstimate::speed_scaled(std::size_t k, std::size_t j,
                                                 const Vector& psi) const {
  auto r = rate(k, j);
  if (!r) return r;
  return psi.at(k) * *r;
}

RateEstimate estimate_generator(const std::vector<PathRecord>& paths, std::size_t m,
                                std::size_t p) {
  if (paths.empty()) throw InsufficientSampleError("estimate_generator: no paths");
  PathStatistics stats(m, p);
  for (const auto& path : paths) stats.add(path);
  return RateEstimate(std::move(stats));
}

}  // namespace gph
