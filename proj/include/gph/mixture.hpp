#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gph/markov.hpp"
#include "gph/numkernel.hpp"

namespace gph {

// Two-regime Markov mixture: the Q-regime moves with [[T, D], [0, 0]], the G-regime
// with [[Psi T, Psi D], [0, 0]] for a diagonal speed matrix Psi. A path starting in
// transient state i follows G with probability s0_i.
//
// pi is the initial law over transient states; it may sum to less than one (the
// remainder starts absorbed).
class MixtureModel {
 public:
  MixtureModel(Generator g, Vector psi, Vector pi, Vector s0);

  std::size_t m() const { return gen_.m(); }
  std::size_t p() const { return gen_.p(); }
  std::size_t states() const { return gen_.states(); }
  bool is_transient(std::size_t state) const { return state < m(); }

  const Generator& generator() const { return gen_; }
  const Matrix& T() const { return gen_.T(); }
  const Matrix& D() const { return gen_.D(); }
  const Vector& psi() const { return psi_; }
  const Vector& pi() const { return pi_; }
  const Vector& s0() const { return s0_; }
  const Vector& delta() const { return delta_; }  // D 1_p
  const Matrix& psiT() const { return psiT_; }
  const Matrix& psiD() const { return psiD_; }
  Matrix Q() const { return gen_.assembled(); }
  Matrix G() const;

  bool psi_nonsingular() const;
  // Throws SingularMatrixError naming `op` when some psi_i is zero.
  void require_psi_nonsingular(const char* op) const;

  const EigenSystem& eig_T() const { return eig_T_; }
  const EigenSystem& eig_psiT() const { return eig_psiT_; }
  // Largest real part over the spectra of T and Psi T. Exponentials are evaluated
  // as exp((A - shift I) nu) so that ratios stay representable at long horizons.
  double spectral_shift() const { return shift_; }

  MixtureModel with_psi(Vector psi) const;
  MixtureModel with_pi(Vector pi) const;
  MixtureModel with_s0(Vector s0) const;
  MixtureModel with_generator(Generator g) const;

 private:
  Generator gen_;
  Vector psi_, pi_, s0_, delta_;
  Matrix psiT_, psiD_;
  EigenSystem eig_T_, eig_psiT_;
  double shift_ = 0.0;
};

enum class InfoRegime { initial, current, endpoints, full };
std::string_view regime_name(InfoRegime r);

// Past information I_{i,t}: current state (0-based, may be absorbing), age t and the
// posterior weights s_j(t) for transient j.
struct InformationState {
  std::size_t state = 0;
  double age = 0.0;
  Vector smt;
  InfoRegime regime = InfoRegime::initial;
};

// Information at age t carrying the prior weights s0 (no updating).
InformationState prior_information(const MixtureModel& model, std::size_t state, double age = 0.0);
// Information with explicit uniform weight s on every transient state.
InformationState fixed_information(const MixtureModel& model, std::size_t state, double age,
                                   double s);

struct Visit {
  std::size_t state;
  double duration;
};

// Observed trajectory. States are 0-based; `absorbed` is the terminal absorbing state
// if one was reached. Without it the last visit is right-censored.
struct PathRecord {
  std::vector<Visit> visits;
  std::optional<std::size_t> absorbed;

  double elapsed() const;
  std::size_t current_state() const;
  std::size_t start_state() const { return visits.front().state; }
  // Throws DomainError when the record breaks the invariants for an (m, p) model.
  void validate(std::size_t m, std::size_t p) const;
};

// Sufficient statistics: time in each transient state and transition counts.
struct PathStatistics {
  std::size_t m = 0, p = 0;
  Vector occupancy;  // length m
  Matrix counts;     // m x (m+p)

  PathStatistics(std::size_t m, std::size_t p);
  void add(const PathRecord& path);
  void merge(const PathStatistics& other);
};

struct LogLikelihood {
  double log_q;  // -inf when the path is impossible under Q
  double log_g;
};

struct Likelihood {
  double lq;
  double lg;
};

LogLikelihood path_log_likelihood(const PathRecord& path, const MixtureModel& model);
Likelihood path_likelihood(const PathRecord& path, const MixtureModel& model);

InformationState posterior_full(const MixtureModel& model, const PathRecord& path);
InformationState posterior_endpoints(const MixtureModel& model, std::size_t i0, std::size_t i,
                                     double t);
InformationState posterior_current(const MixtureModel& model, std::size_t i, double t);

// P(t) = S e^{G t} + (I - S) e^{Q t}, (m+p) x (m+p).
Matrix mixture_transition(const MixtureModel& model, double t);
// P(t, t+h) = S(t) e^{G h} + (I - S(t)) e^{Q h}.
Matrix conditional_transition(const InformationState& info, const MixtureModel& model, double h);

struct TransitionBlocks {
  Matrix F11;  // transient -> transient
  Matrix F12;  // transient -> absorbing
};
TransitionBlocks transition_blocks(const Matrix& p, std::size_t m);

// lim_{t -> inf} s_i(t) under current-state information.
double posterior_limit(const MixtureModel& model, std::size_t i);

// Complete-data estimates q_kj = N_kj / T_k with standard errors sqrt(N_kj) / T_k.
class RateEstimate {
 public:
  explicit RateEstimate(PathStatistics stats);

  std::size_t m() const { return stats_.m; }
  std::size_t p() const { return stats_.p; }
  const PathStatistics& statistics() const { return stats_; }
  bool visited(std::size_t k) const { return stats_.occupancy[k] > 0.0; }
  // Missing when state k was never occupied.
  std::optional<double> rate(std::size_t k, std::size_t j) const;
  std::optional<double> standard_error(std::size_t k, std::size_t j) const;
  // Total exit rate q_k = N_k / T_k.
  std::optional<double> exit_rate(std::size_t k) const;
  // g_kj = psi_k q_kj.
  std::optional<double> speed_scaled(std::size_t k, std::size_t j, const Vector& psi) const;

 private:
  PathStatistics stats_;
};

RateEstimate estimate_generator(const std::vector<PathRecord>& paths, std::size_t m,
                                std::size_t p);

}  // namespace gph
