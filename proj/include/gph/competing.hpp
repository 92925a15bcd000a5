#pragma once

#include "gph/mixture.hpp"

namespace gph {

// Mixture with p >= 1 absorbing states (causes).
class CompetingModel {
 public:
  explicit CompetingModel(MixtureModel model) : model_(std::move(model)) {}
  const MixtureModel& model() const { return model_; }
  std::size_t m() const { return model_.m(); }
  std::size_t p() const { return model_.p(); }

 private:
  MixtureModel model_;
};

// Cause j in 1..p at the API boundary; index() is the 0-based column of D.
class CauseLabel {
 public:
  explicit CauseLabel(std::size_t one_based) : j_(one_based) {}
  std::size_t label() const { return j_; }
  std::size_t index() const { return j_ - 1; }

 private:
  std::size_t j_;
};

struct SubDistribution {
  double F;     // P(tau <= s, J = j | I_{i,t})
  double f;     // d/ds F
  double Fbar;  // P(s < tau < inf, J = j | I_{i,t}) = p_ij - F
};

struct OverallSurvival {
  double survival;
  double density;
};

SubDistribution sub_distribution(const CompetingModel& cm, const InformationState& info,
                                 CauseLabel j, double s);
OverallSurvival overall_survival(const CompetingModel& cm, const InformationState& info, double s);

double cause_forward_intensity(const CompetingModel& cm, const InformationState& info, CauseLabel j,
                               double s);
double cause_instantaneous_intensity(const CompetingModel& cm, const InformationState& info,
                                     CauseLabel j);
// Instantaneous cause intensity with S replaced by its long-run limit.
double longrun_cause_instantaneous(const CompetingModel& cm, std::size_t i, CauseLabel j);
double longrun_cause_intensity(const CompetingModel& cm, const InformationState& info,
                               CauseLabel j);

// p_ij = -e_i^T T^{-1} D e_j (the same under both regimes).
double ultimate_absorption(const CompetingModel& cm, const InformationState& info, CauseLabel j);

struct CauseConditional {
  double F_tilde;  // F_ij / p_ij
  double p_tilde;  // Fbar_ij / Fbar_i
};
CauseConditional conditional_on_cause(const CompetingModel& cm, const InformationState& info,
                                      CauseLabel j, double s);

struct UnconditionalFamily {
  double F, f, Fbar, alpha, F_tilde, p_tilde;
};
UnconditionalFamily unconditional_family(const CompetingModel& cm, CauseLabel j, double t);

// R_ij(t) = e_i^T (S(t)(Psi T)^{-1} + (I - S(t)) T^{-1}) T^{-1} D e_j.
double cause_residual_lifetime(const CompetingModel& cm, const InformationState& info,
                               CauseLabel j);

}  // namespace gph
