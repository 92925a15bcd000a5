#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gph/curve.hpp"
#include "gph/mixture.hpp"

namespace gph {

// SplitMix64 (Steele, Lea, Flood). Substreams are seeded from (seed, index) so each
// path is reproducible regardless of how paths are distributed across threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  // Uniform on the open interval (0, 1).
  double uniform();
  double exponential(double rate);

 private:
  std::uint64_t state_;
};

struct SimulationConfig {
  std::size_t paths = 1;
  double horizon = 100.0;
  std::uint64_t seed = 0;
  bool record_regime = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

enum class Regime : std::uint8_t { Q = 0, G = 1 };

struct Absorption {
  std::size_t cause;  // 0-based column of D
  double time;
};

struct SimulatedPath {
  Regime regime;
  PathRecord record;
  std::optional<Absorption> absorbed;
};

// Compact per-path summary for large ensembles.
struct PathOutcome {
  Regime regime;
  std::int32_t start;  // -1: the initial law put the path in an absorbing state
  std::int32_t cause;  // -1: not absorbed within the horizon (censored)
  double time;         // absorption time, or the horizon when censored
};

struct Snapshot {
  Regime regime;
  std::int32_t state;  // state occupied at the snapshot time; -1 if started absorbed
};

class PathSimulator {
 public:
  PathSimulator(const MixtureModel& model, SimulationConfig cfg);

  const SimulationConfig& config() const { return cfg_; }

  // Path `index` of the ensemble. Without `start` the initial state is drawn from pi;
  // a draw landing in pi's deficit yields an empty record flagged by start_absorbed().
  SimulatedPath sample_path(std::size_t index, std::optional<std::size_t> start = {}) const;

  std::vector<SimulatedPath> paths(std::optional<std::size_t> start = {}) const;
  std::vector<PathOutcome> outcomes(std::optional<std::size_t> start = {}) const;
  std::vector<Snapshot> snapshots(double t, std::optional<std::size_t> start = {}) const;

 private:
  struct Jumps {
    double rate;
    std::vector<double> cumulative;  // over the m + p destinations
  };
  template <class Visitor>
  void run(std::size_t index, std::optional<std::size_t> start, Visitor&& visit) const;
  template <class Out, class Fn>
  std::vector<Out> fan_out(Fn&& fn) const;

  MixtureModel model_;
  SimulationConfig cfg_;
  std::vector<Jumps> jumps_q_, jumps_g_;
};

inline bool start_absorbed(const SimulatedPath& p) { return p.record.visits.empty(); }

struct EmpiricalPoint {
  double value;
  double standard_error;
};

// Fraction of paths with tau > t (binomial SE). Censored paths count as alive up to
// their censoring time and are dropped beyond it.
std::vector<EmpiricalPoint> empirical_survival(const std::vector<PathOutcome>& outcomes,
                                               const Vector& grid);
// Fraction of paths absorbed by cause j (0-based) by time t.
std::vector<EmpiricalPoint> empirical_cause_cdf(const std::vector<PathOutcome>& outcomes,
                                                std::size_t cause, const Vector& grid);
// Curve form of the two estimators above, columns (t, value, se).
CurveGrid empirical_survival_curve(const std::vector<PathOutcome>& outcomes, const Vector& grid);
CurveGrid empirical_cause_curve(const std::vector<PathOutcome>& outcomes, std::size_t cause,
                                const Vector& grid);

// Fraction of G-regime paths among those in state i at the snapshot time.
// Throws InsufficientSampleError below `min_count` such paths.
EmpiricalPoint empirical_posterior(const std::vector<Snapshot>& snaps, std::size_t i,
                                   std::size_t min_count = 500);

struct MeanEstimate {
  double mean;
  double standard_error;
  std::size_t count;
};
// Mean absorption time over absorbed paths; throws if any path was censored.
MeanEstimate empirical_mean_absorption(const std::vector<PathOutcome>& outcomes);

}  // namespace gph
