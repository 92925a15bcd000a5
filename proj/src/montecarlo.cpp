#include "gph/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gph/error.hpp"

namespace gph {

// ---- RNG -------------------------------------------------------------------

static std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL)));
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double SplitMix64::uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double SplitMix64::exponential(double rate) { return -std::log(uniform()) / rate; }

// ---- simulator -------------------------------------------------------------

PathSimulator::PathSimulator(const MixtureModel& model, SimulationConfig cfg)
    : model_(model), cfg_(cfg) {
  if (cfg_.paths == 0) throw DomainError("simulation: need at least one path");
  if (!(cfg_.horizon > 0.0)) throw DomainError("simulation: horizon must be positive");
  const std::size_t m = model.m(), n = model.states();
  for (int regime = 0; regime < 2; ++regime) {
    auto& table = regime == 0 ? jumps_q_ : jumps_g_;
    for (std::size_t k = 0; k < m; ++k) {
      const double speed = regime == 0 ? 1.0 : model.psi()[k];
      Jumps j{speed * -model.T()(k, k), std::vector<double>(n, 0.0)};
      double acc = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        if (d != k) acc += d < m ? model.T()(k, d) : model.D()(k, d - m);
        j.cumulative[d] = acc;
      }
      for (double& c : j.cumulative) c = acc > 0.0 ? c / acc : 0.0;
      if (acc <= 0.0) j.rate = 0.0;
      table.push_back(std::move(j));
    }
  }
}

template <class Visitor>
void PathSimulator::run(std::size_t index, std::optional<std::size_t> start,
                        Visitor&& visit) const {
  SplitMix64 rng = SplitMix64::substream(cfg_.seed, index);
  const std::size_t m = model_.m();
  std::size_t k;
  if (start) {
    if (*start >= m) throw DomainError("simulation: start state must be transient");
    k = *start;
  } else {
    const double u = rng.uniform();
    double acc = 0.0;
    k = m;
    for (std::size_t i = 0; i < m; ++i) {
      acc += model_.pi()[i];
      if (u < acc) {
        k = i;
        break;
      }
    }
    if (k == m) {
      visit.begin(Regime::Q, -1);
      visit.finish(-1, 0.0);
      return;
    }
  }
  const Regime regime = rng.uniform() < model_.s0()[k] ? Regime::G : Regime::Q;
  const auto& table = regime == Regime::G ? jumps_g_ : jumps_q_;
  visit.begin(regime, static_cast<std::int32_t>(k));
  double t = 0.0;
  for (;;) {
    const auto& jp = table[k];
    const double dwell = jp.rate > 0.0 ? rng.exponential(jp.rate) : cfg_.horizon;
    if (t + dwell >= cfg_.horizon) {
      visit.visit(k, t, cfg_.horizon - t);
      visit.finish(-1, cfg_.horizon);
      return;
    }
    visit.visit(k, t, dwell);
    t += dwell;
    const double u = rng.uniform();
    auto it = std::upper_bound(jp.cumulative.begin(), jp.cumulative.end(), u);
    std::size_t dest = static_cast<std::size_t>(it - jp.cumulative.begin());
    if (dest >= jp.cumulative.size()) dest = jp.cumulative.size() - 1;
    if (dest >= m) {
      visit.finish(static_cast<std::int32_t>(dest - m), t);
      return;
    }
    k = dest;
  }
}

template <class Out, class Fn>
std::vector<Out> PathSimulator::fan_out(Fn&& fn) const {
  std::vector<Out> out(cfg_.paths);
  unsigned workers = cfg_.threads ? cfg_.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg_.paths));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cfg_.paths; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (cfg_.paths + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t lo = w * block, hi = std::min(cfg_.paths, lo + block);
        for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

SimulatedPath PathSimulator::sample_path(std::size_t index, std::optional<std::size_t> start) const {
  struct Recorder {
    SimulatedPath path{Regime::Q, {}, std::nullopt};
    std::size_t m;
    void begin(Regime r, std::int32_t) { path.regime = r; }
    void visit(std::size_t k, double, double dur) { path.record.visits.push_back({k, dur}); }
    void finish(std::int32_t cause, double t) {
      if (cause >= 0 && !path.record.visits.empty()) {
        path.absorbed = Absorption{static_cast<std::size_t>(cause), t};
        path.record.absorbed = m + static_cast<std::size_t>(cause);
      }
    }
  } rec{{Regime::Q, {}, std::nullopt}, model_.m()};
  run(index, start, rec);
  if (!cfg_.record_regime) rec.path.regime = Regime::Q;
  return rec.path;
}

std::vector<SimulatedPath> PathSimulator::paths(std::optional<std::size_t> start) const {
  return fan_out<SimulatedPath>([&](std::size_t i) { return sample_path(i, start); });
}

std::vector<PathOutcome> PathSimulator::outcomes(std::optional<std::size_t> start) const {
  return fan_out<PathOutcome>([&](std::size_t i) {
    struct Summary {
      PathOutcome o{Regime::Q, -1, -1, 0.0};
      void begin(Regime r, std::int32_t s) {
        o.regime = r;
        o.start = s;
      }
      void visit(std::size_t, double, double) {}
      void finish(std::int32_t cause, double t) {
        o.cause = cause;
        o.time = t;
      }
    } sum;
    run(i, start, sum);
    return sum.o;
  });
}

std::vector<Snapshot> PathSimulator::snapshots(double t, std::optional<std::size_t> start) const {
  if (!(t >= 0.0) || t > cfg_.horizon)
    throw DomainError("snapshots: time must lie within [0, horizon]");
  const std::size_t m = model_.m();
  return fan_out<Snapshot>([&](std::size_t i) {
    struct Probe {
      double at;
      std::size_t m;
      Snapshot s{Regime::Q, -1};
      bool found = false;
      void begin(Regime r, std::int32_t) { s.regime = r; }
      void visit(std::size_t k, double t0, double dur) {
        if (!found && at >= t0 && at < t0 + dur) {
          s.state = static_cast<std::int32_t>(k);
          found = true;
        }
      }
      void finish(std::int32_t cause, double tt) {
        if (found) return;
        if (cause >= 0 && tt <= at) s.state = static_cast<std::int32_t>(m + cause);
        found = true;
      }
    } probe{t, m};
    run(i, start, probe);
    return probe.s;
  });
}

// ---- estimators ------------------------------------------------------------

static EmpiricalPoint binomial(std::size_t hits, std::size_t n) {
  if (n == 0) throw InsufficientSampleError("empirical estimate: no paths at risk");
  const double v = static_cast<double>(hits) / static_cast<double>(n);
  return {v, std::sqrt(v * (1.0 - v) / static_cast<double>(n))};
}

std::vector<EmpiricalPoint> empirical_survival(const std::vector<PathOutcome>& outcomes,
                                               const Vector& grid) {
  if (outcomes.empty()) throw InsufficientSampleError("empirical_survival: no paths");
  std::vector<EmpiricalPoint> out;
  for (double t : grid) {
    std::size_t n = 0, alive = 0;
    for (const auto& o : outcomes) {
      if (o.start < 0) {
        ++n;
        continue;
      }
      if (o.cause < 0) {
        if (o.time < t) continue;  // censored before t
        ++n;
        ++alive;
        continue;
      }
      ++n;
      if (o.time > t) ++alive;
    }
    out.push_back(binomial(alive, n));
  }
  return out;
}

std::vector<EmpiricalPoint> empirical_cause_cdf(const std::vector<PathOutcome>& outcomes,
                                                std::size_t cause, const Vector& grid) {
  if (outcomes.empty()) throw InsufficientSampleError("empirical_cause_cdf: no paths");
  std::vector<EmpiricalPoint> out;
  for (double t : grid) {
    std::size_t n = 0, hits = 0;
    for (const auto& o : outcomes) {
      if (o.start >= 0 && o.cause < 0 && o.time < t) continue;
      ++n;
      if (o.start >= 0 && o.cause == static_cast<std::int32_t>(cause) && o.time <= t) ++hits;
    }
    out.push_back(binomial(hits, n));
  }
  return out;
}

static CurveGrid to_curve(const Vector& grid, const std::vector<EmpiricalPoint>& pts) {
  CurveGrid c;
  c.columns = {"t", "value", "se"};
  for (std::size_t k = 0; k < grid.size(); ++k)
    c.add_row({grid[k], pts[k].value, pts[k].standard_error});
  return c;
}

CurveGrid empirical_survival_curve(const std::vector<PathOutcome>& outcomes, const Vector& grid) {
  return to_curve(grid, empirical_survival(outcomes, grid));
}

CurveGrid empirical_cause_curve(const std::vector<PathOutcome>& outcomes, std::size_t cause,
                                const Vector& grid) {
  return to_curve(grid, empirical_cause_cdf(outcomes, cause, grid));
}

EmpiricalPoint empirical_posterior(const std::vector<Snapshot>& snaps, std::size_t i,
                                   std::size_t min_count) {
  std::size_t n = 0, g = 0;
  for (const auto& s : snaps) {
    if (s.state != static_cast<std::int32_t>(i)) continue;
    ++n;
    if (s.regime == Regime::G) ++g;
  }
  if (n < min_count)
    throw InsufficientSampleError("empirical_posterior: only " + std::to_string(n) +
                                  " paths occupy the state");
  return binomial(g, n);
}

MeanEstimate empirical_mean_absorption(const std::vector<PathOutcome>& outcomes) {
  double s = 0.0, s2 = 0.0;
  std::size_t n = 0;
  for (const auto& o : outcomes) {
    if (o.start < 0) continue;
    if (o.cause < 0) throw DomainError("empirical_mean_absorption: censored path; raise horizon");
    s += o.time;
    s2 += o.time * o.time;
    ++n;
  }
  if (n < 2) throw InsufficientSampleError("empirical_mean_absorption: too few paths");
  const double mean = s / n;
  const double var = (s2 - n * mean * mean) / (n - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / n), n};
}

}  // namespace gph
