#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gph/cli.hpp"
#include "gph/competing.hpp"
#include "gph/error.hpp"
#include "gph/hazard.hpp"
#include "gph/marriage.hpp"
#include "gph/montecarlo.hpp"
#include "gph/sojourn.hpp"

namespace gph::cli {

std::vector<double> parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ParseError("--grid", "expected A:B:STEP");
  const double a = parse_double(text.substr(0, c1), "--grid");
  const double b = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "--grid");
  const double step = parse_double(text.substr(c2 + 1), "--grid");
  if (!(step > 0.0)) throw ParseError("--grid", "STEP must be positive");
  if (!(b >= a)) throw ParseError("--grid", "B must not be below A");
  const double n = std::floor((b - a) / step + 1e-9);
  if (n > 1e7) throw ParseError("--grid", "too many points");
  std::vector<double> g;
  for (long k = 0; k <= static_cast<long>(n); ++k) g.push_back(a + static_cast<double>(k) * step);
  return g;
}

ModelFile resolve_model(const std::string& text) {
  const std::string prefix = "builtin:";
  if (text.rfind(prefix, 0) != 0) return load_model(text);
  const std::string name = text.substr(prefix.size());
  if (name == "marriage") return marriage_model(MarriageVariant::single, true);
  if (name == "marriage-homogeneous") return marriage_model(MarriageVariant::single, false);
  if (name == "marriage-competing") return marriage_model(MarriageVariant::competing, true);
  if (name == "marriage-competing-homogeneous")
    return marriage_model(MarriageVariant::competing, false);
  throw ParseError("--model", "unknown builtin model '" + name + "'");
}

namespace {

std::string age_label(double t) { return "value_t" + format_double(t); }

InformationState make_info(const MixtureModel& model, const EvalRequest& req, std::size_t state,
                           double age) {
  if (req.info == "initial") return prior_information(model, state, age);
  if (req.info == "current") return posterior_current(model, state, age);
  if (req.info == "endpoints")
    return posterior_endpoints(model, req.start.value_or(state), state, age);
  throw ParseError("--info", "unknown regime '" + req.info + "'");
}

// One information state per anchor age, or the single path-derived one.
std::vector<InformationState> anchors(const MixtureModel& model, const EvalRequest& req) {
  std::vector<InformationState> out;
  if (req.info == "path") {
    std::ifstream in(req.info_path);
    if (!in) throw ParseError(req.info_path, "cannot open path file");
    auto paths = read_paths(in, model.m(), model.p());
    if (paths.empty()) throw ParseError(req.info_path, "no path found");
    out.push_back(posterior_full(model, paths.front()));
    return out;
  }
  if (!req.state) throw ParseError("--state", "required for conditional quantities");
  const auto ages = req.ages.empty() ? std::vector<double>{0.0} : req.ages;
  for (double t : ages) out.push_back(make_info(model, req, *req.state, t));
  return out;
}

template <class Fn>
CurveGrid anchored(const MixtureModel& model, const EvalRequest& req, Fn&& fn) {
  const auto infos = anchors(model, req);
  CurveGrid g;
  g.columns = {"s", "duration"};
  for (const auto& info : infos) g.columns.push_back(age_label(info.age));
  for (double d : req.grid) {
    std::vector<double> row{d, d};
    for (const auto& info : infos) row.push_back(fn(info, info.age + d));
    g.add_row(std::move(row));
  }
  return g;
}

template <class Fn>
CurveGrid over_time(const EvalRequest& req, Fn&& fn) {
  CurveGrid g;
  g.columns = {"t", "value"};
  for (double t : req.grid) g.add_row({t, fn(t)});
  return g;
}

}  // namespace

CurveGrid evaluate(const ModelFile& file, const EvalRequest& req) {
  const MixtureModel& model = file.model;
  const CompetingModel cm(model);
  const bool single = model.p() == 1;
  const bool conditional = req.state.has_value() || req.info == "path";
  auto need_single = [&](const char* q) {
    if (!single)
      throw ParseError("--quantity", std::string(q) +
                                         " needs a single absorbing state; use sub-dist or "
                                         "cause-intensity");
  };
  auto need_cause = [&]() -> CauseLabel {
    if (!req.cause) throw ParseError("--cause", "required for " + req.quantity);
    if (*req.cause < 1 || *req.cause > model.p())
      throw ParseError("--cause", "must lie in 1.." + std::to_string(model.p()));
    return CauseLabel(*req.cause);
  };
  const auto& q = req.quantity;
  CurveGrid g;

  if (q == "survival" || q == "density") {
    const bool surv = q == "survival";
    if (conditional) {
      g = anchored(model, req, [&](const InformationState& info, double s) {
        const auto o = overall_survival(cm, info, s);
        return surv ? o.survival : o.density;
      });
    } else {
      need_single(q.c_str());
      const GphDistribution dist(model);
      g = over_time(req, [&](double t) { return surv ? survival(dist, t) : density(dist, t); });
    }
  } else if (q == "forward-intensity") {
    if (single) {
      const GphDistribution dist(model);
      g = anchored(model, req, [&](const InformationState& info, double s) {
        return forward_intensity(dist, info, s);
      });
    } else {
      g = anchored(model, req, [&](const InformationState& info, double s) {
        double total = 0.0;
        for (std::size_t j = 1; j <= model.p(); ++j)
          total += cause_forward_intensity(cm, info, CauseLabel(j), s);
        return total;
      });
    }
  } else if (q == "instant-intensity") {
    if (!req.state) throw ParseError("--state", "required for instant-intensity");
    g = over_time(req, [&](double t) {
      const auto info = make_info(model, req, *req.state, t);
      double total = 0.0;
      for (std::size_t j = 1; j <= model.p(); ++j)
        total += cause_instantaneous_intensity(cm, info, CauseLabel(j));
      return total;
    });
  } else if (q == "baseline") {
    need_single("baseline");
    const GphDistribution dist(model);
    g = over_time(req, [&](double t) { return baseline_intensity(dist, t); });
  } else if (q == "residual") {
    need_single("residual");
    if (!req.state) throw ParseError("--state", "required for residual");
    const GphDistribution dist(model);
    g = over_time(req, [&](double t) {
      return residual_lifetime(dist, make_info(model, req, *req.state, t));
    });
  } else if (q == "occupation") {
    need_single("occupation");
    if (!req.target) throw ParseError("--target", "required for occupation");
    if (*req.target >= model.states()) throw ParseError("--target", "state out of range");
    const GphDistribution dist(model);
    g = anchored(model, req, [&](const InformationState& info, double s) {
      return expected_occupation(dist, OccupationQuery{info.age, s, *req.target, info});
    });
  } else if (q == "sub-dist") {
    const CauseLabel j = need_cause();
    g = anchored(model, req, [&](const InformationState& info, double s) {
      return sub_distribution(cm, info, j, s).F;
    });
  } else if (q == "cause-intensity") {
    const CauseLabel j = need_cause();
    g = anchored(model, req, [&](const InformationState& info, double s) {
      return cause_forward_intensity(cm, info, j, s);
    });
  } else {
    throw ParseError("--quantity", "unknown quantity '" + q + "'");
  }
  g.metadata.emplace_back("quantity", q);
  g.metadata.emplace_back("model_hash", model_hash(file));
  if (req.state) g.metadata.emplace_back("state", file.labels.at(*req.state));
  g.metadata.emplace_back("info", req.info);
  if (req.cause) g.metadata.emplace_back("cause", file.labels.at(model.m() + *req.cause - 1));
  return g;
}

std::vector<std::pair<std::string, CurveGrid>> marriage_bundle(bool competing) {
  std::vector<std::pair<std::string, CurveGrid>> out;
  const std::vector<double> ages{0.01, 4.0, 10.0};
  const auto durations = parse_grid("0:20:0.1");
  const auto times = parse_grid("0:20:0.1");
  for (bool het : {true, false}) {
    const std::string tag = het ? "heterogeneous" : "homogeneous";
    const ModelFile file =
        marriage_model(competing ? MarriageVariant::competing : MarriageVariant::single, het);
    EvalRequest req;
    req.state = kMarried;
    req.ages = ages;
    req.grid = durations;
    auto put = [&](const std::string& name, EvalRequest r) {
      out.emplace_back(name + "_" + tag + ".csv", evaluate(file, r));
    };
    if (!competing) {
      for (const char* q : {"forward-intensity", "survival"}) {
        EvalRequest r = req;
        r.quantity = q;
        put(q, r);
      }
      EvalRequest r = req;
      r.grid = times;
      r.quantity = "instant-intensity";
      put("instant-intensity", r);
      r.quantity = "baseline";
      put("baseline", r);
      r.quantity = "residual";
      put("residual", r);
    } else {
      for (std::size_t j : {kCauseWidowed, kCauseDivorced}) {
        EvalRequest r = req;
        r.quantity = "sub-dist";
        r.cause = j;
        put(std::string("sub-dist_") + (j == kCauseDivorced ? "divorced" : "widowed"), r);
        r.quantity = "cause-intensity";
        put(std::string("cause-intensity_") + (j == kCauseDivorced ? "divorced" : "widowed"), r);
      }
    }
  }
  return out;
}

// ---- commands --------------------------------------------------------------

namespace {

std::string join_values(const std::vector<Complex>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) os << ", ";
    os << format_double(v[k].real());
    if (v[k].imag() != 0.0) os << (v[k].imag() > 0 ? "+" : "-") << format_double(std::abs(v[k].imag())) << "i";
  }
  return os.str();
}

int cmd_validate(const std::string& model_spec, std::ostream& out) {
  const ModelFile file = resolve_model(model_spec);
  const auto& m = file.model;
  out << "model: " << model_spec << "\n";
  out << "m=" << m.m() << " p=" << m.p() << "\n";
  out << "labels:";
  for (const auto& l : file.labels) out << ' ' << l;
  out << "\n";
  out << "eigenvalues(T): " << join_values(m.eig_T().values) << "\n";
  out << "eigenvalues(Psi T): " << join_values(m.eig_psiT().values) << "\n";
  out << "dominant(T): " << format_double(m.eig_T().values.front().real()) << "\n";
  out << "dominant(Psi T): " << format_double(m.eig_psiT().values.front().real()) << "\n";
  out << "absorption: certain under Q";
  out << (m.psi_nonsingular() ? " and G" : "; G-regime stayers never absorb") << "\n";
  if (!m.psi_nonsingular()) {
    out << "warning: psi has zero entries (states";
    for (std::size_t i = 0; i < m.m(); ++i)
      if (!(m.psi()[i] > 0.0)) out << ' ' << file.labels[i];
    out << "); moment, laplace_transform, residual, occupation, sub-dist and long-run limits "
           "will reject this model\n";
  }
  out << "valid\n";
  return 0;
}

void emit(const CurveGrid& g, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_csv(out, g);
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError(path, "cannot open for writing");
  write_csv(f, g);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized phase-type distributions of Markov mixture processes", "gphtool"};
  app.require_subcommand(1);

  std::string model_spec, out_path, quantity, grid_spec, info_mode = "current", in_path,
                                                          out_dir = ".", variant = "all";
  std::vector<std::string> info_args;
  std::vector<double> ages;
  std::size_t state = 0, cause = 0, target = 0, start = 0, paths = 0;
  std::uint64_t seed = 0;
  double horizon = 100.0;

  auto* validate = app.add_subcommand("validate", "Check a model file and summarize its spectrum");
  validate->add_option("--model", model_spec, "Model file or builtin:NAME")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a quantity on a grid and write CSV");
  eval->add_option("--model", model_spec)->required();
  eval->add_option("--quantity", quantity)
      ->required()
      ->check(CLI::IsMember({"survival", "density", "forward-intensity", "instant-intensity",
                             "baseline", "residual", "occupation", "sub-dist",
                             "cause-intensity"}));
  auto* state_opt = eval->add_option("--state", state, "Current state (1-based)");
  eval->add_option("--age", ages, "Information age(s) t")->delimiter(',');
  eval->add_option("--grid", grid_spec, "A:B:STEP")->required();
  auto* cause_opt = eval->add_option("--cause", cause, "Absorbing cause (1-based)");
  auto* target_opt = eval->add_option("--target", target, "Occupation target state (1-based)");
  eval->add_option("--info", info_args, "initial | current | endpoints | path FILE")
      ->expected(1, 2);
  auto* start_opt = eval->add_option("--start", start, "Initial state for --info endpoints");
  eval->add_option("--out", out_path);

  auto* sim = app.add_subcommand("simulate", "Simulate paths and write them one per line");
  sim->add_option("--model", model_spec)->required();
  sim->add_option("--paths", paths)->required();
  sim->add_option("--seed", seed);
  sim->add_option("--horizon", horizon);
  auto* sim_start = sim->add_option("--start", start, "Fixed initial state (1-based)");
  sim->add_option("--out", out_path);

  auto* est = app.add_subcommand("estimate", "Estimate rates from a path file");
  est->add_option("--model", model_spec, "Model giving the state space and reference rates")
      ->required();
  est->add_option("--in", in_path)->required();
  est->add_option("--out", out_path);

  auto* ex = app.add_subcommand("example-marriage", "Write the marriage/divorce curve bundle");
  ex->add_option("--variant", variant)->check(CLI::IsMember({"single", "competing", "all"}));
  ex->add_option("--out-dir", out_dir);

  std::vector<const char*> argv{"gphtool"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  auto one_based = [](std::size_t v, const char* flag) {
    if (v < 1) throw ParseError(flag, "states are numbered from 1");
    return v - 1;
  };

  try {
    if (validate->parsed()) return cmd_validate(model_spec, out);

    if (eval->parsed()) {
      const ModelFile file = resolve_model(model_spec);
      EvalRequest req;
      req.quantity = quantity;
      req.grid = parse_grid(grid_spec);
      req.ages = ages;
      if (*state_opt) req.state = one_based(state, "--state");
      if (req.state && *req.state >= file.model.states())
        throw ParseError("--state", "state out of range");
      if (*cause_opt) req.cause = cause;
      if (*target_opt) req.target = one_based(target, "--target");
      if (*start_opt) req.start = one_based(start, "--start");
      if (!info_args.empty()) {
        req.info = info_args[0];
        if (req.info == "path") {
          if (info_args.size() != 2) throw ParseError("--info", "path needs a FILE argument");
          req.info_path = info_args[1];
        } else if (info_args.size() != 1) {
          throw ParseError("--info", "only 'path' takes an argument");
        }
        if (req.info != "initial" && req.info != "current" && req.info != "endpoints" &&
            req.info != "path")
          throw ParseError("--info", "unknown regime '" + req.info + "'");
      }
      if (req.info == "path" && !ages.empty())
        throw ParseError("--age", "the age comes from the path under --info path");
      CurveGrid g = evaluate(file, req);
      std::string cmdline = "gphtool";
      for (const auto& a : args) cmdline += " " + a;
      g.metadata.emplace_back("command", cmdline);
      emit(g, out_path, out);
      return 0;
    }

    if (sim->parsed()) {
      const ModelFile file = resolve_model(model_spec);
      if (paths == 0) throw ParseError("--paths", "must be at least 1");
      SimulationConfig cfg;
      cfg.paths = paths;
      cfg.seed = seed;
      cfg.horizon = horizon;
      std::optional<std::size_t> st;
      if (*sim_start) st = one_based(start, "--start");
      const PathSimulator simulator(file.model, cfg);
      std::ostringstream body;
      body << "# model_hash: " << model_hash(file) << "\n# seed: " << seed
           << "\n# horizon: " << format_double(horizon) << "\n";
      std::size_t absorbed = 0, written = 0;
      for (std::size_t i = 0; i < paths; ++i) {
        const SimulatedPath p = simulator.sample_path(i, st);
        if (start_absorbed(p)) continue;
        absorbed += p.absorbed ? 1 : 0;
        ++written;
        body << format_path(p.record) << '\n';
      }
      if (out_path.empty()) {
        out << body.str();
      } else {
        std::ofstream f(out_path);
        if (!f) throw ParseError(out_path, "cannot open for writing");
        f << body.str();
      }
      err << "simulated " << paths << " paths, wrote " << written << ", absorbed " << absorbed
          << " before horizon " << format_double(horizon) << "\n";
      return 0;
    }

    if (est->parsed()) {
      const ModelFile file = resolve_model(model_spec);
      const auto& model = file.model;
      std::ifstream in(in_path);
      if (!in) throw ParseError(in_path, "cannot open path file");
      const auto recs = read_paths(in, model.m(), model.p());
      if (recs.empty()) throw InsufficientSampleError("estimate: the path file holds no paths");
      const RateEstimate est_r = estimate_generator(recs, model.m(), model.p());
      std::ostringstream os;
      os << "# paths: " << recs.size() << "\n";
      os << "from,to,count,exposure,rate,se,reference\n";
      for (std::size_t k = 0; k < model.m(); ++k)
        for (std::size_t j = 0; j < model.states(); ++j) {
          const double ref = j < model.m() ? model.T()(k, j) : model.D()(k, j - model.m());
          const auto r = est_r.rate(k, j);
          const auto se = est_r.standard_error(k, j);
          os << file.labels[k] << ',' << file.labels[j] << ','
             << format_double(est_r.statistics().counts(k, j)) << ','
             << format_double(est_r.statistics().occupancy[k]) << ','
             << (r ? format_double(*r) : "missing") << ',' << (se ? format_double(*se) : "missing")
             << ',' << format_double(ref) << '\n';
        }
      if (out_path.empty()) {
        out << os.str();
      } else {
        std::ofstream f(out_path);
        if (!f) throw ParseError(out_path, "cannot open for writing");
        f << os.str();
      }
      return 0;
    }

    if (ex->parsed()) {
      std::filesystem::create_directories(out_dir);
      std::vector<std::pair<std::string, CurveGrid>> all;
      if (variant != "competing") {
        auto b = marriage_bundle(false);
        all.insert(all.end(), b.begin(), b.end());
      }
      if (variant != "single") {
        auto b = marriage_bundle(true);
        all.insert(all.end(), b.begin(), b.end());
      }
      for (const auto& [name, grid] : all) {
        const auto path = (std::filesystem::path(out_dir) / name).string();
        emit(grid, path, out);
        out << path << "\n";
      }
      if (variant != "competing") {
        const ModelFile file = marriage_model(MarriageVariant::single, true);
        const GphDistribution dist(file.model);
        const auto info = posterior_current(file.model, kMarried, 10.0);
        out << "long-run forward intensity (M, t=10): "
            << format_double(longrun_forward_intensity(dist, info)) << "\n";
      }
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace gph::cli
