#include "gkdv/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>

#include "gkdv/cli/config.hpp"
#include "gkdv/estimates/verify.hpp"
#include "gkdv/solver/calibration.hpp"
#include "gkdv/solver/conservation.hpp"
#include "gkdv/solver/data.hpp"
#include "gkdv/solver/diagnostics.hpp"
#include "gkdv/solver/reference.hpp"
#include "gkdv/solver/trace_io.hpp"
#include "gkdv/spectral/norms.hpp"
#include "gkdv/spectral/random_field.hpp"

#ifndef GKDV_VERSION
#define GKDV_VERSION "0.0.0"
#endif

namespace gkdv::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(finite_or_string(x));
  return out;
}

class Checks {
 public:
  void at_most(const std::string& name, double value, double limit) {
    add(name, value, limit, "<=", value <= limit);
  }
  void at_least(const std::string& name, double value, double limit) {
    add(name, value, limit, ">=", value >= limit);
  }
  void holds(const std::string& name, bool ok) {
    list_.push_back(json{{"name", name}, {"passed", ok}});
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  const json& list() const { return list_; }

 private:
  void add(const std::string& name, double value, double limit, const char* op, bool ok) {
    ok = ok && std::isfinite(value);
    list_.push_back(json{{"name", name}, {"value", finite_or_string(value)}, {"limit", limit}, {"relation", op},
                         {"passed", ok}});
    ok_ = ok_ && ok;
  }

  json list_ = json::array();
  bool ok_ = true;
};

Outcome finish(const std::string& command, const json& config, const Checks& checks, json result, std::string csv) {
  Outcome o;
  o.exit_code = checks.ok() ? kExitOk : kExitThreshold;
  o.report = json{{"version", version()},
                  {"command", command},
                  {"config", config},
                  {"status", checks.ok() ? "ok" : "threshold_failed"},
                  {"checks", checks.list()},
                  {"result", std::move(result)}};
  o.csv = std::move(csv);
  return o;
}

std::string csv_row(std::initializer_list<double> values) {
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (double v : values) {
    out << (first ? "" : ",") << v;
    first = false;
  }
  out << '\n';
  return out.str();
}

std::string csv_row(const std::vector<double>& values) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  out << '\n';
  return out.str();
}

fs::path output_path(const json& c, const std::string& name) {
  const fs::path p(name);
  return p.is_absolute() ? p : fs::path(c.at("out").get<std::string>()) / p;
}

NonlinearityG make_g(const json& c) { return NonlinearityG::power(c.at("alpha"), c.at("mu")); }

SolverConfig make_solver_config(const json& c) {
  SolverConfig s;
  s.t_start = c.value("t-start", 0.0);
  s.t_end = c.at("t-end");
  s.t0 = c.value("t0", s.t_start);
  s.time_samples = c.at("time-samples");
  s.samples_per_unit = c.at("samples-per-unit");
  s.rho = c.at("rho");
  s.tolerance = c.at("tolerance");
  s.max_iterations = c.at("max-iterations");
  s.delta = c.at("delta");
  s.enforce_gate = c.at("enforce-gate");
  s.exploratory = c.at("exploratory");
  s.reference_step = c.at("reference-step");
  s.blowup_factor = c.at("blowup-factor");
  return s;
}

SpectralField pointwise(const SpectralField& u, const std::function<double(double, double)>& op) {
  auto samples = real_samples(u);
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = op(u.grid().x(j), samples[j]);
  return forward_transform(std::span<const double>(samples), u.grid());
}

double peak(const SpectralField& u) {
  double m = 0.0;
  for (double v : real_samples(u)) m = std::max(m, std::abs(v));
  return m;
}

/// u(x) -> u(-x).
SpectralField reflect(const SpectralField& u) {
  std::vector<Complex> c(u.coeffs().begin(), u.coeffs().end());
  const std::size_t zero = u.grid().zero_index();
  for (std::size_t k = 1; k < zero; ++k) std::swap(c[zero + k], c[zero - k]);
  return SpectralField(u.grid(), std::move(c), u.is_real());
}

double threshold_amplitude(const SpectralField& shape, const NonlinearityG& g, std::size_t rho) {
  double lo = 1.0;
  for (int i = 0; i < 200 && energy(shape * lo, g, rho) <= 0.0; ++i) lo *= 0.5;
  double hi = 2.0 * lo;
  for (int i = 0; i < 200 && energy(shape * hi, g, rho) > 0.0; ++i) hi *= 2.0;
  if (!(energy(shape * hi, g, rho) <= 0.0)) throw std::invalid_argument("no amplitude with non-positive energy found");
  return energy_threshold_amplitude(shape, g, hi / 2.0, hi);
}

struct Datum {
  SpectralField field;
  json info;
};

Datum make_datum(const std::string& command, const json& c, const Grid1D& grid, const NonlinearityG& g) {
  const std::string kind = c.at("datum");
  const double center = c.at("center");
  std::optional<SpectralField> shape;
  if (kind == "gaussian") {
    shape = gaussian_datum(grid, 1.0, center, c.at("width"));
  } else if (kind == "soliton") {
    shape = soliton_datum(grid, g.alpha, c.at("speed"), center);
  } else if (kind == "random") {
    std::size_t band = c.at("band");
    if (band == 0) band = grid.size() / 8;
    const auto raw = random_band_limited(grid, c.at("decay"), band, derive_seed(c.at("seed"), 0));
    const double w = grid.half_length() / 8.0;
    const auto windowed = pointwise(raw, [&](double x, double v) {
      const double y = (x - center) / w;
      return v * std::exp(-0.5 * y * y);
    });
    shape = windowed * (1.0 / peak(windowed));
  } else {
    const fs::path file = c.at("datum-file").get<std::string>();
    TimeTrace trace = [&] {
      try {
        return read_trace(file);
      } catch (const std::exception& e) {
        throw ConfigError(command + ".datum-file", e.what());
      }
    }();
    const SpectralField& last = trace[trace.size() - 1];
    if (last.grid().half_length() != grid.half_length()) {
      throw ConfigError(command + ".datum-file", "trace half-length does not match half-length");
    }
    if (!last.is_real()) throw ConfigError(command + ".datum-file", "trace holds a complex field");
    shape = last.size() == grid.size() ? last : resample(last, grid.size());
  }

  json info{{"kind", kind}};
  double scale = c.at("amp");
  const double threshold_scale = c.at("threshold-scale");
  if (threshold_scale > 0.0) {
    const double a = threshold_amplitude(*shape, g, c.at("rho"));
    scale = threshold_scale * a;
    info["threshold_amplitude"] = a;
  }
  SpectralField u0 = *shape * scale;
  if (c.value("direction", 1L) == -1) u0 = reflect(u0);
  const std::size_t rho = c.at("rho");
  info["scale"] = scale;
  info["mass"] = mass(u0);
  info["energy"] = energy(u0, g, rho);
  info["critical_norm"] = lhat_norm(u0, critical_exponent(g.alpha));
  info["boundary_mass"] = boundary_mass_fraction(u0);
  return {std::move(u0), std::move(info)};
}

json blowup_json(const NumericalBlowup& e, double r) {
  json j{{"message", e.what()}, {"last_healthy_time", e.last_time}};
  j["last_healthy_critical_norm"] = finite_or_string(lhat_norm(e.last_state, r));
  j["last_healthy_mass"] = finite_or_string(mass(e.last_state));
  return j;
}

Outcome blowup_outcome(const std::string& command, const json& config, const NumericalBlowup& e, double r,
                       json partial) {
  Outcome o;
  o.exit_code = kExitBlowup;
  partial["blowup"] = blowup_json(e, r);
  o.report = json{{"version", version()}, {"command", command}, {"config", config}, {"status", "blowup"},
                  {"checks", json::array()}, {"result", std::move(partial)}};
  return o;
}

/// Streams samples to the trace writer (when requested) and to registered observers.
class Stream {
 public:
  Stream(const json& c, const Grid1D& grid) {
    const std::string trace = c.value("trace", std::string());
    if (!trace.empty()) {
      path_ = output_path(c, trace);
      if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
      writer_ = std::make_unique<TraceWriter>(path_, grid);
    }
  }

  void observe(TraceSink sink) { sinks_.push_back(std::move(sink)); }

  void operator()(double t, const SpectralField& u) {
    if (writer_) writer_->add(t, u);
    for (auto& s : sinks_) s(t, u);
  }

  TraceSink sink() {
    return [this](double t, const SpectralField& u) { (*this)(t, u); };
  }

  void finish(json& result) {
    if (!writer_) return;
    writer_->finish();
    result["trace_path"] = path_.string();
  }

 private:
  fs::path path_;
  std::unique_ptr<TraceWriter> writer_;
  std::vector<TraceSink> sinks_;
};

std::vector<double> dyadic_checkpoints(double t_min, double t_end) {
  std::vector<double> out;
  for (double t = t_min; t <= t_end * (1.0 + 1e-12); t *= 2.0) out.push_back(t);
  if (out.empty() || out.back() < t_end * (1.0 - 1e-12)) out.push_back(t_end);
  return out;
}

std::vector<double> chunk_checkpoints(double start, double end, double chunk) {
  std::vector<double> out;
  for (std::size_t k = 1;; ++k) {
    const double t = start + static_cast<double>(k) * chunk;
    if (t >= end - 1e-12 * std::max(1.0, std::abs(end))) break;
    out.push_back(t);
  }
  out.push_back(end);
  return out;
}

json record_json(const MonitorRecord& r) {
  return json{{"time", r.time},
              {"snorm", r.snorm},
              {"xnorm", r.xnorm},
              {"critical_norm", r.critical_norm},
              {"sup_critical_norm", r.sup_critical_norm},
              {"mass_drift", r.mass_drift},
              {"energy_drift", r.energy_drift},
              {"boundary_mass", r.boundary_mass},
              {"max_boundary_mass", r.max_boundary_mass},
              {"lhat", numbers(r.lhat)},
              {"lhat_max", numbers(r.lhat_max)},
              {"sobolev", numbers(r.sobolev)},
              {"sobolev_max", numbers(r.sobolev_max)}};
}

json records_json(const std::vector<MonitorRecord>& records) {
  json out = json::array();
  for (const auto& r : records) out.push_back(record_json(r));
  return out;
}

json glued_json(const GluedResult& g) {
  json chunks = json::array();
  for (const auto& ch : g.chunks) {
    chunks.push_back(json{{"start", ch.start}, {"end", ch.end}, {"epsilon", ch.epsilon},
                          {"iterations", ch.iterations}, {"max_factor", ch.max_factor}});
  }
  return json{{"converged", g.converged}, {"status", g.status}, {"final_time", g.final_time},
              {"max_contraction", g.max_contraction}, {"chunks", chunks}};
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

/// Sample times of [start, end] at the configured density, start included.
std::vector<double> stream_times(const json& c, double start, double end) {
  std::size_t m = c.at("time-samples");
  if (m == 0) m = static_cast<std::size_t>(std::ceil(c.at("samples-per-unit").get<double>() * (end - start)));
  return uniform_times(start, end, std::max<std::size_t>(m, 8) + 1);
}

struct Evolution {
  bool converged = true;
  json solver;
};

/// Evolves u0 from `start` to `end` with the configured solver, streaming every sample.
Evolution evolve(const json& c, const SpectralField& u0, const NonlinearityG& g, double start, double end,
                 const TraceSink& sink, const std::string& solver) {
  SolverConfig sc = make_solver_config(c);
  sc.t_start = start;
  sc.t_end = end;
  sc.t0 = start;
  Evolution ev;
  if (solver == "picard") {
    const auto res = glued_solve(u0, g, sc, c.at("chunk"), sink);
    ev.converged = res.converged;
    ev.solver = glued_json(res);
  } else {
    const auto times = stream_times(c, start, end);
    sink(times.front(), u0);
    reference_stream(u0, start, std::span<const double>(times).subspan(1), g, sc, sink);
    ev.solver = json{{"status", "reference"}, {"samples", times.size()}, {"step", sc.reference_step}};
  }
  return ev;
}

// ---------------------------------------------------------------------------

Outcome run_verify(const json& c) {
  EstimateSpec spec;
  const json defaults = default_config("verify");
  json params = json::object();
  for (const auto& [k, v] : c.items()) {
    if (!defaults.contains(k)) params[k] = v;
  }
  spec.kind = resolve_estimate(parse_estimate(c.at("id"), params));
  spec.ensemble = c.at("ensemble");
  spec.seed = c.at("seed");
  spec.half_length = c.at("half-length");
  spec.points = c.at("points");
  spec.t_end = c.at("t-end");
  spec.time_samples = c.at("time-samples");
  spec.refine = c.at("refine");
  const auto report = verify(spec);

  Checks checks;
  checks.holds("all_finite", report.all_finite);
  if (!report.table && spec.refine) {
    const double limit = c.at("max-drift");
    checks.at_most("grid_drift", report.grid_drift, limit);
    checks.at_most("ensemble_drift", report.ensemble_drift, limit);
  }
  return finish("verify", c, checks, report_json(report), report_csv(report));
}

Outcome run_solve(const json& c) {
  const Grid1D grid = make_grid(c.at("half-length"), c.at("points").get<std::int64_t>());
  const NonlinearityG g = make_g(c);
  std::vector<std::string> warnings;
  validate(g, c.at("exploratory"), &warnings);
  const auto datum = make_datum("solve", c, grid, g);
  const SpectralField& u0 = datum.field;
  const SolverConfig sc = make_solver_config(c);
  const double r = critical_exponent(g.alpha);
  const std::size_t rho = sc.rho;

  json result{{"datum", datum.info}, {"critical_exponent", r}, {"s_L", s_L(g.alpha)}};
  Checks checks;
  std::string csv;

  if (c.at("chunk").get<double>() == 0.0) {
    SolveResult res;
    try {
      res = picard_solve(u0, sc.t0, g, sc);
    } catch (const NumericalBlowup& e) {
      return blowup_outcome("solve", c, e, r, result);
    }
    for (const auto& w : res.warnings) warnings.push_back(w);
    double max_factor = 0.0;
    for (double f : res.contraction_factors) max_factor = std::max(max_factor, f);
    result.update(json{{"status", res.status},
                       {"converged", res.converged},
                       {"gate_passed", res.gate_passed},
                       {"iterations", res.iterations},
                       {"epsilon", res.epsilon},
                       {"epsilon_s", res.epsilon_s},
                       {"epsilon_l", res.epsilon_l},
                       {"delta", sc.delta},
                       {"update_norms", numbers(res.update_norms)},
                       {"contraction_factors", numbers(res.contraction_factors)},
                       {"max_contraction", max_factor},
                       {"solution_s", res.solution_s},
                       {"solution_l", res.solution_l},
                       {"small_data_bound", res.small_data_bound_holds},
                       {"sup_critical_norm", res.sup_critical_norm},
                       {"mass_drift", res.diagnostics.mass_drift},
                       {"energy_drift", res.diagnostics.energy_drift},
                       {"boundary_mass", res.diagnostics.boundary_mass}});
    checks.holds("gate", res.gate_passed);
    checks.holds("converged", res.converged);
    if (res.converged && res.trace) {
      const TimeTrace& trace = *res.trace;
      checks.at_most("max_contraction", max_factor, c.at("max-contraction"));
      checks.at_most("mass_drift", res.diagnostics.mass_drift, c.at("max-mass-drift"));
      checks.at_most("energy_drift", res.diagnostics.energy_drift, c.at("max-energy-drift"));
      checks.holds("small_data_bound", res.small_data_bound_holds);
      result["tainted"] = res.diagnostics.boundary_mass > c.at("max-boundary-mass").get<double>();

      std::optional<TimeTrace> ref;
      if (c.at("reference").get<bool>()) {
        try {
          ref = reference_solve(u0, sc.t0, g, sc);
        } catch (const NumericalBlowup& e) {
          return blowup_outcome("solve", c, e, r, result);
        }
        const double err = sup_lhat_distance(trace, *ref, 2.0);
        result["reference_error"] = err;
        checks.at_most("reference_error", err, c.at("max-reference-error"));
      }
      csv = ref ? "t,mass,energy,critical_norm,reference_error\n" : "t,mass,energy,critical_norm\n";
      for (std::size_t i = 0; i < trace.size(); ++i) {
        std::vector<double> row{trace.times()[i], mass(trace[i]), energy(trace[i], g, rho), lhat_norm(trace[i], r)};
        if (ref) row.push_back(lhat_norm(trace[i] - (*ref)[i], 2.0));
        csv += csv_row(row);
      }
      const std::string trace_name = c.at("trace");
      if (!trace_name.empty()) {
        const auto path = output_path(c, trace_name);
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        write_trace(path, trace);
        result["trace_path"] = path.string();
      }
    }
    result["warnings"] = warnings;
    return finish("solve", c, checks, std::move(result), std::move(csv));
  }

  const double chunk = c.at("chunk");
  MonitorConfig mc;
  mc.checkpoints = chunk_checkpoints(sc.t_start, sc.t_end, chunk);
  mc.rho = rho;
  RunMonitor monitor(grid, g, mc);
  Stream stream(c, grid);
  std::vector<double> compare_times;
  std::vector<SpectralField> compare_states;
  std::size_t next = 0;
  csv = "t,mass,energy,critical_norm\n";
  stream.observe([&](double t, const SpectralField& u) {
    monitor.add(t, u);
    csv += csv_row({t, mass(u), energy(u, g, rho), lhat_norm(u, r)});
    if (next < mc.checkpoints.size() && t >= mc.checkpoints[next] - 1e-9) {
      compare_times.push_back(t);
      compare_states.push_back(u);
      ++next;
    }
  });
  GluedResult glued;
  try {
    glued = glued_solve(u0, g, sc, chunk, stream.sink());
  } catch (const NumericalBlowup& e) {
    result["records"] = records_json(monitor.records());
    stream.finish(result);
    return blowup_outcome("solve", c, e, r, result);
  }
  stream.finish(result);
  const MonitorRecord last = monitor.snapshot();
  result.update(json{{"glued", glued_json(glued)},
                     {"converged", glued.converged},
                     {"max_contraction", glued.max_contraction},
                     {"mass_drift", last.mass_drift},
                     {"energy_drift", last.energy_drift},
                     {"boundary_mass", last.max_boundary_mass},
                     {"tainted", last.max_boundary_mass > c.at("max-boundary-mass").get<double>()},
                     {"records", records_json(monitor.records())}});
  checks.holds("converged", glued.converged);
  checks.at_most("max_contraction", glued.max_contraction, c.at("max-contraction"));
  checks.at_most("mass_drift", last.mass_drift, c.at("max-mass-drift"));
  checks.at_most("energy_drift", last.energy_drift, c.at("max-energy-drift"));
  if (c.at("reference").get<bool>() && glued.converged && !compare_times.empty()) {
    double err = 0.0;
    std::size_t i = 0;
    try {
      reference_stream(u0, sc.t_start, compare_times, g, sc, [&](double, const SpectralField& u) {
        err = std::max(err, lhat_norm(u - compare_states[i++], 2.0));
      });
    } catch (const NumericalBlowup& e) {
      return blowup_outcome("solve", c, e, r, result);
    }
    result["reference_error"] = err;
    checks.at_most("reference_error", err, c.at("max-reference-error"));
  }
  result["warnings"] = warnings;
  return finish("solve", c, checks, std::move(result), std::move(csv));
}

Outcome run_scatter(const json& c) {
  const std::string protocol = c.at("protocol");
  const Grid1D grid = make_grid(c.at("half-length"), c.at("points").get<std::int64_t>());
  const NonlinearityG g = make_g(c);
  std::vector<std::string> warnings;
  validate(g, c.at("exploratory"), &warnings);
  const auto datum = make_datum("scatter", c, grid, g);
  const SpectralField& u0 = datum.field;
  const double r = critical_exponent(g.alpha);
  const double r_res = c.at("residual-r").get<double>() > 0.0 ? c.at("residual-r").get<double>() : r;
  const double t_end = c.at("t-end");
  const double t_min = c.at("t-min");
  const std::size_t rho = c.at("rho");
  const std::string solver = c.at("solver");

  json result{{"datum", datum.info}, {"critical_exponent", r}, {"residual_r", r_res},
              {"direction", c.at("direction")}};
  MonitorConfig mc;
  mc.checkpoints = dyadic_checkpoints(t_min, t_end);
  mc.rho = rho;
  RunMonitor monitor(grid, g, mc);
  ScatteringTracker tracker(r_res, 1, t_min);
  const double p_norm = g.alpha + 1.0;
  const double lp0 = lebesgue_norm(u0, p_norm);
  double lp_min_ratio = 1.0;
  Stream stream(c, grid);
  std::string csv = "t,critical_norm,mass,lp_norm\n";
  stream.observe([&](double t, const SpectralField& u) {
    monitor.add(t, u);
    tracker.add(t, u);
    const double lp = lebesgue_norm(u, p_norm);
    if (lp0 > 0.0) lp_min_ratio = std::min(lp_min_ratio, lp / lp0);
    csv += csv_row({t, lhat_norm(u, r), mass(u), lp});
  });

  Evolution ev;
  try {
    ev = evolve(c, u0, g, 0.0, t_end, stream.sink(), solver);
  } catch (const NumericalBlowup& e) {
    result["records"] = records_json(monitor.records());
    stream.finish(result);
    return blowup_outcome("scatter", c, e, r, result);
  }
  stream.finish(result);
  const MonitorRecord last = monitor.snapshot();
  const auto residuals = tracker.residuals();
  const bool decreasing = strictly_decreasing(residuals);
  result.update(json{{"solver", ev.solver},
                     {"converged", ev.converged},
                     {"records", records_json(monitor.records())},
                     {"checkpoint_times", tracker.checkpoint_times()},
                     {"residuals", numbers(residuals)},
                     {"residuals_decreasing", decreasing},
                     {"snorm", last.snorm},
                     {"sup_critical_norm", last.sup_critical_norm},
                     {"mass_drift", last.mass_drift},
                     {"energy_drift", last.energy_drift},
                     {"boundary_mass", last.max_boundary_mass},
                     {"tainted", last.max_boundary_mass > c.at("max-boundary-mass").get<double>()},
                     {"lp_min_ratio", lp_min_ratio}});

  Checks checks;
  checks.holds("converged", ev.converged);
  checks.at_least("dyadic_checkpoints", static_cast<double>(tracker.checkpoints()), 3.0);
  if (protocol == "small-data") {
    const double norm0 = lhat_norm(u0, r);
    const double bound = c.at("bound-factor").get<double>() * norm0;
    const double lhs = last.sup_critical_norm + last.snorm;
    result["bound"] = json{{"lhs", lhs}, {"rhs", bound}, {"ratio", lhs / bound}};
    checks.at_most("bound_ratio", lhs / bound, 1.0);
    checks.holds("residuals_decreasing", decreasing);
  } else if (protocol == "criterion") {
    std::vector<double> increments;
    const auto& recs = monitor.records();
    for (std::size_t i = 1; i < recs.size(); ++i) increments.push_back(recs[i].snorm - recs[i - 1].snorm);
    const bool saturating = strictly_decreasing(increments);
    result["snorm_increments"] = numbers(increments);
    result["snorm_saturating"] = saturating;
    result["scatters"] = decreasing && saturating;
    checks.holds("criterion_consistent", saturating == decreasing);
  } else {
    const double e0 = datum.info.at("energy");
    checks.at_most("initial_energy", e0, 0.0);
    if (residuals.size() >= 2) {
      const double ratio = residuals.back() / residuals.front();
      result["residual_final_over_first"] = ratio;
      checks.at_least("residual_final_over_first", ratio, c.at("non-decay-fraction"));
    } else {
      checks.holds("residuals_available", false);
    }
    checks.at_least("lp_min_ratio", lp_min_ratio, c.at("lp-fraction"));
    if (c.at("control-amp").get<double>() > 0.0) {
      const Grid1D cgrid = make_grid(c.at("control-half-length"), c.at("control-points").get<std::int64_t>());
      const auto control0 = gaussian_datum(cgrid, c.at("control-amp"), c.at("control-center"), c.at("width"));
      ScatteringTracker ctracker(r_res, 1, t_min);
      json cfg = c;
      if (cfg.at("chunk").get<double>() <= 0.0) cfg["chunk"] = 1.0;
      Evolution cev;
      try {
        cev = evolve(cfg, control0, g, 0.0, t_end, [&](double t, const SpectralField& u) { ctracker.add(t, u); },
                     "picard");
      } catch (const NumericalBlowup& e) {
        return blowup_outcome("scatter", c, e, r, result);
      }
      const auto cres = ctracker.residuals();
      const bool cdec = strictly_decreasing(cres);
      result["control"] = json{{"solver", cev.solver}, {"converged", cev.converged},
                               {"residuals", numbers(cres)}, {"residuals_decreasing", cdec}};
      checks.holds("control_converged", cev.converged);
      checks.holds("control_residuals_decreasing", cdec && cres.size() >= 2);
    }
  }
  result["warnings"] = warnings;
  return finish("scatter", c, checks, std::move(result), std::move(csv));
}

Outcome run_persist(const json& c) {
  const Grid1D grid = make_grid(c.at("half-length"), c.at("points").get<std::int64_t>());
  const NonlinearityG g = make_g(c);
  std::vector<std::string> warnings;
  validate(g, c.at("exploratory"), &warnings);
  const auto datum = make_datum("persist", c, grid, g);
  const double r = critical_exponent(g.alpha);
  const double t_end = c.at("t-end");

  MonitorConfig mc;
  mc.checkpoints = chunk_checkpoints(0.0, t_end, c.at("chunk"));
  mc.lhat_r = c.at("lhat-r").get<std::vector<double>>();
  mc.sobolev_sigma = c.at("sobolev-sigma").get<std::vector<double>>();
  mc.rho = c.at("rho");
  RunMonitor monitor(grid, g, mc);
  Stream stream(c, grid);
  stream.observe([&](double t, const SpectralField& u) { monitor.add(t, u); });
  json result{{"datum", datum.info}, {"critical_exponent", r}};
  Evolution ev;
  try {
    ev = evolve(c, datum.field, g, 0.0, t_end, stream.sink(), "picard");
  } catch (const NumericalBlowup& e) {
    result["records"] = records_json(monitor.records());
    stream.finish(result);
    return blowup_outcome("persist", c, e, r, result);
  }
  stream.finish(result);

  Checks checks;
  checks.holds("converged", ev.converged);
  const MonitorRecord last = monitor.snapshot();
  const double limit = c.at("max-growth");
  json growth = json::object();
  auto observe = [&](const std::string& name, double initial, double max) {
    const double ratio = max / initial;
    growth[name] = json{{"initial", initial}, {"max", max}, {"ratio", finite_or_string(ratio)}};
    checks.at_most(name + "_growth", ratio, limit);
  };
  for (std::size_t i = 0; i < mc.lhat_r.size(); ++i) {
    std::ostringstream name;
    name << "lhat(" << mc.lhat_r[i] << ")";
    observe(name.str(), monitor.initial_lhat()[i], last.lhat_max[i]);
  }
  for (std::size_t i = 0; i < mc.sobolev_sigma.size(); ++i) {
    std::ostringstream name;
    name << "sobolev(" << mc.sobolev_sigma[i] << ")";
    observe(name.str(), monitor.initial_sobolev()[i], last.sobolev_max[i]);
  }

  std::string csv = "t";
  for (double x : mc.lhat_r) csv += ",lhat_" + json(x).dump();
  for (double x : mc.sobolev_sigma) csv += ",sobolev_" + json(x).dump();
  csv += '\n';
  std::vector<double> row{0.0};
  row.insert(row.end(), monitor.initial_lhat().begin(), monitor.initial_lhat().end());
  row.insert(row.end(), monitor.initial_sobolev().begin(), monitor.initial_sobolev().end());
  csv += csv_row(row);
  for (const auto& rec : monitor.records()) {
    row = {rec.time};
    row.insert(row.end(), rec.lhat.begin(), rec.lhat.end());
    row.insert(row.end(), rec.sobolev.begin(), rec.sobolev.end());
    csv += csv_row(row);
  }
  result.update(json{{"solver", ev.solver},
                     {"converged", ev.converged},
                     {"growth", growth},
                     {"mass_drift", last.mass_drift},
                     {"energy_drift", last.energy_drift},
                     {"boundary_mass", last.max_boundary_mass},
                     {"tainted", last.max_boundary_mass > c.at("max-boundary-mass").get<double>()},
                     {"records", records_json(monitor.records())},
                     {"warnings", warnings}});
  return finish("persist", c, checks, std::move(result), std::move(csv));
}

Outcome run_counterexample(const json& c) {
  estimate::Counterexample spec;
  spec.family = c.at("family") == "fn" ? CounterexampleFamily::f_n : CounterexampleFamily::g_n;
  spec.r = c.at("r");
  const auto n = c.at("n").get<std::vector<double>>();
  if (!n.empty()) {
    spec.n.clear();
    for (double v : n) spec.n.push_back(static_cast<long>(v));
  } else if (spec.family == CounterexampleFamily::g_n) {
    spec.n = {8, 64, 512};
  }
  if (c.at("p").get<double>() > 0.0) spec.p = c.at("p").get<double>();
  try {
    spec = std::get<estimate::Counterexample>(resolve_estimate(spec));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("counterexample", e.what());
  }
  const auto table = counterexample_table(spec, c.at("lattice"));

  Checks checks;
  json rows = json::array();
  std::string csv = "n,lhat,sobolev,lhat_exact,sobolev_exact\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    rows.push_back(json{{"n", row.n}, {"lhat", row.lhat}, {"sobolev", row.sobolev},
                        {"lhat_exact", row.lhat_exact}, {"sobolev_exact", row.sobolev_exact}});
    csv += std::to_string(row.n) + "," + csv_row({row.lhat, row.sobolev, row.lhat_exact, row.sobolev_exact});
    const std::string tag = "[n=" + std::to_string(row.n) + "]";
    if (table.family == CounterexampleFamily::f_n) {
      checks.at_most("lhat_minus_one" + tag, std::abs(row.lhat - 1.0), c.at("lhat-tolerance"));
      checks.at_most("sobolev_closed_form_error" + tag, std::abs(row.sobolev / row.sobolev_exact - 1.0),
                     c.at("closed-form-tolerance"));
    } else {
      checks.at_most("sobolev_over_limit" + tag, row.sobolev / table.sobolev_limit, c.at("limit-factor"));
      if (i > 0) checks.holds("lhat_increasing" + tag, row.lhat > table.rows[i - 1].lhat);
    }
  }
  json result{{"family", c.at("family")}, {"r", table.r}, {"dxi", table.dxi}, {"points", table.points},
              {"rows", rows}};
  if (table.family == CounterexampleFamily::g_n) {
    result["p"] = table.p;
    result["sobolev_limit"] = table.sobolev_limit;
  }
  return finish("counterexample", c, checks, std::move(result), std::move(csv));
}

Outcome run_calibrate(const json& c) {
  CalibrationConfig cfg;
  cfg.half_length = c.at("half-length");
  cfg.points = c.at("points");
  cfg.alpha = c.at("alpha");
  cfg.t_end = c.at("t-end");
  cfg.samples_per_unit = c.at("samples-per-unit");
  cfg.factor_limit = c.at("factor-limit");
  cfg.bisection_steps = c.at("bisection-steps");
  cfg.max_iterations = c.at("max-iterations");
  cfg.seed = c.at("seed");
  cfg.random_data = c.at("random-data");
  const auto res = calibrate_delta(cfg);
  json samples = json::array();
  std::string csv = "datum,mu,amplitude,epsilon,max_factor\n";
  for (const auto& s : res.samples) {
    samples.push_back(json{{"datum", s.datum}, {"mu", s.mu}, {"amplitude", s.amplitude},
                           {"epsilon", s.epsilon}, {"max_factor", s.max_factor}});
    csv += s.datum + "," + csv_row({s.mu, s.amplitude, s.epsilon, s.max_factor});
  }
  Checks checks;
  checks.at_least("calibrated_delta", res.delta, kCalibratedDelta);
  return finish("calibrate-delta", c, checks,
                json{{"delta", res.delta}, {"shipped_delta", kCalibratedDelta}, {"samples", samples}},
                std::move(csv));
}

}  // namespace

const char* version() { return GKDV_VERSION; }

Outcome execute(const std::string& command, const json& config) {
  if (command == "verify") return run_verify(config);
  if (command == "solve") return run_solve(config);
  if (command == "scatter") return run_scatter(config);
  if (command == "persist") return run_persist(config);
  if (command == "counterexample") return run_counterexample(config);
  if (command == "calibrate-delta") return run_calibrate(config);
  throw ConfigError("command", "unknown command '" + command + "'");
}

void write_outputs(const Outcome& outcome, const json& config) {
  const fs::path dir = config.at("out").get<std::string>();
  fs::create_directories(dir);
  atomic_write(dir / "report.json", outcome.report.dump(2) + "\n");
  atomic_write(dir / "samples.csv", outcome.csv);
  const auto& result = outcome.report.at("result");
  if (result.contains("trace_path")) {
    json sidecar = outcome.report;
    atomic_write(fs::path(result.at("trace_path").get<std::string>() + ".json"), sidecar.dump(2) + "\n");
  }
}

}  // namespace gkdv::cli
