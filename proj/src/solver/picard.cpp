#include "gkdv/solver/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gkdv/solver/conservation.hpp"
#include "gkdv/spacetime/mixed_norm.hpp"
#include "gkdv/spacetime/retarded.hpp"
#include "gkdv/spectral/norms.hpp"

namespace gkdv {
namespace {

bool all_finite(const SpectralField& f) {
  for (const auto& c : f.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

double sup_norm(const TimeTrace& v, double r) {
  double m = 0.0;
  for (const auto& f : v.fields()) m = std::max(m, lhat_norm(f, r));
  return m;
}

}  // namespace

double critical_exponent(double alpha) { return 0.5 * (alpha - 1.0); }

double s_L(double alpha) { return 0.75 - 1.0 / (alpha - 1.0); }

std::vector<double> solver_times(const SolverConfig& cfg) {
  if (!(cfg.t_end > cfg.t_start)) throw std::invalid_argument("solver interval must have t_end > t_start");
  std::size_t m = cfg.time_samples;
  if (m == 0) {
    m = static_cast<std::size_t>(std::ceil(cfg.samples_per_unit * (cfg.t_end - cfg.t_start) - 1e-9));
  }
  m = std::max<std::size_t>(m, 8);
  return uniform_times(cfg.t_start, cfg.t_end, m + 1);
}

std::size_t anchor_index(std::span<const double> times, double t0) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t0) <= 1e-12 * std::max(1.0, std::abs(t0))) return i;
  }
  std::ostringstream msg;
  msg << "anchor t0 = " << t0 << " does not coincide with a sample time";
  throw std::invalid_argument(msg.str());
}

std::pair<double, double> smallness_functional(const TimeTrace& free, double alpha) {
  const double r = critical_exponent(alpha);
  return {snorm(free, r), xnorm(free, s_L(alpha), r)};
}

TimeTrace duhamel_map(const TimeTrace& v, const SpectralField& u0, double t0,
                      const NonlinearityG& g, const SolverConfig& cfg) {
  if (!(v.grid() == u0.grid())) throw std::invalid_argument("iterate and datum live on different grids");
  const std::size_t anchor = anchor_index(v.times(), t0);
  TimeTrace free = free_evolution(u0, v.times(), t0);
  if (g.mu == 0.0) return free;
  std::vector<SpectralField> forcing;
  forcing.reserve(v.size());
  for (const auto& f : v.fields()) forcing.push_back(derivative(nonlinearity(f, g, cfg.rho)) * g.mu);
  auto integral = retarded_integral(v.times(), forcing, anchor);
  std::vector<SpectralField> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(free[i] + integral[i]);
  return TimeTrace(std::vector<double>(v.times().begin(), v.times().end()), std::move(out));
}

SolveDiagnostics trace_diagnostics(const TimeTrace& trace, const NonlinearityG& g, std::size_t rho) {
  SolveDiagnostics d;
  const double m0 = mass(trace[0]);
  const double e0 = energy(trace[0], g, rho);
  const double scale = energy_scale(trace[0], g, rho);
  for (const auto& f : trace.fields()) {
    if (m0 > 0.0) d.mass_drift = std::max(d.mass_drift, std::abs(mass(f) - m0) / m0);
    if (scale > 0.0) d.energy_drift = std::max(d.energy_drift, std::abs(energy(f, g, rho) - e0) / scale);
    d.boundary_mass = std::max(d.boundary_mass, boundary_mass_fraction(f));
  }
  return d;
}

SolveResult picard_solve(const SpectralField& u0, double t0, const NonlinearityG& g,
                         const SolverConfig& cfg) {
  if (!u0.is_real()) throw std::invalid_argument("picard_solve requires a real datum");
  if (cfg.rho < 2) throw std::invalid_argument("dealias padding rho must be >= 2");
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("picard tolerance must be positive");
  SolveResult res;
  validate(g, cfg.exploratory, &res.warnings);

  const auto times = solver_times(cfg);
  const std::size_t anchor = anchor_index(times, t0);
  const double r = critical_exponent(g.alpha);

  TimeTrace v = free_evolution(u0, times, t0);
  std::tie(res.epsilon_s, res.epsilon_l) = smallness_functional(v, g.alpha);
  res.epsilon = res.epsilon_s + res.epsilon_l;
  res.gate_passed = res.epsilon <= cfg.delta;
  if (!res.gate_passed && cfg.enforce_gate) {
    std::ostringstream msg;
    msg << "epsilon = " << res.epsilon << " exceeds delta = " << cfg.delta << "; shrink the interval";
    res.status = msg.str();
    return res;
  }

  const double ceiling = cfg.blowup_factor * std::max(lhat_norm(u0, r), 1e-300);
  for (std::size_t k = 0; k < cfg.max_iterations; ++k) {
    TimeTrace next = duhamel_map(v, u0, t0, g, cfg);
    for (const auto& f : next.fields()) {
      if (!all_finite(f) || lhat_norm(f, r) > ceiling) {
        std::ostringstream msg;
        msg << "numerical blowup in Picard iteration " << k + 1;
        throw NumericalBlowup(msg.str(), times[anchor], u0, v);
      }
    }
    const double d = sup_lhat_distance(next, v, r);
    if (!res.update_norms.empty()) {
      const double prev = res.update_norms.back();
      res.contraction_factors.push_back(prev > 0.0 ? d / prev : 0.0);
    }
    res.update_norms.push_back(d);
    v = std::move(next);
    res.iterations = k + 1;
    if (d <= cfg.tolerance) {
      res.converged = true;
      break;
    }
  }
  res.status = res.converged ? "converged" : "maximum iterations reached";
  res.solution_s = snorm(v, r);
  res.solution_l = xnorm(v, s_L(g.alpha), r);
  res.small_data_bound_holds = res.solution_s + res.solution_l <= 2.0 * res.epsilon;
  res.sup_critical_norm = sup_norm(v, r);
  res.diagnostics = trace_diagnostics(v, g, cfg.rho);
  res.trace = std::move(v);
  return res;
}

GluedResult glued_solve(const SpectralField& u0, const NonlinearityG& g, const SolverConfig& cfg,
                        double chunk, const TraceSink& sink) {
  if (!(chunk > 0.0)) throw std::invalid_argument("chunk length must be positive");
  GluedResult out;
  double t = cfg.t_start;
  SpectralField state = u0;
  if (sink) sink(t, state);
  while (cfg.t_end - t > 1e-12 * std::max(1.0, std::abs(cfg.t_end))) {
    double len = std::min(chunk, cfg.t_end - t);
    SolveResult res;
    SolverConfig sub = cfg;
    for (;;) {
      sub.t_start = t;
      sub.t_end = (cfg.t_end - (t + len) <= 1e-12 * std::max(1.0, std::abs(cfg.t_end))) ? cfg.t_end : t + len;
      sub.t0 = t;
      sub.time_samples = std::max<std::size_t>(
          8, static_cast<std::size_t>(std::llround(cfg.samples_per_unit * (sub.t_end - t))));
      res = picard_solve(state, t, g, sub);
      if (res.gate_passed && res.converged) break;
      len *= 0.5;
      if (len < cfg.min_chunk) {
        std::ostringstream msg;
        msg << "chunk at t = " << t << " fails (" << res.status << ") even at length " << 2 * len;
        out.status = msg.str();
        out.final_time = t;
        out.final_state = state;
        return out;
      }
    }
    const TimeTrace& tr = *res.trace;
    for (std::size_t i = 1; i < tr.size(); ++i) {
      if (sink) sink(tr.times()[i], tr[i]);
    }
    ChunkRecord rec{t, sub.t_end, res.epsilon, res.iterations, 0.0};
    for (double f : res.contraction_factors) rec.max_factor = std::max(rec.max_factor, f);
    out.max_contraction = std::max(out.max_contraction, rec.max_factor);
    out.chunks.push_back(rec);
    state = tr[tr.size() - 1];
    t = sub.t_end;
  }
  out.converged = true;
  out.status = "converged";
  out.final_time = t;
  out.final_state = state;
  return out;
}

}  // namespace gkdv
