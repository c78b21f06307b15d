#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkdv/solver/nonlinearity.hpp"
#include "gkdv/spacetime/time_trace.hpp"

namespace gkdv {

/// Empirically calibrated smallness threshold for the contraction gate
/// (see calibrate_delta and tools/gkdv_lab calibrate-delta).
inline constexpr double kCalibratedDelta = 1.41;

struct SolverConfig {
  double t_start = 0.0;
  double t_end = 1.0;
  /// Anchor of the integral equation; must coincide with a sample time.
  double t0 = 0.0;
  /// Sample intervals on [t_start, t_end]; 0 selects samples_per_unit * |I|.
  std::size_t time_samples = 0;
  double samples_per_unit = 128.0;
  std::size_t rho = 2;
  /// Stop once the sup-in-time L-hat^{(alpha-1)/2} update falls below this.
  double tolerance = 1e-12;
  std::size_t max_iterations = 50;
  double delta = kCalibratedDelta;
  bool enforce_gate = true;
  bool exploratory = false;
  double reference_step = 1e-3;
  /// Blowup when the critical norm exceeds this multiple of its initial value.
  double blowup_factor = 1e6;
  /// Lower bound on the chunk length of glued solves.
  double min_chunk = 1.0 / 1024.0;
};

/// Sample times of cfg's interval and the index of the anchor among them.
std::vector<double> solver_times(const SolverConfig& cfg);
std::size_t anchor_index(std::span<const double> times, double t0);

/// Critical exponent r = (alpha - 1)/2 and the auxiliary regularity
/// s_L(alpha) = 3/4 - 1/(alpha - 1).
double critical_exponent(double alpha);
double s_L(double alpha);

class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(const std::string& what, double last_time, SpectralField last_state,
                  std::optional<TimeTrace> last_iterate = std::nullopt)
      : std::runtime_error(what),
        last_time(last_time),
        last_state(std::move(last_state)),
        last_iterate(std::move(last_iterate)) {}

  double last_time;
  SpectralField last_state;
  std::optional<TimeTrace> last_iterate;
};

struct SolveDiagnostics {
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  double boundary_mass = 0.0;
};

struct SolveResult {
  std::optional<TimeTrace> trace;
  std::size_t iterations = 0;
  /// ||v_{k+1} - v_k|| for k = 0, 1, ...
  std::vector<double> update_norms;
  /// update_norms[k] / update_norms[k-1].
  std::vector<double> contraction_factors;
  double epsilon = 0.0;
  double epsilon_s = 0.0;
  double epsilon_l = 0.0;
  bool gate_passed = false;
  bool converged = false;
  std::string status;
  double solution_s = 0.0;
  double solution_l = 0.0;
  /// ||u||_S + ||u||_L <= 2 epsilon on the converged iterate.
  bool small_data_bound_holds = false;
  double sup_critical_norm = 0.0;
  SolveDiagnostics diagnostics;
  std::vector<std::string> warnings;
};

/// Smallness functional on a free evolution trace:
/// {snorm, xnorm at s_L(alpha)} with r = (alpha - 1)/2.
std::pair<double, double> smallness_functional(const TimeTrace& free, double alpha);

/// Phi(v)(t) = e^{-(t-t0) d^3} u0 + mu int_{t0}^t e^{-(t-t') d^3} d_x G(v(t')) dt'
/// on the sample times of v.
TimeTrace duhamel_map(const TimeTrace& v, const SpectralField& u0, double t0,
                      const NonlinearityG& g, const SolverConfig& cfg);

/// Picard iteration v_{k+1} = Phi(v_k) from the free evolution, gated by
/// epsilon <= delta. Throws NumericalBlowup on non-finite or exploding iterates.
SolveResult picard_solve(const SpectralField& u0, double t0, const NonlinearityG& g,
                         const SolverConfig& cfg);

SolveDiagnostics trace_diagnostics(const TimeTrace& trace, const NonlinearityG& g, std::size_t rho);

using TraceSink = std::function<void(double t, const SpectralField& u)>;

struct ChunkRecord {
  double start = 0.0;
  double end = 0.0;
  double epsilon = 0.0;
  std::size_t iterations = 0;
  double max_factor = 0.0;
};

struct GluedResult {
  bool converged = false;
  std::string status;
  std::vector<ChunkRecord> chunks;
  double final_time = 0.0;
  std::optional<SpectralField> final_state;
  double max_contraction = 0.0;
};

/// Solves on [cfg.t_start, cfg.t_end] by repeated picard_solve on consecutive
/// chunks of length `chunk` (anchored at each chunk start), halving a chunk
/// whenever its gate fails. Every sample is handed to `sink` once, in order.
GluedResult glued_solve(const SpectralField& u0, const NonlinearityG& g, const SolverConfig& cfg,
                        double chunk, const TraceSink& sink);

}  // namespace gkdv
