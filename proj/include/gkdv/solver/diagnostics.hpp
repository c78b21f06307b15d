#pragma once

#include <optional>
#include <vector>

#include "gkdv/solver/nonlinearity.hpp"
#include "gkdv/spacetime/mixed_norm.hpp"
#include "gkdv/spacetime/time_trace.hpp"

namespace gkdv {

struct MonitorConfig {
  /// Times at which a record is taken (the first sample at or after each).
  std::vector<double> checkpoints;
  /// Persistence observables lhat(r0) and sobolev(sigma).
  std::vector<double> lhat_r;
  std::vector<double> sobolev_sigma;
  std::size_t rho = 2;
};

struct MonitorRecord {
  double time = 0.0;
  /// Cumulative S([t_first, time]; (alpha-1)/2) and X(...; s_L(alpha), (alpha-1)/2).
  double snorm = 0.0;
  double xnorm = 0.0;
  double critical_norm = 0.0;
  double sup_critical_norm = 0.0;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  double boundary_mass = 0.0;
  double max_boundary_mass = 0.0;
  std::vector<double> lhat;
  std::vector<double> lhat_max;
  std::vector<double> sobolev;
  std::vector<double> sobolev_max;
};

/// Streaming run diagnostics: feed samples in time order.
class RunMonitor {
 public:
  RunMonitor(const Grid1D& grid, const NonlinearityG& g, MonitorConfig cfg);

  void add(double t, const SpectralField& u);
  /// Record at the most recent sample.
  MonitorRecord snapshot() const;
  const std::vector<MonitorRecord>& records() const { return records_; }
  const std::vector<double>& initial_lhat() const { return lhat0_; }
  const std::vector<double>& initial_sobolev() const { return sob0_; }

 private:
  NonlinearityG g_;
  MonitorConfig cfg_;
  double r_;
  XNormAccumulator s_acc_;
  XNormAccumulator x_acc_;
  std::size_t next_checkpoint_ = 0;
  std::size_t samples_ = 0;
  double last_t_ = 0.0;
  double mass0_ = 0.0, energy0_ = 0.0, energy_scale0_ = 0.0;
  MonitorRecord current_;
  std::vector<double> lhat0_, sob0_;
  std::vector<MonitorRecord> records_;
};

/// Batch form over a whole trace; checkpoints default to the final time.
std::vector<MonitorRecord> monitor(const TimeTrace& trace, const NonlinearityG& g, MonitorConfig cfg = {});

/// Pull-back w(t) = e^{t d^3} u(t) captured at dyadic times
/// direction * t_min * 2^j.
class ScatteringTracker {
 public:
  ScatteringTracker(double r, int direction = 1, double t_min = 1.0);

  void add(double t, const SpectralField& u);
  std::size_t checkpoints() const { return times_.size(); }
  const std::vector<double>& checkpoint_times() const { return times_; }
  /// ||w(t_{j+1}) - w(t_j)||_{L-hat^r}.
  std::vector<double> residuals() const;
  /// w at the last checkpoint: the u_+ candidate.
  const SpectralField& candidate() const;

 private:
  double r_;
  int direction_;
  double next_;
  std::vector<double> times_;
  std::vector<SpectralField> pulled_;
};

struct ScatteringResult {
  SpectralField u_plus;
  std::vector<double> residuals;
  std::vector<double> checkpoint_times;
  /// Residuals strictly decrease.
  bool monotone = false;
};

/// Errors when fewer than 3 dyadic checkpoints fall inside the trace.
ScatteringResult scattering_state(const TimeTrace& trace, int direction = 1, double r = 2.0,
                                  double t_min = 1.0);
ScatteringResult scattering_state(const ScatteringTracker& tracker);

}  // namespace gkdv
