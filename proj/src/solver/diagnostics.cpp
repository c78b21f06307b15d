#include "gkdv/solver/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gkdv/solver/conservation.hpp"
#include "gkdv/solver/picard.hpp"
#include "gkdv/spectral/norms.hpp"

namespace gkdv {

RunMonitor::RunMonitor(const Grid1D& grid, const NonlinearityG& g, MonitorConfig cfg)
    : g_(g),
      cfg_(std::move(cfg)),
      r_(critical_exponent(g.alpha)),
      s_acc_(grid, 0.0, critical_exponent(g.alpha)),
      x_acc_(grid, s_L(g.alpha), critical_exponent(g.alpha)) {
  std::sort(cfg_.checkpoints.begin(), cfg_.checkpoints.end());
}

void RunMonitor::add(double t, const SpectralField& u) {
  s_acc_.add(t, u);
  x_acc_.add(t, u);
  MonitorRecord& c = current_;
  c.time = t;
  c.critical_norm = lhat_norm(u, r_);
  c.boundary_mass = boundary_mass_fraction(u);
  c.lhat.resize(cfg_.lhat_r.size());
  c.sobolev.resize(cfg_.sobolev_sigma.size());
  for (std::size_t i = 0; i < cfg_.lhat_r.size(); ++i) c.lhat[i] = lhat_norm(u, cfg_.lhat_r[i]);
  for (std::size_t i = 0; i < cfg_.sobolev_sigma.size(); ++i) {
    c.sobolev[i] = sobolev_norm(u, cfg_.sobolev_sigma[i]);
  }
  const double m = mass(u);
  const double e = energy(u, g_, cfg_.rho);
  if (samples_ == 0) {
    mass0_ = m;
    energy0_ = e;
    energy_scale0_ = energy_scale(u, g_, cfg_.rho);
    lhat0_ = c.lhat;
    sob0_ = c.sobolev;
    c.lhat_max = c.lhat;
    c.sobolev_max = c.sobolev;
  }
  if (mass0_ > 0.0) c.mass_drift = std::max(c.mass_drift, std::abs(m - mass0_) / mass0_);
  if (energy_scale0_ > 0.0) {
    c.energy_drift = std::max(c.energy_drift, std::abs(e - energy0_) / energy_scale0_);
  }
  c.sup_critical_norm = std::max(c.sup_critical_norm, c.critical_norm);
  c.max_boundary_mass = std::max(c.max_boundary_mass, c.boundary_mass);
  for (std::size_t i = 0; i < c.lhat.size(); ++i) c.lhat_max[i] = std::max(c.lhat_max[i], c.lhat[i]);
  for (std::size_t i = 0; i < c.sobolev.size(); ++i) {
    c.sobolev_max[i] = std::max(c.sobolev_max[i], c.sobolev[i]);
  }
  ++samples_;
  last_t_ = t;
  while (next_checkpoint_ < cfg_.checkpoints.size() &&
         t >= cfg_.checkpoints[next_checkpoint_] - 1e-9) {
    records_.push_back(snapshot());
    ++next_checkpoint_;
  }
}

MonitorRecord RunMonitor::snapshot() const {
  MonitorRecord rec = current_;
  if (samples_ >= 2) {
    rec.snorm = s_acc_.value();
    rec.xnorm = x_acc_.value();
  }
  return rec;
}

std::vector<MonitorRecord> monitor(const TimeTrace& trace, const NonlinearityG& g, MonitorConfig cfg) {
  if (cfg.checkpoints.empty()) cfg.checkpoints.push_back(trace.end());
  RunMonitor mon(trace.grid(), g, std::move(cfg));
  for (std::size_t i = 0; i < trace.size(); ++i) mon.add(trace.times()[i], trace[i]);
  return mon.records();
}

ScatteringTracker::ScatteringTracker(double r, int direction, double t_min)
    : r_(r), direction_(direction >= 0 ? 1 : -1), next_(t_min) {
  if (!(t_min > 0.0)) throw std::invalid_argument("scattering checkpoints need t_min > 0");
}

void ScatteringTracker::add(double t, const SpectralField& u) {
  const double tau = direction_ * t;
  if (tau < next_ - 1e-9) return;
  times_.push_back(t);
  pulled_.push_back(airy_propagate(u, -t));
  while (next_ <= tau + 1e-9) next_ *= 2.0;
}

std::vector<double> ScatteringTracker::residuals() const {
  std::vector<double> out;
  for (std::size_t j = 1; j < pulled_.size(); ++j) out.push_back(lhat_norm(pulled_[j] - pulled_[j - 1], r_));
  return out;
}

const SpectralField& ScatteringTracker::candidate() const {
  if (pulled_.empty()) throw std::invalid_argument("no scattering checkpoints recorded");
  return pulled_.back();
}

ScatteringResult scattering_state(const ScatteringTracker& tracker) {
  if (tracker.checkpoints() < 3) {
    throw std::invalid_argument("scattering_state needs at least 3 dyadic checkpoints, got " +
                                std::to_string(tracker.checkpoints()));
  }
  ScatteringResult res{tracker.candidate(), tracker.residuals(), tracker.checkpoint_times(), true};
  for (std::size_t j = 1; j < res.residuals.size(); ++j) {
    if (!(res.residuals[j] < res.residuals[j - 1])) res.monotone = false;
  }
  return res;
}

ScatteringResult scattering_state(const TimeTrace& trace, int direction, double r, double t_min) {
  ScatteringTracker tracker(r, direction, t_min);
  if (direction >= 0) {
    for (std::size_t i = 0; i < trace.size(); ++i) tracker.add(trace.times()[i], trace[i]);
  } else {
    for (std::size_t i = trace.size(); i-- > 0;) tracker.add(trace.times()[i], trace[i]);
  }
  return scattering_state(tracker);
}

}  // namespace gkdv
