#include "gkdv/solver/reference.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "gkdv/spectral/norms.hpp"

namespace gkdv {

LawsonStepper::LawsonStepper(const Grid1D& grid, const NonlinearityG& g, std::size_t rho)
    : grid_(grid), g_(g), rho_(rho), half_(grid.size()) {}

void LawsonStepper::prepare(double h) {
  if (h == cached_h_) return;
  cached_h_ = h;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double xi = grid_.xi(i);
    half_[i] = std::polar(1.0, 0.5 * h * xi * xi * xi);
  }
  half_[grid_.nyquist_index()] = 1.0;
}

SpectralField LawsonStepper::phase(const SpectralField& u) const {
  std::vector<Complex> c(u.coeffs().begin(), u.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= half_[i];
  return SpectralField(grid_, std::move(c), u.is_real());
}

SpectralField LawsonStepper::rhs(const SpectralField& u) const {
  if (g_.mu == 0.0) return SpectralField::zero(grid_);
  return derivative(nonlinearity(u, g_, rho_)) * g_.mu;
}

SpectralField LawsonStepper::step(const SpectralField& u, double h) {
  prepare(h);
  const SpectralField k1 = rhs(u);
  const SpectralField eu = phase(u);
  const SpectralField k2 = rhs(phase(u + k1 * (0.5 * h)));
  const SpectralField k3 = rhs(eu + k2 * (0.5 * h));
  const SpectralField k4 = rhs(phase(eu + k3 * h));
  // u_{n+1} = E^2 u + h/6 (E^2 k1 + 2 E (k2 + k3) + k4),  E = e^{i xi^3 h/2}
  return phase(phase(u + k1 * (h / 6.0)) + (k2 + k3) * (h / 3.0)) + k4 * (h / 6.0);
}

void reference_stream(const SpectralField& u0, double t0, std::span<const double> output_times,
                      const NonlinearityG& g, const SolverConfig& cfg, const TraceSink& sink) {
  if (!u0.is_real()) throw std::invalid_argument("reference_solve requires a real datum");
  if (!(cfg.reference_step > 0.0)) throw std::invalid_argument("reference step must be positive");
  LawsonStepper stepper(u0.grid(), g, cfg.rho);
  const double r = 0.5 * (g.alpha - 1.0);
  const double ceiling = cfg.blowup_factor * std::max(lhat_norm(u0, r), 1e-300);
  SpectralField u = u0;
  double t = t0;
  for (double target : output_times) {
    const double gap = target - t;
    if (gap != 0.0) {
      const auto steps = static_cast<std::size_t>(std::ceil(std::abs(gap) / cfg.reference_step - 1e-9));
      const double h = gap / static_cast<double>(std::max<std::size_t>(steps, 1));
      for (std::size_t s = 0; s < std::max<std::size_t>(steps, 1); ++s) {
        SpectralField next = stepper.step(u, h);
        const double n = lhat_norm(next, r);
        if (!std::isfinite(n) || n > ceiling) {
          std::ostringstream msg;
          msg << "numerical blowup in reference stepper near t = " << t + h;
          throw NumericalBlowup(msg.str(), t, u);
        }
        u = std::move(next);
        t += h;
      }
      t = target;
    }
    if (sink) sink(target, u);
  }
}

TimeTrace reference_solve(const SpectralField& u0, double t0, const NonlinearityG& g,
                          const SolverConfig& cfg) {
  const auto times = solver_times(cfg);
  const std::size_t anchor = anchor_index(times, t0);
  std::vector<std::optional<SpectralField>> slots(times.size());
  std::size_t cursor = anchor;
  const TraceSink forward = [&](double, const SpectralField& u) { slots[cursor++] = u; };
  reference_stream(u0, t0, std::span<const double>(times).subspan(anchor), g, cfg, forward);
  if (anchor > 0) {
    std::vector<double> back(times.begin(), times.begin() + static_cast<long>(anchor));
    std::reverse(back.begin(), back.end());
    cursor = anchor - 1;
    const TraceSink backward = [&](double, const SpectralField& u) { slots[cursor--] = u; };
    reference_stream(u0, t0, back, g, cfg, backward);
  }
  std::vector<SpectralField> fields;
  fields.reserve(times.size());
  for (auto& s : slots) fields.push_back(std::move(*s));
  return TimeTrace(times, std::move(fields));
}

}  // namespace gkdv
