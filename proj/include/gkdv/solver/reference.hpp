#pragma once

#include <span>

#include "gkdv/solver/picard.hpp"

namespace gkdv {

/// Integrating-factor RK4 (Lawson) for  u_t + u_xxx = mu d_x G(u)  on the
/// Fourier side: with w = e^{-i t xi^3} u-hat the linear part is exact and
/// the dealiased nonlinearity is stepped with classical RK4.
class LawsonStepper {
 public:
  LawsonStepper(const Grid1D& grid, const NonlinearityG& g, std::size_t rho);

  /// Advances u by h (h may be negative).
  SpectralField step(const SpectralField& u, double h);

 private:
  SpectralField rhs(const SpectralField& u) const;
  SpectralField phase(const SpectralField& u) const;
  void prepare(double h);

  Grid1D grid_;
  NonlinearityG g_;
  std::size_t rho_;
  double cached_h_ = 0.0;
  std::vector<Complex> half_;
};

/// Solves from (t0, u0) and hands u(t) to `sink` at every output time. Output
/// times must all lie on one side of t0 and be ordered away from it. Each gap
/// is covered by ceil(gap / cfg.reference_step) equal steps.
/// Throws NumericalBlowup when the critical norm exceeds cfg.blowup_factor
/// times its initial value or stops being finite.
void reference_stream(const SpectralField& u0, double t0, std::span<const double> output_times,
                      const NonlinearityG& g, const SolverConfig& cfg, const TraceSink& sink);

/// Reference solution on the sample times of cfg (both sides of t0).
TimeTrace reference_solve(const SpectralField& u0, double t0, const NonlinearityG& g,
                          const SolverConfig& cfg);

}  // namespace gkdv
