#pragma once

#include <functional>

#include "gkdv/solver/nonlinearity.hpp"
#include "gkdv/spectral/spectral_field.hpp"

namespace gkdv {

/// amp * exp(-(x - center)^2 / (2 width^2)).
SpectralField gaussian_datum(const Grid1D& grid, double amp, double center = 0.0, double width = 1.0);

/// Travelling-wave profile of u_t + u_xxx + d_x(|u|^{alpha-1} u) = 0 (the
/// focusing case mu = -1) with speed c:
///   Q_c(x) = ((alpha+1) c / 2 * sech^2((alpha-1) sqrt(c) x / 2))^{1/(alpha-1)}.
SpectralField soliton_datum(const Grid1D& grid, double alpha, double speed, double center = 0.0);

/// Smallest amplitude a in [lo, hi] (to rel. tolerance) with E[a * shape] <= 0,
/// found by bisection. Requires E[lo * shape] > 0 >= E[hi * shape].
double energy_threshold_amplitude(const SpectralField& shape, const NonlinearityG& g, double lo,
                                  double hi, double rel_tol = 1e-12);

/// lambda^{2/(alpha-1)} u0(lambda x) on the grid (L / lambda, N). Throws when
/// more than 1e-6 of the mass sits near the boundary (|x| > 0.9 L) or in the
/// top tenth of the frequency band.
SpectralField scaling_transform(const SpectralField& u0, double lambda, double alpha);

}  // namespace gkdv
