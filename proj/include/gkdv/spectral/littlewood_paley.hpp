#pragma once

#include <utility>

#include "gkdv/spectral/spectral_field.hpp"

namespace gkdv {

/// C-infinity step, 0 for x <= 0 and 1 for x >= 1:
/// e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}).
double smooth_step(double x);

/// Dyadic bump phi(xi) = chi(xi) - chi(2 xi), where chi = 1 on |xi| <= 1 and
/// chi = 0 on |xi| >= 2 with a smooth_step transition. Supported in
/// 1/2 < |xi| < 2; sum_k phi(xi / 2^k) = 1 for xi != 0.
double dyadic_bump(double xi);

/// Block f -> phi(D / 2^k) f.
SpectralField littlewood_paley_block(const SpectralField& field, int k);

/// Smallest and largest k whose blocks together cover every nonzero lattice
/// frequency of the grid.
std::pair<int, int> dyadic_range(const Grid1D& grid);

}  // namespace gkdv
