#pragma once

#include <cstdint>

#include "gkdv/spectral/spectral_field.hpp"

namespace gkdv {

/// Real random field: coefficients at modes 1 <= |k| <= band are independent
/// complex Gaussians with E|c|^2 = (1 + |xi_k|)^{-2 decay}, mirrored to keep
/// Hermitian symmetry. The zero and -N/2 modes are zero. Modes are drawn in
/// order k = 1, 2, ..., so a given (band, seed) produces the same function on
/// any grid with the same half-length that contains the band.
SpectralField random_band_limited(const Grid1D& grid, double decay, std::size_t band,
                                  std::uint64_t seed);

/// Per-sample seed derived from a master seed (splitmix64 finalizer), so
/// ensembles do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace gkdv
