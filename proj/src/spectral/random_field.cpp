#include "gkdv/spectral/random_field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace gkdv {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SpectralField random_band_limited(const Grid1D& grid, double decay, std::size_t band,
                                  std::uint64_t seed) {
  const std::size_t half = grid.size() / 2;
  if (band > half) {
    throw std::invalid_argument("band " + std::to_string(band) + " exceeds N/2 = " +
                                std::to_string(half));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> coeffs(grid.size());
  const std::size_t zero = grid.zero_index();
  for (std::size_t k = 1; k <= band && k < half; ++k) {
    const double xi = static_cast<double>(k) * grid.dxi();
    const double sd = std::isinf(decay) ? (k == 1 ? 1.0 : 0.0) : std::pow(1.0 + xi, -decay);
    const double re = normal(rng);
    const double im = normal(rng);
    const Complex c = sd * std::sqrt(0.5) * Complex(re, im);
    coeffs[zero + k] = c;
    coeffs[zero - k] = std::conj(c);
  }
  return SpectralField(grid, std::move(coeffs), true);
}

}  // namespace gkdv
