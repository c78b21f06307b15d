#include "gkdv/spectral/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gkdv {

Grid1D::Grid1D(double half_length, std::size_t points)
    : half_length_(half_length),
      points_(points),
      dx_(2.0 * half_length / static_cast<double>(points)),
      dxi_(std::numbers::pi / half_length) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw std::invalid_argument("grid half-length must be positive and finite, got " +
                                std::to_string(half_length));
  }
  if (points < 8 || points % 2 != 0) {
    throw std::invalid_argument("grid point count must be even and >= 8, got " +
                                std::to_string(points));
  }
}

std::size_t Grid1D::index_of_mode(long k) const {
  const long half = static_cast<long>(points_ / 2);
  if (k < -half || k >= half) {
    throw std::out_of_range("mode " + std::to_string(k) + " outside the frequency lattice");
  }
  return static_cast<std::size_t>(k + half);
}

std::vector<double> Grid1D::positions() const {
  std::vector<double> out(points_);
  for (std::size_t j = 0; j < points_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid1D::frequencies() const {
  std::vector<double> out(points_);
  for (std::size_t i = 0; i < points_; ++i) out[i] = xi(i);
  return out;
}

Grid1D make_grid(double half_length, std::int64_t points) {
  if (points < 8 || points % 2 != 0) {
    throw std::invalid_argument("grid point count must be even and >= 8, got " +
                                std::to_string(points));
  }
  return Grid1D(half_length, static_cast<std::size_t>(points));
}

}  // namespace gkdv
