#include "gkdv/spectral/littlewood_paley.hpp"

#include <cmath>

namespace gkdv {
namespace {

// chi = 1 on |xi| <= 1, 0 on |xi| >= 2.
double cutoff(double xi) { return smooth_step(2.0 - std::abs(xi)); }

}  // namespace

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double dyadic_bump(double xi) { return cutoff(xi) - cutoff(2.0 * xi); }

SpectralField littlewood_paley_block(const SpectralField& field, int k) {
  const double scale = std::ldexp(1.0, -k);
  return apply_multiplier(field, [scale](double xi) { return Complex(dyadic_bump(xi * scale)); });
}

std::pair<int, int> dyadic_range(const Grid1D& grid) {
  const int lo = static_cast<int>(std::floor(std::log2(grid.dxi())));
  const int hi = static_cast<int>(std::ceil(std::log2(grid.size() / 2 * grid.dxi())));
  return {lo, hi};
}

}  // namespace gkdv
