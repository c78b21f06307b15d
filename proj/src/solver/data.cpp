#include "gkdv/solver/data.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gkdv/solver/conservation.hpp"

namespace gkdv {

SpectralField gaussian_datum(const Grid1D& grid, double amp, double center, double width) {
  return sample_real(grid, [=](double x) {
    const double y = (x - center) / width;
    return amp * std::exp(-0.5 * y * y);
  });
}

SpectralField soliton_datum(const Grid1D& grid, double alpha, double speed, double center) {
  if (!(speed > 0.0) || !(alpha > 1.0)) throw std::invalid_argument("soliton needs speed > 0 and alpha > 1");
  const double amp = 0.5 * (alpha + 1.0) * speed;
  const double k = 0.5 * (alpha - 1.0) * std::sqrt(speed);
  return sample_real(grid, [=](double x) {
    const double sech = 1.0 / std::cosh(k * (x - center));
    return std::pow(amp * sech * sech, 1.0 / (alpha - 1.0));
  });
}

double energy_threshold_amplitude(const SpectralField& shape, const NonlinearityG& g, double lo,
                                  double hi, double rel_tol) {
  if (!(energy(shape * lo, g) > 0.0) || !(energy(shape * hi, g) <= 0.0)) {
    throw std::invalid_argument("energy threshold bisection needs E(lo) > 0 >= E(hi)");
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (energy(shape * mid, g) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

SpectralField scaling_transform(const SpectralField& u0, double lambda, double alpha) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaling factor lambda must be positive");
  if (!(alpha > 1.0)) throw std::invalid_argument("scaling needs alpha > 1");
  const Grid1D& g = u0.grid();
  const double boundary = boundary_mass_fraction(u0);
  double total = 0.0;
  double tail = 0.0;
  const double cut = 0.9 * static_cast<double>(g.size() / 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double m = std::norm(u0[i]);
    total += m;
    if (std::abs(static_cast<double>(g.mode(i))) > cut) tail += m;
  }
  const double spectral = total > 0.0 ? tail / total : 0.0;
  if (boundary > 1e-6 || spectral > 1e-6) {
    std::ostringstream msg;
    msg << "datum under-resolved for rescaling: boundary mass " << boundary << ", spectral tail "
        << spectral;
    throw std::invalid_argument(msg.str());
  }
  // Index k carries xi_k on the old grid and lambda xi_k on the new one, so
  // f-hat_lambda(lambda xi) = lambda^{2/(alpha-1) - 1} f-hat(xi) is a pure rescale.
  const double factor = std::pow(lambda, 2.0 / (alpha - 1.0) - 1.0);
  std::vector<Complex> c(u0.coeffs().begin(), u0.coeffs().end());
  for (auto& z : c) z *= factor;
  return SpectralField(Grid1D(g.half_length() / lambda, g.size()), std::move(c), u0.is_real());
}

}  // namespace gkdv
