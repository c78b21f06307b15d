#include "gkdv/solver/conservation.hpp"

#include <cmath>

#include "gkdv/spectral/norms.hpp"

namespace gkdv {
namespace {

struct EnergyParts {
  double kinetic;
  double potential;
  double potential_abs;
};

EnergyParts energy_parts(const SpectralField& u, const NonlinearityG& g, std::size_t rho) {
  const double ux = lhat_norm(derivative(u), 2.0);
  const auto samples = padded_samples(u, rho);
  const double dx = u.grid().dx() / static_cast<double>(rho);
  double pot = 0.0;
  double pot_abs = 0.0;
  for (double v : samples) {
    const double f = g.potential(v);
    pot += f;
    pot_abs += std::abs(f);
  }
  return {0.5 * ux * ux, g.mu * pot * dx, std::abs(g.mu) * pot_abs * dx};
}

}  // namespace

double mass(const SpectralField& u) {
  const double n = lebesgue_norm(u, 2.0);
  return n * n;
}

double energy(const SpectralField& u, const NonlinearityG& g, std::size_t rho) {
  const auto e = energy_parts(u, g, rho);
  return e.kinetic + e.potential;
}

double energy_scale(const SpectralField& u, const NonlinearityG& g, std::size_t rho) {
  const auto e = energy_parts(u, g, rho);
  return e.kinetic + e.potential_abs;
}

double boundary_mass_fraction(const SpectralField& u, double fraction) {
  const auto z = inverse_transform(u);
  const Grid1D& grid = u.grid();
  const double cut = fraction * grid.half_length();
  double outer = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double m = std::norm(z[j]);
    total += m;
    if (std::abs(grid.x(j)) > cut) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace gkdv
