#pragma once

#include "gkdv/solver/nonlinearity.hpp"
#include "gkdv/spectral/spectral_field.hpp"

namespace gkdv {

/// M[u] = ||u||_{L^2}^2.
double mass(const SpectralField& u);

/// E[u] = 1/2 ||u_x||^2_{L^2} + mu int F(u) dx with F' = G, i.e.
/// mu/(alpha+1) ||u||^{alpha+1}_{L^{alpha+1}} for the power rule. The
/// potential term is integrated on the rho-times refined grid.
double energy(const SpectralField& u, const NonlinearityG& g, std::size_t rho = 2);

/// 1/2 ||u_x||^2 + |mu| int |F(u)|: the scale against which energy drift is
/// measured (E itself may vanish).
double energy_scale(const SpectralField& u, const NonlinearityG& g, std::size_t rho = 2);

/// Fraction of the L^2 mass in |x| > fraction * L.
double boundary_mass_fraction(const SpectralField& u, double fraction = 0.9);

}  // namespace gkdv
