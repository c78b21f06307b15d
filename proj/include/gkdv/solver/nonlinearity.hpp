#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gkdv/spectral/spectral_field.hpp"

namespace gkdv {

enum class NonlinearityRule { power, custom };

/// G in  u_t + u_xxx = mu d_x G(u).  The power rule is G(z) = |z|^{alpha-1} z;
/// a custom rule supplies G (and optionally G') as callables.
struct NonlinearityG {
  double alpha = 5.0;
  double mu = 1.0;
  NonlinearityRule rule = NonlinearityRule::power;
  std::function<double(double)> custom;
  std::function<double(double)> custom_derivative;
  std::string name = "power";

  static NonlinearityG power(double alpha, double mu);

  double operator()(double z) const;
  /// G'(z): analytic for the power rule, central difference for custom G
  /// without a supplied derivative.
  double derivative(double z) const;
  /// Antiderivative F(z) = int_0^z G; closed form for the power rule.
  double potential(double z) const;

  /// 21/5 < alpha < 23/3.
  bool in_wellposedness_range() const;
};

/// Throws std::invalid_argument when alpha <= 1 or a custom rule lacks G.
/// Outside the well-posedness range the call throws unless `exploratory`, in
/// which case a warning is appended instead.
void validate(const NonlinearityG& g, bool exploratory, std::vector<std::string>* warnings = nullptr);

/// Same function on a grid with the same half-length and `points` points:
/// zero padding when refining, band truncation when coarsening. A real
/// field's unpaired -N/2 coefficient is split evenly between +-N/2.
SpectralField resample(const SpectralField& u, std::size_t points);

/// G(u): u is interpolated spectrally to a rho-times finer grid, G is applied
/// pointwise there and the result is truncated back to the band of u.
SpectralField nonlinearity(const SpectralField& u, const NonlinearityG& g, std::size_t rho = 2);

/// Physical samples of u on the rho-times refined grid.
std::vector<double> padded_samples(const SpectralField& u, std::size_t rho);

}  // namespace gkdv
