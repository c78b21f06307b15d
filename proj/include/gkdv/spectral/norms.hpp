#pragma once

#include <string>
#include <variant>

#include "gkdv/spectral/spectral_field.hpp"

namespace gkdv {

/// Hoelder conjugate r' = r / (r - 1), with 1' = inf and inf' = 1.
double conjugate_exponent(double r);

namespace norm_spec {
/// Fourier-Lebesgue: ||f||_{L^r-hat} = ||f-hat||_{L^{r'}}.
struct LHat {
  double r;
};
/// Homogeneous Sobolev ||xi|^s f-hat||_{L^2}, zero mode dropped.
struct Sobolev {
  double s;
};
/// Homogeneous Besov B^s_{2,q} over the dyadic blocks of littlewood_paley_block.
struct Besov {
  double s;
  double q;
};
/// Weighted L^2: ||x|^s f||_{L^2}. For s < 0 the node x = 0 carries the cell
/// average of |x|^{2s}.
struct Weighted {
  double s;
};
/// Physical-space L^p.
struct Lebesgue {
  double p;
};
}  // namespace norm_spec

using NormSpec = std::variant<norm_spec::LHat, norm_spec::Sobolev, norm_spec::Besov,
                              norm_spec::Weighted, norm_spec::Lebesgue>;

std::string describe(const NormSpec& spec);

/// Quadrature value of the requested norm. Discrete sums carry the dx / dxi
/// weights so the values approximate continuum norms.
double norm(const SpectralField& field, const NormSpec& spec);

double lhat_norm(const SpectralField& field, double r);
double sobolev_norm(const SpectralField& field, double s);
double besov_norm(const SpectralField& field, double s, double q);
double weighted_norm(const SpectralField& field, double s);
double lebesgue_norm(const SpectralField& field, double p);

/// Weighted l^p sum (sum_i w |v_i|^p)^{1/p} with p = inf giving max |v_i|;
/// rescaled by the maximum so large exponents neither overflow nor underflow.
double weighted_lp(std::span<const double> magnitudes, double weight, double p);

}  // namespace gkdv
