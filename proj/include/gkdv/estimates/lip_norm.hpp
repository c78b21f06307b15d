#pragma once

#include <vector>

#include "gkdv/solver/nonlinearity.hpp"

namespace gkdv {

struct LipNormEstimate {
  /// Sum of the derivative terms and the Hoelder quotient.
  double value = 0.0;
  /// sup |G^(j)(z)| / |z|^{mu-j} over the sampled z, j = 0..N (mu = N + beta, beta in (0, 1]).
  std::vector<double> derivative_terms;
  double holder_term = 0.0;
  /// Smallest |z| sampled: z_max / samples.
  double z_min = 0.0;
};

/// j-th derivative of G: closed form for the power rule, central differences
/// (step 1e-5 max(|z|, 1) for j = 1, 10^{-16/(j+2)} max(|z|, 1) above) otherwise.
double g_derivative(const NonlinearityG& g, int j, double z);

/// Sampled Lip-mu norm of G over `samples` log-spaced |z| in [z_max / samples, z_max]
/// (both signs). Throws std::invalid_argument for mu <= 0 or non-finite G values.
LipNormEstimate lip_norm_estimate(const NonlinearityG& g, double mu, double z_max, std::size_t samples);

}  // namespace gkdv
