#include "gkdv/estimates/lip_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gkdv {

double g_derivative(const NonlinearityG& g, int j, double z) {
  if (j < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (j == 0) return g(z);
  if (g.rule == NonlinearityRule::power) {
    double coeff = 1.0;
    for (int k = 0; k < j; ++k) coeff *= g.alpha - k;
    if (z == 0.0) return (g.alpha - j > 0.0 || coeff == 0.0) ? 0.0 : coeff * INFINITY;
    // d/dz sign(z)|z|^a = a |z|^{a-1} and d/dz |z|^a = a sign(z) |z|^{a-1}.
    const double sign = (j % 2 == 1 || z > 0.0) ? 1.0 : -1.0;
    return coeff * std::pow(std::abs(z), g.alpha - j) * sign;
  }
  if (j == 1) return g.derivative(z);
  const double h = std::pow(10.0, -16.0 / (j + 2)) * std::max(std::abs(z), 1.0);
  double sum = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= j; ++k) {
    sum += ((k % 2) ? -binom : binom) * g(z + (0.5 * j - k) * h);
    binom = binom * (j - k) / (k + 1);
  }
  return sum / std::pow(h, j);
}

LipNormEstimate lip_norm_estimate(const NonlinearityG& g, double mu, double z_max, std::size_t samples) {
  if (!(mu > 0.0)) throw std::invalid_argument("Lip-mu norm requires mu > 0");
  if (!(z_max > 0.0)) throw std::invalid_argument("Lip-mu norm requires z_max > 0");
  if (samples < 2) throw std::invalid_argument("Lip-mu norm requires at least 2 samples");
  const int order = static_cast<int>(std::ceil(mu)) - 1;
  const double beta = mu - order;

  LipNormEstimate out;
  out.z_min = z_max / static_cast<double>(samples);
  std::vector<double> zs;
  const double ratio = std::log(z_max / out.z_min) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = out.z_min * std::exp(ratio * static_cast<double>(i));
    zs.push_back(z);
    zs.push_back(-z);
  }
  std::sort(zs.begin(), zs.end());

  out.derivative_terms.assign(order + 1, 0.0);
  std::vector<double> top(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double z = zs[i];
    for (int j = 0; j <= order; ++j) {
      const double d = g_derivative(g, j, z);
      if (!std::isfinite(d)) throw std::invalid_argument("G or a derivative is not finite at z = " + std::to_string(z));
      out.derivative_terms[j] = std::max(out.derivative_terms[j], std::abs(d) / std::pow(std::abs(z), mu - j));
      if (j == order) top[i] = d;
    }
  }
  for (std::size_t a = 0; a + 1 < zs.size(); ++a) {
    out.holder_term = std::max(out.holder_term, std::abs(top[a + 1] - top[a]) / std::pow(zs[a + 1] - zs[a], beta));
  }
  const std::size_t stride = std::max<std::size_t>(1, zs.size() / 256);
  for (std::size_t a = 0; a < zs.size(); a += stride) {
    for (std::size_t b = a + 1; b < zs.size(); b += stride) {
      out.holder_term = std::max(out.holder_term, std::abs(top[a] - top[b]) / std::pow(std::abs(zs[a] - zs[b]), beta));
    }
  }
  out.value = out.holder_term;
  for (double t : out.derivative_terms) out.value += t;
  return out;
}

}  // namespace gkdv
