#include "gkdv/spectral/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gkdv/spectral/littlewood_paley.hpp"

namespace gkdv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_exponent(double r, const char* what) {
  if (!(r >= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in [1, inf], got " << r;
    throw std::invalid_argument(msg.str());
  }
}

std::vector<double> magnitudes(std::span<const Complex> c) {
  std::vector<double> out(c.size());
  std::transform(c.begin(), c.end(), out.begin(), [](Complex z) { return std::abs(z); });
  return out;
}

struct Visitor {
  const SpectralField& f;
  double operator()(const norm_spec::LHat& n) const { return lhat_norm(f, n.r); }
  double operator()(const norm_spec::Sobolev& n) const { return sobolev_norm(f, n.s); }
  double operator()(const norm_spec::Besov& n) const { return besov_norm(f, n.s, n.q); }
  double operator()(const norm_spec::Weighted& n) const { return weighted_norm(f, n.s); }
  double operator()(const norm_spec::Lebesgue& n) const { return lebesgue_norm(f, n.p); }
};

}  // namespace

double conjugate_exponent(double r) {
  if (r == 1.0) return kInf;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

double weighted_lp(std::span<const double> v, double weight, double p) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return 0.0;
  if (std::isinf(p)) return peak;
  double sum = 0.0;
  for (double x : v) sum += std::pow(std::abs(x) / peak, p);
  return peak * std::pow(weight * sum, 1.0 / p);
}

std::string describe(const NormSpec& spec) {
  std::ostringstream out;
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, norm_spec::LHat>) out << "lhat(" << n.r << ")";
        if constexpr (std::is_same_v<T, norm_spec::Sobolev>) out << "sobolev(" << n.s << ")";
        if constexpr (std::is_same_v<T, norm_spec::Besov>) out << "besov(" << n.s << "," << n.q << ")";
        if constexpr (std::is_same_v<T, norm_spec::Weighted>) out << "weighted(" << n.s << ")";
        if constexpr (std::is_same_v<T, norm_spec::Lebesgue>) out << "lebesgue(" << n.p << ")";
      },
      spec);
  return out.str();
}

double norm(const SpectralField& field, const NormSpec& spec) {
  return std::visit(Visitor{field}, spec);
}

double lhat_norm(const SpectralField& field, double r) {
  require_exponent(r, "lhat exponent r");
  const auto mags = magnitudes(field.coeffs());
  return weighted_lp(mags, field.grid().dxi(), conjugate_exponent(r));
}

double sobolev_norm(const SpectralField& field, double s) {
  const Grid1D& grid = field.grid();
  std::vector<double> weighted(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (i == grid.zero_index()) continue;
    weighted[i] = std::pow(std::abs(grid.xi(i)), s) * std::abs(field[i]);
  }
  return weighted_lp(weighted, grid.dxi(), 2.0);
}

double besov_norm(const SpectralField& field, double s, double q) {
  require_exponent(q, "besov summability q");
  const auto [lo, hi] = dyadic_range(field.grid());
  std::vector<double> blocks;
  for (int k = lo; k <= hi; ++k) {
    const double block = lhat_norm(littlewood_paley_block(field, k), 2.0);
    const double weighted = std::pow(2.0, k * s) * block;
    if (!std::isfinite(weighted)) return kInf;
    blocks.push_back(weighted);
  }
  const double value = weighted_lp(blocks, 1.0, q);
  return std::isfinite(value) ? value : kInf;
}

double weighted_norm(const SpectralField& field, double s) {
  const Grid1D& grid = field.grid();
  const auto samples = inverse_transform(field);
  const double dx = grid.dx();
  std::vector<double> weighted(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double x = std::abs(grid.x(j));
    // For s < 0 the node x = 0 takes the cell average of |x|^{2s}, finite
    // whenever 2s > -1.
    const double w2 = (s < 0.0 && x < 0.5 * dx) ? std::pow(0.5 * dx, 2.0 * s) / (2.0 * s + 1.0)
                                                : std::pow(x, 2.0 * s);
    weighted[j] = std::sqrt(w2) * std::abs(samples[j]);
  }
  return weighted_lp(weighted, dx, 2.0);
}

double lebesgue_norm(const SpectralField& field, double p) {
  require_exponent(p, "lebesgue exponent p");
  const auto samples = inverse_transform(field);
  const auto mags = magnitudes(samples);
  return weighted_lp(mags, field.grid().dx(), p);
}

}  // namespace gkdv
