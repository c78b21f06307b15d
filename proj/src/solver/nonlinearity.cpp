#include "gkdv/solver/nonlinearity.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gkdv {

NonlinearityG NonlinearityG::power(double alpha, double mu) {
  NonlinearityG g;
  g.alpha = alpha;
  g.mu = mu;
  g.rule = NonlinearityRule::power;
  return g;
}

double NonlinearityG::operator()(double z) const {
  if (rule == NonlinearityRule::custom) return custom(z);
  if (z == 0.0) return 0.0;
  return std::pow(std::abs(z), alpha - 1.0) * z;
}

double NonlinearityG::derivative(double z) const {
  if (rule == NonlinearityRule::custom) {
    if (custom_derivative) return custom_derivative(z);
    const double h = 1e-5 * std::max(std::abs(z), 1.0);
    return (custom(z + h) - custom(z - h)) / (2.0 * h);
  }
  if (z == 0.0) return alpha > 1.0 ? 0.0 : 1.0;
  return alpha * std::pow(std::abs(z), alpha - 1.0);
}

double NonlinearityG::potential(double z) const {
  if (rule == NonlinearityRule::power) return std::pow(std::abs(z), alpha + 1.0) / (alpha + 1.0);
  // Composite Simpson on [0, z].
  const int n = 64;
  const double h = z / n;
  double sum = custom(0.0) + custom(z);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * custom(i * h);
  return sum * h / 3.0;
}

bool NonlinearityG::in_wellposedness_range() const {
  return alpha > 21.0 / 5.0 && alpha < 23.0 / 3.0;
}

void validate(const NonlinearityG& g, bool exploratory, std::vector<std::string>* warnings) {
  if (!(g.alpha > 1.0)) {
    throw std::invalid_argument("nonlinearity exponent alpha must exceed 1, got " +
                                std::to_string(g.alpha));
  }
  if (g.rule == NonlinearityRule::custom && !g.custom) {
    throw std::invalid_argument("custom nonlinearity needs a callable G");
  }
  if (!g.in_wellposedness_range()) {
    std::ostringstream msg;
    msg << "alpha = " << g.alpha << " lies outside the well-posedness range (21/5, 23/3)";
    if (!exploratory) throw std::invalid_argument(msg.str());
    if (warnings) warnings->push_back(msg.str() + "; exploratory run");
  }
}

SpectralField resample(const SpectralField& u, std::size_t points) {
  const Grid1D& from = u.grid();
  const Grid1D to(from.half_length(), points);
  std::vector<Complex> c(points);
  const long half_from = static_cast<long>(from.size() / 2);
  const long half_to = static_cast<long>(points / 2);
  if (points >= from.size()) {
    for (long k = -half_from + 1; k < half_from; ++k) c[to.index_of_mode(k)] = u.at_mode(k);
    const Complex ny = u[from.nyquist_index()];
    if (points == from.size()) {
      c[to.nyquist_index()] = ny;
    } else if (u.is_real()) {
      c[to.index_of_mode(-half_from)] = 0.5 * ny;
      c[to.index_of_mode(half_from)] = 0.5 * ny;
    } else {
      c[to.index_of_mode(-half_from)] = ny;
    }
  } else {
    for (long k = -half_to; k < half_to; ++k) c[to.index_of_mode(k)] = u.at_mode(k);
    if (u.is_real()) {
      c[to.nyquist_index()] = 0.5 * (u.at_mode(-half_to) + u.at_mode(half_to));
    }
  }
  return SpectralField(to, std::move(c), u.is_real());
}

std::vector<double> padded_samples(const SpectralField& u, std::size_t rho) {
  if (rho < 1) throw std::invalid_argument("padding factor must be >= 1");
  return real_samples(resample(u, u.size() * rho));
}

SpectralField nonlinearity(const SpectralField& u, const NonlinearityG& g, std::size_t rho) {
  if (!u.is_real()) throw std::invalid_argument("nonlinearity requires a real-valued field");
  if (rho < 1) throw std::invalid_argument("padding factor must be >= 1");
  const SpectralField fine = resample(u, u.size() * rho);
  std::vector<double> samples = real_samples(fine);
  for (double& v : samples) v = g(v);
  const SpectralField image = forward_transform(std::span<const double>(samples), fine.grid());
  return resample(image, u.size());
}

}  // namespace gkdv
