#include "gkdv/spacetime/retarded.hpp"

#include <cmath>
#include <stdexcept>

namespace gkdv {
namespace {

struct StepWeights {
  Complex phase;  // exp(z)
  Complex w0;     // int_0^h e^{i w tau} d tau
  Complex w1;     // (1/h) int_0^h tau e^{i w tau} d tau
};

// z = i omega h; uses the Taylor series near z = 0 where the closed forms cancel.
StepWeights step_weights(double omega, double h) {
  const Complex z(0.0, omega * h);
  const Complex ez = std::exp(z);
  if (std::abs(z) < 0.1) {
    Complex a(0.0), b(0.0), zn(1.0);
    double fact = 1.0;  // (n+1)!
    for (int n = 0; n < 10; ++n) {
      fact *= (n + 1);
      a += zn / fact;
      b += zn * (static_cast<double>(n + 1) / (fact * (n + 2)));
      zn *= z;
    }
    return {ez, h * a, h * b};
  }
  return {ez, h * (ez - 1.0) / z, h * (ez * (z - 1.0) + 1.0) / (z * z)};
}

}  // namespace

std::vector<SpectralField> retarded_integral(std::span<const double> times,
                                             std::span<const SpectralField> forcing,
                                             std::size_t anchor) {
  const std::size_t m = times.size();
  if (forcing.size() != m || m == 0) throw std::invalid_argument("one forcing sample per time needed");
  if (anchor >= m) throw std::invalid_argument("anchor index outside the trace");
  const Grid1D& grid = forcing.front().grid();
  const std::size_t n = grid.size();
  bool real = true;
  for (const auto& f : forcing) {
    if (!(f.grid() == grid)) throw std::invalid_argument("forcing samples on different grids");
    real = real && f.is_real();
  }

  std::vector<std::vector<Complex>> out(m, std::vector<Complex>(n));
  std::vector<double> omega(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = grid.xi(k);
    omega[k] = xi * xi * xi;
  }

  auto sweep = [&](std::size_t from, std::size_t to) {
    const double h = times[to] - times[from];
    // I(t_to) = e^{i w h} I(t_from) + F_to w0 + (F_from - F_to) w1
    for (std::size_t k = 0; k < n; ++k) {
      const StepWeights sw = step_weights(omega[k], h);
      const Complex f0 = forcing[from][k];
      const Complex f1 = forcing[to][k];
      out[to][k] = sw.phase * out[from][k] + f1 * sw.w0 + (f0 - f1) * sw.w1;
    }
  };
  for (std::size_t i = anchor; i + 1 < m; ++i) sweep(i, i + 1);
  for (std::size_t i = anchor; i > 0; --i) sweep(i, i - 1);

  std::vector<SpectralField> fields;
  fields.reserve(m);
  for (auto& c : out) {
    if (real) c[grid.nyquist_index()] = 0.0;
    fields.emplace_back(grid, std::move(c), real);
  }
  return fields;
}

TimeTrace retarded_integral(const TimeTrace& forcing, std::size_t anchor) {
  std::vector<double> t(forcing.times().begin(), forcing.times().end());
  auto fields = retarded_integral(forcing.times(), forcing.fields(), anchor);
  return TimeTrace(std::move(t), std::move(fields));
}

}  // namespace gkdv
