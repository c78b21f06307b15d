#include "gkdv/estimates/counterexample.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gkdv/spectral/norms.hpp"

namespace gkdv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inv_conj(double r) { return std::isinf(r) ? 1.0 : 1.0 - 1.0 / r; }

/// int_{a}^{b} u^{-k} du
double log_power_integral(double a, double b, double k) {
  if (std::abs(1.0 - k) < 1e-14) return std::log(b / a);
  return (std::pow(b, 1.0 - k) - std::pow(a, 1.0 - k)) / (1.0 - k);
}

}  // namespace

SpectralField counterexample_field(CounterexampleFamily family, double r, long n, double p, const Grid1D& grid) {
  std::vector<Complex> c(grid.size());
  const std::size_t zero = grid.zero_index();
  const double dxi = grid.dxi();
  const double half = static_cast<double>(grid.size() / 2);
  if (family == CounterexampleFamily::f_n) {
    const auto lo = static_cast<long>(std::ceil(n / dxi - 1e-9));
    const auto hi = static_cast<long>(std::ceil((n + 1) / dxi - 1e-9));
    if (hi >= half) throw std::invalid_argument("grid too coarse for f_n with n = " + std::to_string(n));
    for (long k = lo; k < hi; ++k) c[zero + k] = 1.0;
  } else {
    const auto lo = static_cast<long>(std::ceil(1.0 / (n * dxi) - 1e-9));
    const auto hi = static_cast<long>(std::floor(0.5 / dxi + 1e-9));
    if (lo < 1 || hi >= half) throw std::invalid_argument("grid cannot hold g_n with n = " + std::to_string(n));
    const double a = inv_conj(r);
    for (long k = lo; k <= hi; ++k) {
      const double xi = k * dxi;
      c[zero + k] = std::pow(xi, -a) * std::pow(std::abs(std::log(xi)), -p);
    }
  }
  return SpectralField(grid, std::move(c), false);
}

CounterexampleTable counterexample_table(const estimate::Counterexample& spec, std::size_t m) {
  const auto resolved = std::get<estimate::Counterexample>(resolve_estimate(spec));
  CounterexampleTable out;
  out.family = resolved.family;
  out.r = resolved.r;
  const double sob = 0.5 - (std::isinf(out.r) ? 0.0 : 1.0 / out.r);
  const double a = inv_conj(out.r);
  const double rc = 1.0 / a;
  const long n_max = *std::max_element(resolved.n.begin(), resolved.n.end());

  double dxi = 0.0;
  std::size_t points = 0;
  if (out.family == CounterexampleFamily::f_n) {
    if (m == 0) m = 16;
    dxi = 1.0 / static_cast<double>(m);
    points = std::bit_ceil(static_cast<std::size_t>(2 * (n_max + 2) * m));
    out.sobolev_limit = kInf;
  } else {
    if (m == 0) m = 64;
    out.p = *resolved.p;
    dxi = 1.0 / static_cast<double>(n_max * m);
    points = std::bit_ceil(static_cast<std::size_t>(n_max * m + 4));
    out.sobolev_limit = std::sqrt(std::pow(std::log(2.0), 1.0 - 2.0 * out.p) / (2.0 * out.p - 1.0));
  }
  const Grid1D grid(std::numbers::pi / dxi, points);
  out.dxi = grid.dxi();
  out.points = points;

  for (long n : resolved.n) {
    const auto f = counterexample_field(out.family, out.r, n, out.p, grid);
    CounterexampleRow row;
    row.n = n;
    row.lhat = lhat_norm(f, out.r);
    row.sobolev = sobolev_norm(f, sob);
    if (out.family == CounterexampleFamily::f_n) {
      const double e = 2.0 * sob + 1.0;
      row.lhat_exact = 1.0;
      row.sobolev_exact = std::sqrt((std::pow(n + 1.0, e) - std::pow(static_cast<double>(n), e)) / e);
    } else {
      const double l2 = std::log(2.0), ln = std::log(static_cast<double>(n));
      row.sobolev_exact = std::sqrt(log_power_integral(l2, ln, 2.0 * out.p));
      row.lhat_exact = std::pow(log_power_integral(l2, ln, out.p * rc), a);
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace gkdv
