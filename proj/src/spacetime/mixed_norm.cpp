#include "gkdv/spacetime/mixed_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gkdv/spacetime/pairs.hpp"
#include "gkdv/spectral/norms.hpp"

namespace gkdv {
namespace {

void require_exponents(double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw std::invalid_argument("mixed norm exponents must lie in [1, inf], got p = " +
                                std::to_string(p) + ", q = " + std::to_string(q));
  }
}

std::vector<double> trapezoid_weights(std::span<const double> t) {
  const std::size_t m = t.size();
  std::vector<double> w(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double h = 0.5 * (t[i + 1] - t[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  return w;
}

// (sum_i w_i v_i^q)^{1/q} for v already scaled into [0, 1].
double weighted_power_sum(std::span<const double> v, std::span<const double> w, double q) {
  if (std::isinf(q)) return *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += w[i] * std::pow(v[i], q);
  return std::pow(sum, 1.0 / q);
}

std::vector<std::vector<double>> magnitude_rows(const TimeTrace& trace, double s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(trace.size());
  for (const auto& f : trace.fields()) rows.push_back(physical_magnitudes(f, s));
  return rows;
}

}  // namespace

std::vector<double> physical_magnitudes(const SpectralField& f, double s) {
  const auto z = inverse_transform(s == 0.0 ? f : riesz_potential(f, s));
  std::vector<double> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = std::abs(z[j]);
  return out;
}

double mixed_norm(std::span<const double> times, const std::vector<std::vector<double>>& rows,
                  double dx, double p, double q, NormOrder order) {
  require_exponents(p, q);
  const std::size_t m = times.size();
  if (rows.size() != m || m == 0) throw std::invalid_argument("one magnitude row per time needed");
  if (m < 2 && !std::isinf(q)) {
    throw std::invalid_argument("time quadrature with q < inf needs at least 2 samples");
  }
  const std::size_t n = rows.front().size();
  double peak = 0.0;
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("ragged magnitude rows");
    for (double v : row) peak = std::max(peak, v);
  }
  if (peak == 0.0) return 0.0;
  if (!std::isfinite(peak)) return peak;

  const auto w = trapezoid_weights(times);
  std::vector<double> column(m);
  if (order == NormOrder::x_outer) {
    std::vector<double> inner(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) column[i] = rows[i][j] / peak;
      inner[j] = weighted_power_sum(column, w, q);
    }
    return peak * weighted_lp(inner, dx, p);
  }
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) scaled[j] = rows[i][j] / peak;
    column[i] = weighted_lp(scaled, dx, p);
  }
  // Spatial norms of values in [0, 1] may exceed 1; rescale once more.
  const double top = *std::max_element(column.begin(), column.end());
  if (top == 0.0) return 0.0;
  for (double& c : column) c /= top;
  return peak * top * weighted_power_sum(column, w, q);
}

double mixed_norm(const TimeTrace& trace, double p, double q, NormOrder order) {
  return mixed_norm(trace.times(), magnitude_rows(trace, 0.0), trace.grid().dx(), p, q, order);
}

double xnorm(const TimeTrace& trace, double s, double r) {
  const PairClass pc = classify_pair(s, r);
  if (!pc.acceptable) {
    throw std::invalid_argument("X norm requires an acceptable pair: " + pc.violation);
  }
  return mixed_norm(trace.times(), magnitude_rows(trace, s), trace.grid().dx(), pc.exponents->p(),
                    pc.exponents->q(), NormOrder::x_outer);
}

double ynorm(const TimeTrace& trace, double s, double r) {
  const PairClass pc = classify_pair(s, r);
  if (!pc.conjugate_acceptable) {
    throw std::invalid_argument("Y norm requires a conjugate-acceptable pair: " +
                                pc.conjugate_violation);
  }
  return mixed_norm(trace.times(), magnitude_rows(trace, s), trace.grid().dx(),
                    pc.dual_exponents->p(), pc.dual_exponents->q(), NormOrder::x_outer);
}

double snorm(const TimeTrace& trace, double r) { return xnorm(trace, 0.0, r); }

MixedNormAccumulator::MixedNormAccumulator(std::size_t points, double dx, double p, double q)
    : dx_(dx), p_(p), q_(q), prev_(points, 0.0), acc_(points, 0.0) {
  require_exponents(p, q);
}

void MixedNormAccumulator::add(double t, std::span<const double> mags) {
  if (mags.size() != acc_.size()) throw std::invalid_argument("sample size mismatch");
  if (samples_ > 0 && !(t > last_t_)) throw std::invalid_argument("sample times must increase");
  const double peak = *std::max_element(mags.begin(), mags.end());
  if (std::isinf(q_)) {
    for (std::size_t j = 0; j < acc_.size(); ++j) acc_[j] = std::max(acc_[j], mags[j]);
  } else {
    if (peak > scale_) {
      if (scale_ > 0.0) {
        const double factor = std::pow(scale_ / peak, q_);
        for (double& a : acc_) a *= factor;
      }
      scale_ = peak;
    }
    if (samples_ > 0 && scale_ > 0.0) {
      const double h = 0.5 * (t - last_t_);
      for (std::size_t j = 0; j < acc_.size(); ++j) {
        acc_[j] += h * (std::pow(prev_[j] / scale_, q_) + std::pow(mags[j] / scale_, q_));
      }
    }
    std::copy(mags.begin(), mags.end(), prev_.begin());
  }
  last_t_ = t;
  ++samples_;
}

double MixedNormAccumulator::value() const {
  if (samples_ == 0) throw std::invalid_argument("no samples accumulated");
  if (std::isinf(q_)) return weighted_lp(acc_, dx_, p_);
  if (samples_ < 2) throw std::invalid_argument("time quadrature with q < inf needs at least 2 samples");
  if (scale_ == 0.0) return 0.0;
  std::vector<double> inner(acc_.size());
  for (std::size_t j = 0; j < acc_.size(); ++j) inner[j] = std::pow(acc_[j], 1.0 / q_);
  return scale_ * weighted_lp(inner, dx_, p_);
}

namespace {

MixedNormAccumulator make_x_accumulator(const Grid1D& grid, double s, double r) {
  const PairClass pc = classify_pair(s, r);
  if (!pc.acceptable) {
    throw std::invalid_argument("X norm requires an acceptable pair: " + pc.violation);
  }
  return MixedNormAccumulator(grid.size(), grid.dx(), pc.exponents->p(), pc.exponents->q());
}

}  // namespace

XNormAccumulator::XNormAccumulator(const Grid1D& grid, double s, double r)
    : s_(s), acc_(make_x_accumulator(grid, s, r)) {}

void XNormAccumulator::add(double t, const SpectralField& u) {
  acc_.add(t, physical_magnitudes(u, s_));
}

}  // namespace gkdv
