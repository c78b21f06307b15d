#pragma once

#include <span>
#include <vector>

#include "gkdv/spacetime/time_trace.hpp"

namespace gkdv {

/// x_outer: ||f||_{L^p_x L^q_t} (time norm inside); t_outer: ||f||_{L^q_t L^p_x}.
enum class NormOrder { x_outer, t_outer };

/// Mixed space-time norm of |f(t, x)|. Time integrals use the composite
/// trapezoid rule over the stored samples, space sums carry the dx weight and
/// an infinite exponent takes the maximum over the samples.
double mixed_norm(const TimeTrace& trace, double p, double q, NormOrder order = NormOrder::x_outer);

/// Same on precomputed magnitudes: rows[i][j] = |f(times[i], x_j)|.
double mixed_norm(std::span<const double> times, const std::vector<std::vector<double>>& rows,
                  double dx, double p, double q, NormOrder order = NormOrder::x_outer);

/// |(|D_x|^s f)(x_j)| at every grid point.
std::vector<double> physical_magnitudes(const SpectralField& f, double s = 0.0);

/// ||u||_{X(I; s, r)} = || |D_x|^s u ||_{L^{p(s,r)}_x L^{q(s,r)}_t}; (s, r) must be acceptable.
double xnorm(const TimeTrace& trace, double s, double r);
/// ||F||_{Y(I; s, r)} with the dual exponents; (s, r) must be conjugate-acceptable.
double ynorm(const TimeTrace& trace, double s, double r);
/// Scattering norm S(I; r) = X(I; 0, r).
double snorm(const TimeTrace& trace, double r);

/// Streaming x_outer mixed norm: samples arrive one time at a time and the
/// value over [t_first, t_last] is available after every sample.
class MixedNormAccumulator {
 public:
  MixedNormAccumulator(std::size_t points, double dx, double p, double q);

  void add(double t, std::span<const double> magnitudes);
  double value() const;
  std::size_t samples() const { return samples_; }
  double last_time() const { return last_t_; }

 private:
  double dx_, p_, q_;
  std::size_t samples_ = 0;
  double last_t_ = 0.0;
  double scale_ = 0.0;
  std::vector<double> prev_;
  std::vector<double> acc_;
};

/// Streaming X(I; s, r) norm of fields pushed in time order.
class XNormAccumulator {
 public:
  XNormAccumulator(const Grid1D& grid, double s, double r);

  void add(double t, const SpectralField& u);
  double value() const { return acc_.value(); }
  double s() const { return s_; }

 private:
  double s_;
  MixedNormAccumulator acc_;
};

}  // namespace gkdv
