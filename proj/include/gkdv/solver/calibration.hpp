#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gkdv/solver/picard.hpp"

namespace gkdv {

struct CalibrationConfig {
  double half_length = 64.0;
  std::size_t points = 256;
  double alpha = 5.0;
  double t_end = 1.0;
  double samples_per_unit = 128.0;
  /// Contraction factors must stay at or below this value.
  double factor_limit = 0.5;
  std::size_t bisection_steps = 14;
  std::size_t max_iterations = 40;
  std::uint64_t seed = 1;
  /// Band-limited random data added to the Gaussian family.
  std::size_t random_data = 2;
};

struct CalibrationSample {
  std::string datum;
  double mu = 0.0;
  /// Largest amplitude found whose Picard iteration contracts with factor <= limit.
  double amplitude = 0.0;
  double epsilon = 0.0;
  double max_factor = 0.0;
};

struct CalibrationResult {
  double delta = 0.0;
  std::vector<CalibrationSample> samples;
};

/// Largest smallness functional epsilon at which measured Picard contraction
/// factors stay <= factor_limit across a calibration ensemble (Gaussians of
/// widths 1/2, 1, 2 and windowed random data, mu = +-1), by bisection on the
/// amplitude of each datum. delta is the minimum over the ensemble.
CalibrationResult calibrate_delta(const CalibrationConfig& cfg);

}  // namespace gkdv
