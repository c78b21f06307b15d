#pragma once

#include <span>
#include <vector>

#include "gkdv/spacetime/time_trace.hpp"

namespace gkdv {

/// Duhamel integral
///
///   I(t) = int_{t0}^{t} exp(-(t - t') d_x^3) F(t') dt',   t0 = times[anchor],
///
/// evaluated mode by mode at every sample time. The phase exp(i (t - t') xi^3)
/// is integrated exactly against the piecewise-linear interpolant of the
/// sampled history F (a product trapezoid rule), so the error depends only on
/// the smoothness of F in time. Samples before the anchor integrate backwards.
/// For real histories the unpaired -N/2 mode of the result is set to zero.
std::vector<SpectralField> retarded_integral(std::span<const double> times,
                                             std::span<const SpectralField> forcing,
                                             std::size_t anchor = 0);

TimeTrace retarded_integral(const TimeTrace& forcing, std::size_t anchor = 0);

}  // namespace gkdv
