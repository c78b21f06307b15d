#pragma once

#include <complex>
#include <span>

namespace gkdv::detail {

/// Unnormalized complex DFTs of length n backed by cached FFTW plans.
/// forward: X_m = sum_j x_j exp(-2 pi i j m / n); backward uses exp(+...).
void dft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void dft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace gkdv::detail
