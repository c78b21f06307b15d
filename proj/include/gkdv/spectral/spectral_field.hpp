#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "gkdv/spectral/grid.hpp"

namespace gkdv {

using Complex = std::complex<double>;

/// A function on a Grid1D represented by continuum-normalized Fourier
/// coefficients
///
///   coeffs(xi_k) ~ dx / sqrt(2 pi) * sum_j f(x_j) exp(-i x_j xi_k),
///
/// stored in ascending frequency order. Real-valued fields carry Hermitian
/// symmetry, which the constructor enforces exactly (after checking it holds to
/// round-off); the unpaired -N/2 coefficient of a real field is real.
///
/// Fields are immutable; every operator returns a new field.
class SpectralField {
 public:
  SpectralField(Grid1D grid, std::vector<Complex> coeffs, bool is_real);

  static SpectralField zero(const Grid1D& grid, bool is_real = true);

  const Grid1D& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  bool is_real() const { return is_real_; }
  std::size_t size() const { return coeffs_.size(); }
  Complex operator[](std::size_t i) const { return coeffs_[i]; }
  Complex at_mode(long k) const { return coeffs_[grid_.index_of_mode(k)]; }

  SpectralField operator+(const SpectralField& other) const;
  SpectralField operator-(const SpectralField& other) const;
  SpectralField operator*(double scale) const;
  SpectralField operator-() const { return *this * -1.0; }

  /// Copy with the zero mode removed.
  SpectralField mean_free() const;

 private:
  void check_compatible(const SpectralField& other) const;

  Grid1D grid_;
  std::vector<Complex> coeffs_;
  bool is_real_;
};

inline SpectralField operator*(double scale, const SpectralField& f) { return f * scale; }

/// Physical samples -> spectral coefficients. The real overload yields a real field.
SpectralField forward_transform(std::span<const double> samples, const Grid1D& grid);
SpectralField forward_transform(std::span<const Complex> samples, const Grid1D& grid);

/// Spectral coefficients -> physical samples f(x_j).
std::vector<Complex> inverse_transform(const SpectralField& field);
/// Real part of the physical samples; intended for real fields.
std::vector<double> real_samples(const SpectralField& field);

/// Multiplies every coefficient by symbol(xi_k). When the field is real the
/// symbol must satisfy symbol(-xi) = conj(symbol(xi)); the unpaired -N/2 mode
/// is then multiplied by Re symbol(xi_{-N/2}), the average of the two
/// symmetric extensions, so realness is preserved.
SpectralField apply_multiplier(const SpectralField& field,
                               const std::function<Complex(double)>& symbol);

/// |D_x|^s: multiplies by |xi|^s. The zero mode is dropped for every s != 0.
SpectralField riesz_potential(const SpectralField& field, double s);

/// Airy group exp(-t d_x^3): multiplies by exp(i t xi^3). The unpaired -N/2
/// coefficient of a real field is left unchanged, which keeps the group law.
SpectralField airy_propagate(const SpectralField& field, double t);

/// d_x: multiplies by i xi.
SpectralField derivative(const SpectralField& field);

/// Samples of a callable on the grid, transformed to a real field.
SpectralField sample_real(const Grid1D& grid, const std::function<double(double)>& f);

}  // namespace gkdv
