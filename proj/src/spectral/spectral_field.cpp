#include "gkdv/spectral/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace gkdv {
namespace {

constexpr double kSymmetryTolerance = 1e-8;

double max_abs(std::span<const Complex> c) {
  double m = 0.0;
  for (const auto& z : c) m = std::max(m, std::abs(z));
  return m;
}

// Projects onto Hermitian-symmetric coefficients after verifying the input is
// symmetric to round-off.
void symmetrize(std::vector<Complex>& c) {
  const std::size_t n = c.size();
  const double scale = max_abs(c);
  const double tol = kSymmetryTolerance * scale + 1e-300;
  for (std::size_t i = 1; i < n / 2; ++i) {
    const std::size_t j = n - i;
    const Complex a = c[i];
    const Complex b = std::conj(c[j]);
    if (std::abs(a - b) > tol) {
      throw std::invalid_argument("coefficients of a real field are not Hermitian symmetric (mode " +
                                  std::to_string(static_cast<long>(i) - static_cast<long>(n / 2)) +
                                  ")");
    }
    const Complex avg = 0.5 * (a + b);
    c[i] = avg;
    c[j] = std::conj(avg);
  }
  for (std::size_t i : {std::size_t{0}, n / 2}) {
    if (std::abs(c[i].imag()) > tol) {
      throw std::invalid_argument("self-conjugate mode of a real field has an imaginary part");
    }
    c[i] = Complex(c[i].real(), 0.0);
  }
}

double parity_sign(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

SpectralField::SpectralField(Grid1D grid, std::vector<Complex> coeffs, bool is_real)
    : grid_(grid), coeffs_(std::move(coeffs)), is_real_(is_real) {
  if (coeffs_.size() != grid_.size()) {
    throw std::invalid_argument("coefficient count " + std::to_string(coeffs_.size()) +
                                " does not match grid size " + std::to_string(grid_.size()));
  }
  if (is_real_) symmetrize(coeffs_);
}

SpectralField SpectralField::zero(const Grid1D& grid, bool is_real) {
  return SpectralField(grid, std::vector<Complex>(grid.size()), is_real);
}

void SpectralField::check_compatible(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("fields live on different grids");
}

SpectralField SpectralField::operator+(const SpectralField& other) const {
  check_compatible(other);
  std::vector<Complex> out(coeffs_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.coeffs_[i];
  return SpectralField(grid_, std::move(out), is_real_ && other.is_real_);
}

SpectralField SpectralField::operator-(const SpectralField& other) const {
  check_compatible(other);
  std::vector<Complex> out(coeffs_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.coeffs_[i];
  return SpectralField(grid_, std::move(out), is_real_ && other.is_real_);
}

SpectralField SpectralField::operator*(double scale) const {
  std::vector<Complex> out(coeffs_);
  for (auto& z : out) z *= scale;
  return SpectralField(grid_, std::move(out), is_real_);
}

SpectralField SpectralField::mean_free() const {
  std::vector<Complex> out(coeffs_);
  out[grid_.zero_index()] = 0.0;
  return SpectralField(grid_, std::move(out), is_real_);
}

SpectralField forward_transform(std::span<const Complex> samples, const Grid1D& grid) {
  const std::size_t n = grid.size();
  if (samples.size() != n) {
    throw std::invalid_argument("sample count " + std::to_string(samples.size()) +
                                " does not match grid size " + std::to_string(n));
  }
  std::vector<Complex> dft(n);
  detail::dft_forward(samples, dft);
  // x_j = -L + j dx gives the phase exp(i L xi_k) = (-1)^k.
  const double scale = grid.dx() / std::sqrt(2.0 * std::numbers::pi);
  std::vector<Complex> coeffs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = grid.mode(i);
    const std::size_t m = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
    coeffs[i] = scale * parity_sign(k) * dft[m];
  }
  return SpectralField(grid, std::move(coeffs), false);
}

SpectralField forward_transform(std::span<const double> samples, const Grid1D& grid) {
  if (samples.size() != grid.size()) {
    throw std::invalid_argument("sample count " + std::to_string(samples.size()) +
                                " does not match grid size " + std::to_string(grid.size()));
  }
  std::vector<Complex> z(samples.begin(), samples.end());
  auto field = forward_transform(std::span<const Complex>(z), grid);
  return SpectralField(grid, std::vector<Complex>(field.coeffs().begin(), field.coeffs().end()),
                       true);
}

std::vector<Complex> inverse_transform(const SpectralField& field) {
  const Grid1D& grid = field.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> shuffled(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = grid.mode(i);
    const std::size_t m = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
    shuffled[m] = parity_sign(k) * field[i];
  }
  std::vector<Complex> out(n);
  detail::dft_backward(shuffled, out);
  const double scale = grid.dxi() / std::sqrt(2.0 * std::numbers::pi);
  for (auto& z : out) z *= scale;
  return out;
}

std::vector<double> real_samples(const SpectralField& field) {
  const auto z = inverse_transform(field);
  std::vector<double> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j].real();
  return out;
}

SpectralField apply_multiplier(const SpectralField& field,
                               const std::function<Complex(double)>& symbol) {
  const Grid1D& grid = field.grid();
  std::vector<Complex> out(field.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = symbol(grid.xi(i)) * field[i];
  if (field.is_real()) {
    const std::size_t ny = grid.nyquist_index();
    out[ny] = symbol(grid.xi(ny)).real() * field[ny];
  }
  return SpectralField(grid, std::move(out), field.is_real());
}

SpectralField riesz_potential(const SpectralField& field, double s) {
  if (s == 0.0) return field;
  const Grid1D& grid = field.grid();
  std::vector<Complex> out(field.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i == grid.zero_index()) continue;
    out[i] = std::pow(std::abs(grid.xi(i)), s) * field[i];
  }
  return SpectralField(grid, std::move(out), field.is_real());
}

SpectralField airy_propagate(const SpectralField& field, double t) {
  if (t == 0.0) return field;
  const auto moved = apply_multiplier(field, [t](double xi) { return std::polar(1.0, t * xi * xi * xi); });
  if (!field.is_real()) return moved;
  // No real unimodular multiplier at the unpaired mode composes to a group
  // except the identity, so it is left in place.
  std::vector<Complex> c(moved.coeffs().begin(), moved.coeffs().end());
  const std::size_t nyq = field.grid().nyquist_index();
  c[nyq] = field[nyq];
  return SpectralField(field.grid(), std::move(c), true);
}

SpectralField derivative(const SpectralField& field) {
  return apply_multiplier(field, [](double xi) { return Complex(0.0, xi); });
}

SpectralField sample_real(const Grid1D& grid, const std::function<double(double)>& f) {
  std::vector<double> samples(grid.size());
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = f(grid.x(j));
  return forward_transform(std::span<const double>(samples), grid);
}

}  // namespace gkdv
