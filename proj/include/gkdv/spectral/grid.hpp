#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gkdv {

/// Periodic truncation [-L, L) of the real line sampled at N equispaced points,
/// paired with the frequency lattice xi_k = k*pi/L, k = -N/2, ..., N/2 - 1.
///
/// Spectral arrays throughout the library are stored in ascending frequency
/// order: array index i carries mode k = i - N/2.
class Grid1D {
 public:
  Grid1D(double half_length, std::size_t points);

  double half_length() const { return half_length_; }
  std::size_t size() const { return points_; }
  double dx() const { return dx_; }
  double dxi() const { return dxi_; }

  double x(std::size_t j) const { return -half_length_ + static_cast<double>(j) * dx_; }
  long mode(std::size_t i) const { return static_cast<long>(i) - static_cast<long>(points_ / 2); }
  double xi(std::size_t i) const { return static_cast<double>(mode(i)) * dxi_; }

  std::size_t index_of_mode(long k) const;
  std::size_t zero_index() const { return points_ / 2; }
  /// Index of the unpaired -N/2 mode.
  std::size_t nyquist_index() const { return 0; }
  double max_frequency() const { return xi(points_ - 1); }

  std::vector<double> positions() const;
  std::vector<double> frequencies() const;

  bool operator==(const Grid1D& other) const {
    return half_length_ == other.half_length_ && points_ == other.points_;
  }

 private:
  double half_length_;
  std::size_t points_;
  double dx_;
  double dxi_;
};

/// Validating constructor: L > 0, N even and N >= 8.
Grid1D make_grid(double half_length, std::int64_t points);

}  // namespace gkdv
