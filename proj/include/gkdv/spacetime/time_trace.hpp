#pragma once

#include <span>
#include <vector>

#include "gkdv/spectral/spectral_field.hpp"

namespace gkdv {

/// Time-sampled family of fields on one grid. Times are strictly increasing.
class TimeTrace {
 public:
  TimeTrace(std::vector<double> times, std::vector<SpectralField> fields);

  const Grid1D& grid() const { return fields_.front().grid(); }
  std::span<const double> times() const { return times_; }
  std::span<const SpectralField> fields() const { return fields_; }
  std::size_t size() const { return times_.size(); }
  const SpectralField& operator[](std::size_t i) const { return fields_[i]; }
  double start() const { return times_.front(); }
  double end() const { return times_.back(); }

  TimeTrace operator+(const TimeTrace& other) const;
  TimeTrace operator-(const TimeTrace& other) const;
  TimeTrace operator*(double scale) const;

  /// Applies op to every sample.
  template <class Op>
  TimeTrace map(Op op) const {
    std::vector<SpectralField> out;
    out.reserve(fields_.size());
    for (const auto& f : fields_) out.push_back(op(f));
    return TimeTrace(times_, std::move(out));
  }

 private:
  void check_compatible(const TimeTrace& other) const;

  std::vector<double> times_;
  std::vector<SpectralField> fields_;
};

/// `count` equispaced times covering [start, end], endpoints included.
std::vector<double> uniform_times(double start, double end, std::size_t count);

/// t -> airy_propagate(u0, t - t0) on the given times.
TimeTrace free_evolution(const SpectralField& u0, std::span<const double> times, double t0 = 0.0);

/// Sup over samples of lhat_norm(a(t) - b(t), r).
double sup_lhat_distance(const TimeTrace& a, const TimeTrace& b, double r);

}  // namespace gkdv
