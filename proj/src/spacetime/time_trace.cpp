#include "gkdv/spacetime/time_trace.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gkdv/spectral/norms.hpp"

namespace gkdv {

TimeTrace::TimeTrace(std::vector<double> times, std::vector<SpectralField> fields)
    : times_(std::move(times)), fields_(std::move(fields)) {
  if (times_.empty()) throw std::invalid_argument("time trace needs at least one sample");
  if (times_.size() != fields_.size()) {
    throw std::invalid_argument("time trace has " + std::to_string(times_.size()) + " times but " +
                                std::to_string(fields_.size()) + " fields");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw std::invalid_argument("trace times must be strictly increasing (index " +
                                  std::to_string(i) + ")");
    }
  }
  for (const auto& f : fields_) {
    if (!(f.grid() == fields_.front().grid())) {
      throw std::invalid_argument("all trace samples must share one grid");
    }
  }
}

void TimeTrace::check_compatible(const TimeTrace& other) const {
  if (other.times_ != times_) throw std::invalid_argument("traces sampled at different times");
  if (!(other.grid() == grid())) throw std::invalid_argument("traces live on different grids");
}

TimeTrace TimeTrace::operator+(const TimeTrace& other) const {
  check_compatible(other);
  std::vector<SpectralField> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(fields_[i] + other.fields_[i]);
  return TimeTrace(times_, std::move(out));
}

TimeTrace TimeTrace::operator-(const TimeTrace& other) const {
  check_compatible(other);
  std::vector<SpectralField> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(fields_[i] - other.fields_[i]);
  return TimeTrace(times_, std::move(out));
}

TimeTrace TimeTrace::operator*(double scale) const {
  return map([scale](const SpectralField& f) { return f * scale; });
}

std::vector<double> uniform_times(double start, double end, std::size_t count) {
  if (count < 2 || !(end > start)) {
    throw std::invalid_argument("uniform_times needs count >= 2 and end > start");
  }
  std::vector<double> t(count);
  const double h = (end - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) t[i] = start + static_cast<double>(i) * h;
  t.back() = end;
  return t;
}

TimeTrace free_evolution(const SpectralField& u0, std::span<const double> times, double t0) {
  std::vector<SpectralField> fields;
  fields.reserve(times.size());
  for (double t : times) fields.push_back(airy_propagate(u0, t - t0));
  return TimeTrace(std::vector<double>(times.begin(), times.end()), std::move(fields));
}

double sup_lhat_distance(const TimeTrace& a, const TimeTrace& b, double r) {
  if (!std::ranges::equal(a.times(), b.times())) {
    throw std::invalid_argument("traces sampled at different times");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, lhat_norm(a[i] - b[i], r));
  return worst;
}

}  // namespace gkdv
