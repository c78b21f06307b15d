#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace gkdv::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  // FFTW planning is not thread safe; execution with the new-array interface is.
  const PlanPair& get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans{fftw_plan_dft_1d(len, a, b, FFTW_FORWARD, flags),
                   fftw_plan_dft_1d(len, a, b, FFTW_BACKWARD, flags)};
    fftw_free(a);
    fftw_free(b);
    if (plans.forward == nullptr || plans.backward == nullptr) {
      throw std::runtime_error("FFTW failed to create a plan");
    }
    return plans_.emplace(n, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(fftw_plan plan, std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) {
  // Out-of-place plans: the input is not modified.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

void check(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.size() != out.size() || in.empty()) throw std::invalid_argument("dft size mismatch");
  if (in.data() == out.data()) throw std::invalid_argument("dft requires distinct buffers");
}

}  // namespace

void dft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  check(in, out);
  execute(cache().get(in.size()).forward, in, out);
}

void dft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  check(in, out);
  execute(cache().get(in.size()).backward, in, out);
}

}  // namespace gkdv::detail
