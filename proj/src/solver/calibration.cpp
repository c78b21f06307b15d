#include "gkdv/solver/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gkdv/solver/data.hpp"
#include "gkdv/spectral/random_field.hpp"

namespace gkdv {
namespace {

struct Probe {
  bool ok = false;
  double epsilon = 0.0;
  double max_factor = 0.0;
};

Probe probe(const SpectralField& u0, const NonlinearityG& g, const SolverConfig& sc, double limit) {
  Probe p;
  try {
    const SolveResult res = picard_solve(u0, 0.0, g, sc);
    p.epsilon = res.epsilon;
    for (double f : res.contraction_factors) p.max_factor = std::max(p.max_factor, f);
    p.ok = res.converged && p.max_factor <= limit;
  } catch (const NumericalBlowup&) {
    p.ok = false;
  }
  return p;
}

}  // namespace

CalibrationResult calibrate_delta(const CalibrationConfig& cfg) {
  const Grid1D grid(cfg.half_length, cfg.points);
  SolverConfig sc;
  sc.t_start = 0.0;
  sc.t_end = cfg.t_end;
  sc.t0 = 0.0;
  sc.samples_per_unit = cfg.samples_per_unit;
  sc.enforce_gate = false;
  sc.max_iterations = cfg.max_iterations;

  std::vector<std::pair<std::string, SpectralField>> shapes;
  for (double w : {0.5, 1.0, 2.0}) {
    shapes.emplace_back("gaussian(width=" + std::to_string(w) + ")", gaussian_datum(grid, 1.0, 0.0, w));
  }
  const auto window = gaussian_datum(grid, 1.0, 0.0, cfg.half_length / 8.0);
  const auto win = real_samples(window);
  for (std::size_t i = 0; i < cfg.random_data; ++i) {
    const auto f = random_band_limited(grid, 1.0, grid.size() / 8, derive_seed(cfg.seed, i));
    auto s = real_samples(f);
    double peak = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      s[j] *= win[j];
      peak = std::max(peak, std::abs(s[j]));
    }
    for (double& v : s) v /= peak;
    shapes.emplace_back("random(seed index " + std::to_string(i) + ")",
                        forward_transform(std::span<const double>(s), grid));
  }

  CalibrationResult out;
  out.delta = INFINITY;
  for (const auto& [name, shape] : shapes) {
    for (double mu : {1.0, -1.0}) {
      const auto g = NonlinearityG::power(cfg.alpha, mu);
      double lo = 0.0;
      Probe best;
      double hi = 0.25;
      for (;;) {
        const Probe p = probe(shape * hi, g, sc, cfg.factor_limit);
        if (!p.ok) break;
        lo = hi;
        best = p;
        hi *= 2.0;
      }
      for (std::size_t k = 0; k < cfg.bisection_steps; ++k) {
        const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
        const Probe p = probe(shape * mid, g, sc, cfg.factor_limit);
        if (p.ok) {
          lo = mid;
          best = p;
        } else {
          hi = mid;
        }
      }
      out.samples.push_back({name, mu, lo, best.epsilon, best.max_factor});
      out.delta = std::min(out.delta, best.epsilon);
    }
  }
  return out;
}

}  // namespace gkdv
