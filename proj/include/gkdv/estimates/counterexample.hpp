#pragma once

#include <vector>

#include "gkdv/estimates/estimate_spec.hpp"
#include "gkdv/spectral/spectral_field.hpp"

namespace gkdv {

struct CounterexampleRow {
  long n = 0;
  double lhat = 0.0;
  /// H-dot^{1/2 - 1/r} norm.
  double sobolev = 0.0;
  /// The same two norms as exact integrals of the continuum profile.
  double lhat_exact = 0.0;
  double sobolev_exact = 0.0;
};

struct CounterexampleTable {
  CounterexampleFamily family = CounterexampleFamily::f_n;
  double r = 4.0;
  /// Logarithmic exponent (g_n only).
  double p = 0.0;
  /// n -> infinity limit of the Sobolev norm (g_n only; infinite for f_n).
  double sobolev_limit = 0.0;
  double dxi = 0.0;
  std::size_t points = 0;
  std::vector<CounterexampleRow> rows;
};

/// f_n-hat = 1 on [n, n+1);  g_n-hat = xi^{-1/r'} |log xi|^{-p} on [1/n, 1/2].
/// Both are complex fields supported on xi > 0.
SpectralField counterexample_field(CounterexampleFamily family, double r, long n, double p, const Grid1D& grid);

/// Norm table on a frequency lattice of spacing 1/m (f_n) or 1/(m max n)
/// (g_n); m = 0 picks 16 for f_n and 64 for g_n.
CounterexampleTable counterexample_table(const estimate::Counterexample& spec, std::size_t m = 0);

}  // namespace gkdv
