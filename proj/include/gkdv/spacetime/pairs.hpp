#pragma once

#include <optional>
#include <string>

namespace gkdv {

/// Reciprocal space-time exponents (1/p, 1/q); p is the spatial exponent and q
/// the temporal one. A reciprocal of 0 means an infinite exponent.
struct Exponents {
  double inv_p = 0.0;
  double inv_q = 0.0;

  double p() const;
  double q() const;
};

/// Solves 2/p + 1/q = 1/r, -1/p + 2/q = s:
///   1/p = -s/5 + (2/5)(1/r),  1/q = 2s/5 + (1/5)(1/r).
Exponents exponent_map(double s, double r);
Exponents exponent_map_reciprocal(double s, double inv_r);

/// Solves 2/p~ + 1/q~ = 2 + 1/r, -1/p~ + 2/q~ = s, i.e. the exponent map
/// shifted by (4/5, 2/5).
Exponents dual_exponent_map(double s, double r);
Exponents dual_exponent_map_reciprocal(double s, double inv_r);

struct PairClass {
  double s = 0.0;
  double r = 0.0;
  double inv_r = 0.0;
  bool acceptable = false;
  bool conjugate_acceptable = false;
  /// (s, r) sits on a closed edge of the acceptable region.
  bool endpoint = false;
  /// r was nudged back into [1, inf] (by at most 1e-12 in 1/r).
  bool clamped = false;
  std::optional<Exponents> exponents;
  std::optional<Exponents> dual_exponents;
  /// Human-readable reason when a flag is false; empty otherwise.
  std::string violation;
  std::string conjugate_violation;
};

/// Acceptability:
///   1/r in [0, 3/4) and
///   s in [-1/(2r), 2/r]            if 1/r <= 1/2,
///   s in (2/r - 5/4, 5/2 - 3/r)    if 1/2 < 1/r < 3/4.
/// Conjugate acceptability: (1 - s, r') acceptable.
/// Closed constraints admit a 1e-12 slack, open ones exclude it.
PairClass classify_pair(double s, double r);
PairClass classify_pair_reciprocal(double s, double inv_r);

/// Empty when (s, 1/r) is acceptable, otherwise the violated constraint.
std::string acceptability_violation(double s, double inv_r);

}  // namespace gkdv
