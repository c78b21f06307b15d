#include "gkdv/spacetime/pairs.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gkdv {
namespace {

constexpr double kTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double reciprocal(double inv) { return inv == 0.0 ? kInf : 1.0 / inv; }

double inverse_of(double r) { return std::isinf(r) ? 0.0 : 1.0 / r; }

bool on_closed_edge(double s, double inv_r) {
  if (inv_r > 0.5 + kTol) return false;
  return std::abs(s + 0.5 * inv_r) <= kTol || std::abs(s - 2.0 * inv_r) <= kTol ||
         std::abs(inv_r) <= kTol;
}

}  // namespace

double Exponents::p() const { return reciprocal(inv_p); }
double Exponents::q() const { return reciprocal(inv_q); }

Exponents exponent_map_reciprocal(double s, double inv_r) {
  return {-s / 5.0 + 2.0 * inv_r / 5.0, 2.0 * s / 5.0 + inv_r / 5.0};
}

Exponents exponent_map(double s, double r) { return exponent_map_reciprocal(s, inverse_of(r)); }

Exponents dual_exponent_map_reciprocal(double s, double inv_r) {
  const Exponents e = exponent_map_reciprocal(s, inv_r);
  return {e.inv_p + 0.8, e.inv_q + 0.4};
}

Exponents dual_exponent_map(double s, double r) {
  return dual_exponent_map_reciprocal(s, inverse_of(r));
}

std::string acceptability_violation(double s, double inv_r) {
  std::ostringstream why;
  if (inv_r < -kTol || inv_r > 1.0 + kTol) {
    why << "1/r = " << inv_r << " outside [0, 1]";
  } else if (inv_r >= 0.75 - kTol) {
    why << "1/r = " << inv_r << " violates 1/r < 3/4";
  } else if (inv_r <= 0.5 + kTol) {
    if (s < -0.5 * inv_r - kTol) {
      why << "s = " << s << " violates s >= -1/(2r) = " << -0.5 * inv_r;
    } else if (s > 2.0 * inv_r + kTol) {
      why << "s = " << s << " violates s <= 2/r = " << 2.0 * inv_r;
    }
  } else {
    const double lo = 2.0 * inv_r - 1.25;
    const double hi = 2.5 - 3.0 * inv_r;
    if (s <= lo + kTol) {
      why << "s = " << s << " violates s > 2/r - 5/4 = " << lo;
    } else if (s >= hi - kTol) {
      why << "s = " << s << " violates s < 5/2 - 3/r = " << hi;
    }
  }
  return why.str();
}

PairClass classify_pair_reciprocal(double s, double inv_r) {
  PairClass pc;
  pc.s = s;
  if (inv_r < 0.0 && inv_r >= -kTol) {
    inv_r = 0.0;
    pc.clamped = true;
  } else if (inv_r > 1.0 && inv_r <= 1.0 + kTol) {
    inv_r = 1.0;
    pc.clamped = true;
  }
  pc.inv_r = inv_r;
  pc.r = reciprocal(inv_r);

  pc.violation = acceptability_violation(s, inv_r);
  pc.acceptable = pc.violation.empty();
  if (pc.acceptable) {
    pc.exponents = exponent_map_reciprocal(s, inv_r);
    pc.endpoint = on_closed_edge(s, inv_r);
  }

  const std::string dual = acceptability_violation(1.0 - s, 1.0 - inv_r);
  pc.conjugate_acceptable = dual.empty();
  if (pc.conjugate_acceptable) {
    pc.dual_exponents = dual_exponent_map_reciprocal(s, inv_r);
  } else {
    pc.conjugate_violation = "(1 - s, r') not acceptable: " + dual;
  }
  return pc;
}

PairClass classify_pair(double s, double r) {
  if (std::isnan(r) || std::isnan(s)) {
    PairClass pc;
    pc.s = s;
    pc.r = r;
    pc.inv_r = std::nan("");
    pc.violation = "NaN parameter";
    pc.conjugate_violation = "NaN parameter";
    return pc;
  }
  if (r < 1.0 && r >= 1.0 - kTol) {
    auto pc = classify_pair_reciprocal(s, 1.0);
    pc.clamped = true;
    return pc;
  }
  if (r < 1.0) {
    PairClass pc;
    pc.s = s;
    pc.r = r;
    pc.inv_r = 1.0 / r;
    std::ostringstream why;
    why << "r = " << r << " outside [1, inf]";
    pc.violation = why.str();
    pc.conjugate_violation = why.str();
    return pc;
  }
  return classify_pair_reciprocal(s, inverse_of(r));
}

}  // namespace gkdv
