#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gkdv/spacetime/mixed_norm.hpp"
#include "gkdv/spacetime/pairs.hpp"
#include "gkdv/spacetime/retarded.hpp"
#include "gkdv/spacetime/time_trace.hpp"
#include "gkdv/spectral/norms.hpp"
#include "gkdv/spectral/random_field.hpp"

using namespace gkdv;
using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

namespace {

// Independent description of the acceptable set: the (1/p, 1/q) region
// 0 <= 1/p < 1/4, 0 <= 1/q < 1/2 - 1/p mapped by (1/r, s) = (2/p + 1/q,
// -1/p + 2/q), together with the two corners (1/2, -1/4) and (1/2, 1).
bool oracle_acceptable(double s, double inv_r) {
  const double eps = 1e-12;
  if (std::abs(inv_r - 0.5) < eps && (std::abs(s + 0.25) < eps || std::abs(s - 1.0) < eps)) {
    return true;
  }
  const double ip = (2.0 * inv_r - s) / 5.0;
  const double iq = (2.0 * s + inv_r) / 5.0;
  return ip >= -eps && ip < 0.25 - eps && iq >= -eps && iq < 0.5 - ip - eps;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("exponent maps") {
  auto e = exponent_map(1.0 / 6.0, 2.0);
  CHECK(e.p() == doctest::Approx(6.0));
  CHECK(e.q() == doctest::Approx(6.0));
  e = exponent_map(0.0, 2.0);
  CHECK(e.inv_p == doctest::Approx(0.2));
  CHECK(e.inv_q == doctest::Approx(0.1));
  auto d = dual_exponent_map(0.0, 2.0);
  CHECK(d.inv_p == doctest::Approx(1.0));
  CHECK(d.inv_q == doctest::Approx(0.5));
  // Stein-Tomas: s = 1/r with data exponent r/3 gives p = q = r.
  for (double r : {4.5, 6.0, 8.0}) {
    const auto st = exponent_map_reciprocal(1.0 / r, 3.0 / r);
    CHECK(st.p() == doctest::Approx(r));
    CHECK(st.q() == doctest::Approx(r));
  }
  for (double s : {-0.3, 0.0, 0.4, 1.1}) {
    for (double ir : {0.0, 0.2, 0.5, 0.7}) {
      const auto x = exponent_map_reciprocal(s, ir);
      CHECK(2 * x.inv_p + x.inv_q == doctest::Approx(ir));
      CHECK(-x.inv_p + 2 * x.inv_q == doctest::Approx(s));
      const auto y = dual_exponent_map_reciprocal(s, ir);
      CHECK(2 * y.inv_p + y.inv_q == doctest::Approx(2 + ir));
      CHECK(-y.inv_p + 2 * y.inv_q == doctest::Approx(s));
    }
  }
}

TEST_CASE("pair classification examples") {
  auto pc = classify_pair(1.0 / 6.0, 2.0);
  CHECK(pc.acceptable);
  REQUIRE(pc.exponents);
  CHECK(pc.exponents->p() == doctest::Approx(6.0));

  for (double alpha : {4.0, 4.1, 4.2, 4.25, 4.5, 5.0, 7.0}) {
    const bool expect = alpha > 21.0 / 5.0 + 1e-12;
    CHECK(classify_pair(0.0, (alpha - 1) / 2).acceptable == expect);
  }
  pc = classify_pair(-0.25, 2.0);
  CHECK(pc.acceptable);
  CHECK(pc.endpoint);
  pc = classify_pair(0.5, 2.0);
  CHECK(pc.acceptable);
  CHECK(pc.conjugate_acceptable);
  REQUIRE(pc.dual_exponents);
  CHECK(pc.dual_exponents->inv_p == doctest::Approx(pc.exponents->inv_p + 0.8));

  pc = classify_pair(0.25, 4.0 / 3.0);
  CHECK_FALSE(pc.acceptable);
  CHECK(pc.violation.find("3/4") != std::string::npos);
  pc = classify_pair(1.2, 2.0);
  CHECK_FALSE(pc.acceptable);
  CHECK(pc.violation.find("2/r") != std::string::npos);

  pc = classify_pair(0.0, 1.0 - 1e-14);
  CHECK(pc.clamped);
  CHECK(pc.r == 1.0);
  CHECK_FALSE(classify_pair(0.0, 0.5).acceptable);
}

TEST_CASE("figure corners and conjugacy lattice") {
  CHECK(classify_pair_reciprocal(0.0, 0.0).acceptable);
  CHECK(classify_pair_reciprocal(-0.25, 0.5).acceptable);
  CHECK_FALSE(classify_pair_reciprocal(0.25, 0.75).acceptable);
  CHECK(classify_pair_reciprocal(1.0, 0.5).acceptable);

  int count = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double s = -0.5 + 0.1 * i;
      const double ir = j / 9.0;
      const auto pc = classify_pair_reciprocal(s, ir);
      CHECK(pc.acceptable == oracle_acceptable(s, ir));
      CHECK(pc.conjugate_acceptable == oracle_acceptable(1.0 - s, 1.0 - ir));
      CHECK(pc.conjugate_acceptable == classify_pair_reciprocal(1.0 - s, 1.0 - ir).acceptable);
      ++count;
    }
  }
  CHECK(count == 200);
}

TEST_CASE("mixed norm separability and fubini") {
  const auto g = make_grid(16.0, 128);
  const auto h = sample_real(g, [](double x) { return std::exp(-x * x / 4) * (1 + 0.3 * std::sin(x)); });
  const auto times = uniform_times(0.0, 2.0, 401);

  std::vector<SpectralField> constant(times.size(), h);
  const TimeTrace flat(times, constant);
  for (double p : {1.0, 2.0, 5.0, kInf}) {
    for (double q : {1.0, 3.0, 10.0, kInf}) {
      const double expect = lebesgue_norm(h, p) * (std::isinf(q) ? 1.0 : std::pow(2.0, 1.0 / q));
      CHECK(mixed_norm(flat, p, q) == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  // g(t) = 1 + t^2 on [0, 2]: L^2 norm^2 = int (1 + 2t^2 + t^4) = 2 + 16/3 + 32/5.
  std::vector<SpectralField> sep;
  for (double t : times) sep.push_back(h * (1 + t * t));
  const TimeTrace product(times, sep);
  const double g2 = std::sqrt(2 + 16.0 / 3 + 32.0 / 5);
  CHECK(mixed_norm(product, 3.0, 2.0) == doctest::Approx(g2 * lebesgue_norm(h, 3.0)).epsilon(1e-5));

  const auto f = random_band_limited(g, 1.0, 30, 4);
  const auto evo = free_evolution(f, times);
  for (double p : {2.0, 4.0, 6.0}) {
    const double a = mixed_norm(evo, p, p, NormOrder::x_outer);
    const double b = mixed_norm(evo, p, p, NormOrder::t_outer);
    CHECK(std::abs(a - b) < 1e-8 * a);
  }
  CHECK_THROWS_AS(mixed_norm(TimeTrace({0.0}, {h}), 2.0, 2.0), std::invalid_argument);
  CHECK(mixed_norm(TimeTrace({0.0}, {h}), 2.0, kInf) == doctest::Approx(lebesgue_norm(h, 2.0)));
}

TEST_CASE("x, y and s norms") {
  const auto g = make_grid(32.0, 256);
  const auto times = uniform_times(0.0, 1.0, 129);
  const TimeTrace zero(times, std::vector<SpectralField>(times.size(), SpectralField::zero(g)));
  CHECK(xnorm(zero, 0.5, 2.0) == 0.0);
  CHECK(ynorm(zero, 0.5, 2.0) == 0.0);
  CHECK(snorm(zero, 2.0) == 0.0);

  const auto u0 = sample_real(g, [](double x) { return std::exp(-x * x / 2); });
  const auto evo = free_evolution(u0, times);
  // Direct L^6_{t,x} of |D|^{1/6} u with trapezoid in t and dx in x.
  double total = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double w = (i == 0 || i + 1 == times.size()) ? 0.5 / 128 : 1.0 / 128;
    const auto v = inverse_transform(riesz_potential(evo[i], 1.0 / 6.0));
    for (const auto& z : v) total += w * g.dx() * std::pow(std::abs(z), 6.0);
  }
  CHECK(xnorm(evo, 1.0 / 6.0, 2.0) == doctest::Approx(std::pow(total, 1.0 / 6.0)).epsilon(1e-10));

  CHECK_THROWS_AS(xnorm(evo, 2.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ynorm(evo, -0.5, 2.0), std::invalid_argument);
  try {
    xnorm(evo, 0.0, 1.2);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("3/4") != std::string::npos);
  }

  XNormAccumulator acc(g, 0.0, 2.0);
  for (std::size_t i = 0; i < times.size(); ++i) acc.add(times[i], evo[i]);
  CHECK(acc.value() == doctest::Approx(snorm(evo, 2.0)).epsilon(1e-12));
}

TEST_CASE("accumulator rescales when the amplitude grows") {
  const std::vector<double> times{0.0, 0.5, 1.5, 2.0};
  std::vector<std::vector<double>> rows{{1e-3, 2e-3}, {1.0, 0.5}, {4.0, 1.0}, {1e2, 3.0}};
  MixedNormAccumulator acc(2, 0.25, 3.0, 7.0);
  for (std::size_t i = 0; i < 4; ++i) acc.add(times[i], rows[i]);
  CHECK(acc.value() == doctest::Approx(mixed_norm(times, rows, 0.25, 3.0, 7.0)).epsilon(1e-12));
}

TEST_CASE("retarded integral closed forms") {
  const auto g = make_grid(8.0, 64);
  const auto f0 = random_band_limited(g, 0.5, 20, 17);
  const auto times = uniform_times(0.0, 1.0, 65);

  // Constant forcing: int_0^t e^{i w (t - t')} dt' = (e^{i w t} - 1) / (i w).
  const TimeTrace flat(times, std::vector<SpectralField>(times.size(), f0));
  const auto integral = retarded_integral(flat);
  for (std::size_t i : {std::size_t{0}, std::size_t{17}, std::size_t{64}}) {
    const double t = times[i];
    double err = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k) {
      const double w = std::pow(g.xi(k), 3);
      const Complex kernel = (w == 0.0) ? Complex(t) : (std::exp(Complex(0, w * t)) - 1.0) / Complex(0, w);
      err = std::max(err, std::abs(integral[i][k] - kernel * f0[k]));
    }
    CHECK(err < 1e-13);
  }

  // cos(nu t) forcing: second-order convergence toward the closed form.
  const double nu = 3.0;
  auto closed = [&](double w, double t) {
    // int_0^t e^{i w (t - s)} cos(nu s) ds
    const Complex iw(0, w);
    auto part = [&](double sgn) {
      const Complex a(0, sgn * nu);
      const Complex d = a - iw;
      return std::exp(iw * t) * (std::exp(d * t) - 1.0) / d;
    };
    return 0.5 * (part(1.0) + part(-1.0));
  };
  double prev = 0.0;
  for (std::size_t m : {33, 65, 129}) {
    const auto tt = uniform_times(0.0, 1.0, m);
    std::vector<SpectralField> fs;
    for (double t : tt) fs.push_back(f0 * std::cos(nu * t));
    const auto out = retarded_integral(TimeTrace(tt, fs));
    double err = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k) {
      err = std::max(err, std::abs(out[m - 1][k] - closed(std::pow(g.xi(k), 3), 1.0) * f0[k]));
    }
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.1));
    prev = err;
  }

  // Anchored in the middle: backward branch mirrors the forward one.
  const auto mid = retarded_integral(flat, 32);
  CHECK(max_diff(mid[32], SpectralField::zero(g)) == 0.0);
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double w = std::pow(g.xi(k), 3);
    const double t = times[0] - times[32];
    if (w == 0.0) continue;
    const Complex kernel = (std::exp(Complex(0, w * t)) - 1.0) / Complex(0, w);
    CHECK(std::abs(mid[0][k] - kernel * f0[k]) < 1e-13);
  }
}

TEST_CASE("scattering norm self-convergence") {
  auto snorm_at = [](std::size_t n, std::size_t m) {
    const auto g = make_grid(32.0, n);
    const auto u0 = sample_real(g, [](double x) { return 0.05 * std::exp(-x * x / 2); });
    return snorm(free_evolution(u0, uniform_times(0.0, 1.0, m)), 2.0);
  };
  const double base = snorm_at(256, 129);
  CHECK(std::isfinite(base));
  CHECK(std::abs(snorm_at(512, 129) - base) < 0.02 * base);
  CHECK(std::abs(snorm_at(256, 257) - base) < 0.02 * base);
}
