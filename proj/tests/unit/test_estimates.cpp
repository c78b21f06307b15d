#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "gkdv/estimates/counterexample.hpp"
#include "gkdv/estimates/lip_norm.hpp"
#include "gkdv/estimates/verify.hpp"
#include "gkdv/solver/data.hpp"
#include "gkdv/spacetime/mixed_norm.hpp"
#include "gkdv/spectral/norms.hpp"

using namespace gkdv;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool throws_containing(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

EstimateSpec quick(EstimateKind kind, std::size_t ensemble = 4) {
  EstimateSpec s;
  s.kind = std::move(kind);
  s.ensemble = ensemble;
  s.points = 128;
  s.half_length = 32.0;
  s.time_samples = 64;
  s.refine = false;
  return s;
}

}  // namespace

TEST_CASE("estimate ids parse, echo parameters and reject unknown keys") {
  CHECK(estimate_ids().size() == 13);
  for (const auto& id : estimate_ids()) {
    const auto kind = parse_estimate(id, json::object());
    CHECK(estimate_id(kind) == id);
  }
  const auto st = parse_estimate("stein_tomas", json{{"r", 8}});
  CHECK(std::get<estimate::SteinTomas>(st).r == 8.0);
  CHECK(std::get<estimate::SteinTomas>(parse_estimate("stein_tomas", json{{"r", "inf"}})).r == kInf);
  CHECK(throws_containing([] { parse_estimate("stein_tomas", json{{"q", 2}}); }, "unknown parameter 'q'"));
  CHECK(throws_containing([] { parse_estimate("kato", json{{"q", "two"}}); }, "'q'"));
  CHECK(throws_containing([] { parse_estimate("nope", json::object()); }, "unknown estimate id"));
  const auto ce = std::get<estimate::Counterexample>(parse_estimate("counterexample", json{{"family", "fn"}, {"n", "4,16,64"}}));
  CHECK(ce.n == std::vector<long>{4, 16, 64});
  const auto inc = std::get<estimate::Inclusion>(parse_estimate("inclusion", json{{"case", "iii"}, {"r", 3}}));
  CHECK(inc.which == 3);
}

TEST_CASE("hypotheses are enforced with the violated condition named") {
  CHECK(throws_containing([] { resolve_estimate(estimate::SteinTomas{4.0}); }, "r > 4"));
  CHECK_NOTHROW(resolve_estimate(estimate::SteinTomas{4.01}));
  CHECK_NOTHROW(resolve_estimate(estimate::SteinTomas{kInf}));
  CHECK(throws_containing([] { resolve_estimate(estimate::Kato{1.5}); }, "q in [2, inf]"));
  CHECK_NOTHROW(resolve_estimate(estimate::Kato{kInf}));
  CHECK(throws_containing([] { resolve_estimate(estimate::Strichartz{1.5, 2.0}); }, "acceptable"));
  CHECK(throws_containing([] { resolve_estimate(estimate::InhomLinf{4.0, {}}); }, "4/3 < r < 4"));
  CHECK(throws_containing([] { resolve_estimate(estimate::InhomLinf{2.0, 1.0}); }, "s2"));
  CHECK(throws_containing([] { resolve_estimate(estimate::ChainRule{1.0}); }, "mu > 1"));
  CHECK(throws_containing([] { resolve_estimate(estimate::ChainRule{5.0, 5.0}); }, "s in (0, mu)"));
  CHECK(throws_containing([] { resolve_estimate(estimate::NonlinearI{4.0, {}, {}}); }, "21/5 < alpha < 23/3"));
  CHECK(throws_containing([] { resolve_estimate(estimate::Leibniz{0.5, 6, 6, 6, 6, 4, 6, 6, 6}); }, "1/p1 + 1/p2"));
  CHECK(throws_containing([] { resolve_estimate(estimate::Inclusion{4, 2.0}); }, "case"));
  estimate::Counterexample g;
  g.family = CounterexampleFamily::g_n;
  g.n = {8};
  g.p = 0.4;
  CHECK(throws_containing([g] { resolve_estimate(g); }, "p in (1/2, 1/r')"));
  g.p.reset();
  CHECK(*std::get<estimate::Counterexample>(resolve_estimate(g)).p == doctest::Approx(0.625));

  const auto nl = std::get<estimate::NonlinearI>(resolve_estimate(estimate::NonlinearI{5.0, {}, {}}));
  CHECK(*nl.s == doctest::Approx(0.5));
  CHECK(*nl.r == doctest::Approx(2.0));
  const auto ih = std::get<estimate::InhomXY>(resolve_estimate(estimate::InhomXY{3.0, {}, {}}));
  CHECK(*ih.s2 == doctest::Approx((1.0 / 12.0 + 0.5) / 2.0));
}

TEST_CASE("homogeneous s-range matches a brute-force scan of the (1/p, 1/q) region") {
  for (double inv_r : {0.25, 1.0 / 3.0, 0.5, 0.6, 2.0 / 3.0, 0.7}) {
    const auto range = homogeneous_s_range(inv_r);
    for (int i = 0; i <= 4000; ++i) {
      const double s = -1.0 + 3.0 * i / 4000.0;
      const double ip = (-s + 2.0 * inv_r) / 5.0;
      const double iq = (2.0 * s + inv_r) / 5.0;
      const bool inside = ip >= -1e-13 && ip < 0.25 - 1e-13 && iq >= -1e-13 && iq < 0.5 - ip - 1e-13;
      CHECK_MESSAGE(range.contains(s) == inside, "inv_r = " << inv_r << ", s = " << s);
    }
  }
}

TEST_CASE("lip_norm_estimate") {
  const auto g = NonlinearityG::power(5.0, 1.0);
  const auto a = lip_norm_estimate(g, 5.0, 1.0, 256);
  const auto b = lip_norm_estimate(g, 5.0, 1.0, 512);
  CHECK(std::isfinite(a.value));
  CHECK(std::abs(b.value / a.value - 1.0) < 0.02);
  // |z|^4 z: the quotients are 1, 5, 20, 60, 120 and the Lipschitz constant of 120 z is 120.
  CHECK(a.derivative_terms.size() == 5);
  CHECK(a.derivative_terms[4] == doctest::Approx(120.0));
  CHECK(a.holder_term == doctest::Approx(120.0));

  NonlinearityG linear;
  linear.rule = NonlinearityRule::custom;
  linear.custom = [](double z) { return z; };
  linear.alpha = 2.0;
  const auto l = lip_norm_estimate(linear, 1.0, 2.0, 64);
  CHECK(l.derivative_terms.size() == 1);
  CHECK(l.derivative_terms[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(l.holder_term == doctest::Approx(1.0).epsilon(1e-12));

  NonlinearityG root = linear;
  root.custom = [](double z) { return std::sqrt(std::abs(z)); };
  const auto r1 = lip_norm_estimate(root, 1.0, 1.0, 100);
  const auto r2 = lip_norm_estimate(root, 1.0, 1.0, 400);
  CHECK(std::isfinite(r2.value));
  CHECK(r2.derivative_terms[0] / r1.derivative_terms[0] == doctest::Approx(2.0).epsilon(1e-9));

  NonlinearityG quintic = linear;
  quintic.custom = [](double z) { return z * z * z * z * z; };
  for (double z : {-0.7, 0.3, 1.4}) {
    for (int j = 1; j <= 4; ++j) {
      const double exact = g_derivative(g, j, z);
      CHECK(std::abs(g_derivative(quintic, j, z) - exact) < 2e-3 * std::max(1.0, std::abs(exact)));
    }
  }
  const auto frac = NonlinearityG::power(4.5, 1.0);
  const double h = 1e-6;
  for (double z : {-0.8, 0.5}) {
    for (int j = 1; j <= 3; ++j) {
      const double fd = (g_derivative(frac, j - 1, z + h) - g_derivative(frac, j - 1, z - h)) / (2 * h);
      CHECK(std::abs(g_derivative(frac, j, z) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
  NonlinearityG bad = linear;
  bad.custom = [](double z) { return 1.0 / z - 1.0 / z + std::log(z); };
  CHECK_THROWS_AS(lip_norm_estimate(bad, 1.0, 1.0, 16), std::invalid_argument);
}

TEST_CASE("strichartz(1/6, 2): Gaussian ratio against a direct L^6 quadrature") {
  const Grid1D grid(32.0, 128);
  const auto f = gaussian_datum(grid, 1.0);
  const auto times = uniform_times(0.0, 1.0, 65);
  const double lhs = xnorm(free_evolution(f, times, 0.0), 1.0 / 6.0, 2.0);
  const double ratio = lhs / lhat_norm(f, 2.0);

  // (1/sqrt(2 pi)) sum_k dxi exp(i x xi + i t xi^3) |xi|^{1/6} exp(-xi^2/2), then the
  // trapezoid rule in t and the dx-weighted sum in x.
  const double dxi = grid.dxi(), dx = grid.dx(), dt = times[1] - times[0];
  const long half = static_cast<long>(grid.size() / 2);
  double total = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    double inner = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      std::complex<double> v = 0.0;
      for (long k = -half + 1; k < half; ++k) {
        const double xi = k * dxi;
        v += std::polar(std::pow(std::abs(xi), 1.0 / 6.0) * std::exp(-0.5 * xi * xi), x * xi + times[i] * xi * xi * xi);
      }
      v *= dxi / std::sqrt(2.0 * std::numbers::pi);
      const double w = (i == 0 || i + 1 == times.size()) ? 0.5 : 1.0;
      inner += w * dt * std::pow(std::abs(v), 6.0);
    }
    total += dx * inner;
  }
  const double oracle = std::pow(total, 1.0 / 6.0) / std::pow(std::numbers::pi, 0.25);
  CHECK(std::abs(ratio - oracle) < 1e-6 * oracle);
}

TEST_CASE("counterexample families") {
  estimate::Counterexample fn;
  fn.r = 4.0;
  fn.n = {4, 16, 64};
  const auto t = counterexample_table(fn);
  REQUIRE(t.rows.size() == 3);
  for (const auto& row : t.rows) {
    CHECK(std::abs(row.lhat - 1.0) < 1e-10);
    const double closed = std::sqrt((std::pow(row.n + 1.0, 1.5) - std::pow(double(row.n), 1.5)) / 1.5);
    CHECK(std::abs(row.sobolev / closed - 1.0) < 0.05);
  }
  CHECK(t.rows[2].sobolev > t.rows[1].sobolev);

  estimate::Counterexample gn;
  gn.family = CounterexampleFamily::g_n;
  gn.r = 4.0;
  gn.n = {8, 64, 512};
  const auto g = counterexample_table(gn);
  const double p = 0.625;
  const double limit = std::sqrt(std::pow(std::log(2.0), 1.0 - 2.0 * p) / (2.0 * p - 1.0));
  CHECK(g.sobolev_limit == doctest::Approx(limit).epsilon(1e-14));
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    CHECK(g.rows[i].sobolev <= 1.05 * limit);
    if (i > 0) CHECK(g.rows[i].lhat > g.rows[i - 1].lhat);
    const double ln = std::log(double(g.rows[i].n)), l2 = std::log(2.0);
    const double sob = std::sqrt((std::pow(ln, 1.0 - 2 * p) - std::pow(l2, 1.0 - 2 * p)) / (1.0 - 2 * p));
    const double lh = std::pow((std::pow(ln, 1.0 - 4 * p / 3) - std::pow(l2, 1.0 - 4 * p / 3)) / (1.0 - 4 * p / 3), 0.75);
    CHECK(std::abs(g.rows[i].sobolev / sob - 1.0) < 0.05);
    CHECK(std::abs(g.rows[i].lhat / lh - 1.0) < 0.05);
  }
}

TEST_CASE("verify: determinism, homogeneity and report shape") {
  const auto spec = quick(estimate::SteinTomas{6.0});
  const auto a = verify(spec);
  const auto b = verify(spec);
  CHECK(report_json(a).dump() == report_json(b).dump());
  CHECK(a.samples.size() == 4);
  CHECK(a.max_ratio >= a.mean_ratio);
  CHECK(a.mean_ratio > 0.0);
  CHECK(a.homogeneity_defect < 1e-12);
  CHECK(a.refinement.size() == 1);
  const auto j = report_json(a);
  for (const char* key : {"id", "params", "seed", "N", "L", "M", "ensemble", "max_ratio", "mean_ratio", "refinement"}) {
    CHECK(j.contains(key));
  }
  CHECK_FALSE(j.contains("wall_seconds"));
  auto other = spec;
  other.seed = 2;
  CHECK(verify(other).max_ratio != a.max_ratio);

  const auto csv = report_csv(a);
  CHECK(csv.rfind("sample,lhs,rhs,ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  for (EstimateKind k : {EstimateKind{estimate::KenigRuiz{}}, EstimateKind{estimate::Kato{4.0}},
                         EstimateKind{estimate::InhomLinf{3.0, {}}}, EstimateKind{estimate::Interpolation{}}}) {
    const auto r = verify(quick(k, 2));
    CHECK(r.all_finite);
    CHECK(r.homogeneity_defect < 1e-12);
  }
  const auto nl = verify(quick(estimate::NonlinearI{5.0, {}, {}}, 2));
  CHECK(nl.all_finite);
  CHECK(nl.homogeneity_defect < 1e-10);
}

TEST_CASE("verify: Plancherel makes the r = 2 inclusions equalities") {
  const auto r = verify(quick(estimate::Inclusion{1, 2.0}, 6));
  for (const auto& s : r.samples) CHECK(std::abs(s.ratio - 1.0) < 1e-12);
}

TEST_CASE("verify: refinement trace") {
  auto spec = quick(estimate::InhomXY{2.0, {}, {}}, 3);
  spec.refine = true;
  const auto r = verify(spec);
  REQUIRE(r.refinement.size() == 4);
  CHECK(r.refinement[1].points == 256);
  CHECK(r.refinement[1].time_samples == 128);
  CHECK(r.refinement[2].ensemble == 6);
  CHECK(r.refinement[3].t_end == 2.0);
  CHECK(r.interval_growth.has_value());
  CHECK(r.grid_drift < 0.1);
  CHECK(r.refinement[2].max_ratio >= r.refinement[0].max_ratio);

  estimate::Counterexample ce;
  auto cs = quick(ce);
  cs.refine = true;
  const auto c = verify(cs);
  REQUIRE(c.table.has_value());
  CHECK(c.refinement.size() == 2);
  CHECK(report_csv(c).rfind("n,lhat,sobolev", 0) == 0);
}
