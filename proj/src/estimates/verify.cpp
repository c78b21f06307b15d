#include "gkdv/estimates/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gkdv/solver/nonlinearity.hpp"
#include "gkdv/spacetime/mixed_norm.hpp"
#include "gkdv/spacetime/pairs.hpp"
#include "gkdv/spacetime/retarded.hpp"
#include "gkdv/spectral/norms.hpp"
#include "gkdv/spectral/random_field.hpp"

namespace gkdv {
namespace {

using nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSecondStream = 0x100000000ULL;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double inv_exponent(double r) { return std::isinf(r) ? 0.0 : 1.0 / r; }
double from_inv(double inv) { return inv == 0.0 ? kInf : 1.0 / inv; }

TimeTrace riesz(const TimeTrace& t, double s) {
  if (s == 0.0) return t;
  return t.map([s](const SpectralField& f) { return riesz_potential(f, s); });
}

double mixed(const TimeTrace& t, double s, double p, double q) { return mixed_norm(riesz(t, s), p, q); }

/// Pointwise op(u(t, x)) on the rho-times refined grid.
TimeTrace pointwise(const TimeTrace& u, const std::function<double(double)>& op, std::size_t rho) {
  const Grid1D fine(u.grid().half_length(), u.grid().size() * rho);
  return u.map([&](const SpectralField& f) {
    auto s = padded_samples(f, rho);
    for (double& v : s) v = op(v);
    return forward_transform(std::span<const double>(s), fine);
  });
}

TimeTrace product(const TimeTrace& a, const TimeTrace& b, std::size_t rho) {
  const Grid1D fine(a.grid().half_length(), a.grid().size() * rho);
  std::vector<SpectralField> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto x = padded_samples(a[i], rho);
    const auto y = padded_samples(b[i], rho);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] *= y[j];
    out.push_back(forward_transform(std::span<const double>(x), fine));
  }
  return TimeTrace(std::vector<double>(a.times().begin(), a.times().end()), std::move(out));
}

RatioSample make(double lhs, double rhs) { return {lhs, rhs, lhs / rhs}; }

struct Summary {
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  bool all_finite = true;
};

Summary summarize(const std::vector<RatioSample>& s) {
  Summary out;
  double sum = 0.0;
  for (const auto& r : s) {
    if (!std::isfinite(r.ratio)) {
      out.all_finite = false;
      out.max_ratio = kInf;
      continue;
    }
    out.max_ratio = std::max(out.max_ratio, r.ratio);
    sum += r.ratio;
  }
  out.mean_ratio = out.all_finite && !s.empty() ? sum / static_cast<double>(s.size()) : kInf;
  return out;
}

double rel_drift(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a == 0.0) return kInf;
  return std::abs(b - a) / a;
}

std::size_t default_samples(double t_end) {
  return static_cast<std::size_t>(std::ceil(128.0 * t_end - 1e-9));
}

}  // namespace

SpectralField estimate_datum(const Grid1D& base, std::uint64_t seed, std::size_t index) {
  static constexpr double kDecays[] = {0.6, 1.0, 1.6};
  const auto f = random_band_limited(base, kDecays[index % 3], base.size() / 8, derive_seed(seed, index));
  auto s = real_samples(f);
  const double width = base.half_length() / 8.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double x = base.x(j);
    s[j] *= std::exp(-x * x / (2.0 * width * width));
  }
  const auto u = forward_transform(std::span<const double>(s), base).mean_free();
  const double n = lhat_norm(u, 2.0);
  return n > 0.0 ? u * (1.0 / n) : u;
}

RatioSample evaluate_sample(const EstimateKind& resolved, const Grid1D& base, std::size_t points, double t_end,
                            std::size_t time_samples, std::uint64_t seed, std::size_t index, double amplitude) {
  using namespace estimate;
  const SpectralField u0 = resample(estimate_datum(base, seed, index), points) * amplitude;
  auto second = [&] {
    return resample(estimate_datum(base, seed, index + kSecondStream), points) * amplitude;
  };
  const auto times = uniform_times(0.0, t_end, time_samples + 1);
  auto free = [&times](const SpectralField& f) { return free_evolution(f, times, 0.0); };

  auto inhom_forcing = [&](const SpectralField& h1, const SpectralField& h2) {
    std::vector<SpectralField> fs;
    for (double t : times) {
      const auto h = airy_propagate(h1, t) + h2 * std::sin(2.0 * std::numbers::pi * t / t_end);
      fs.push_back(derivative(h));
    }
    return TimeTrace(times, std::move(fs));
  };
  auto inhom_rhs = [](const TimeTrace& F, double r, double s2) {
    const auto e = exponent_map(s2, conjugate_exponent(r));
    return mixed(F, -s2, conjugate_exponent(e.p()), conjugate_exponent(e.q()));
  };

  return std::visit(
      Overloaded{
          [&](const SteinTomas& e) {
            const double s = inv_exponent(e.r);
            return make(mixed(free(u0), s, e.r, e.r), lhat_norm(u0, std::isinf(e.r) ? kInf : e.r / 3.0));
          },
          [&](const KenigRuiz&) { return make(mixed(free(u0), -0.25, 4.0, kInf), lhat_norm(u0, 2.0)); },
          [&](const Kato& e) {
            return make(mixed(free(u0), 2.0 * inv_exponent(e.q), kInf, e.q), lhat_norm(u0, e.q));
          },
          [&](const Strichartz& e) { return make(xnorm(free(u0), e.s, e.r), lhat_norm(u0, e.r)); },
          [&](const InhomLinf& e) {
            const auto F = inhom_forcing(u0, second());
            const auto I = retarded_integral(F, 0);
            double lhs = 0.0;
            for (const auto& f : I.fields()) lhs = std::max(lhs, lhat_norm(f, e.r));
            return make(lhs, inhom_rhs(F, e.r, *e.s2));
          },
          [&](const InhomXY& e) {
            const auto F = inhom_forcing(u0, second());
            const auto I = retarded_integral(F, 0);
            const auto ex = exponent_map(*e.s1, e.r);
            return make(mixed(I, *e.s1, ex.p(), ex.q()), inhom_rhs(F, e.r, *e.s2));
          },
          [&](const Interpolation& e) {
            const auto u = free(u0);
            const double th = e.theta;
            const double p = from_inv(th / e.first.p + (1.0 - th) / e.second.p);
            const double q = from_inv(th / e.first.q + (1.0 - th) / e.second.q);
            const double s = th * e.first.s + (1.0 - th) * e.second.s;
            const double rhs = std::pow(mixed(u, e.first.s, e.first.p, e.first.q), th) *
                               std::pow(mixed(u, e.second.s, e.second.p, e.second.q), 1.0 - th);
            return make(mixed(u, s, p, q), rhs);
          },
          [&](const Leibniz& e) {
            const auto f = free(u0);
            const auto g = free(second());
            const double p = from_inv(1.0 / e.p1 + 1.0 / e.p2);
            const double q = from_inv(1.0 / e.q1 + 1.0 / e.q2);
            const double rhs = mixed(f, e.s, e.p1, e.q1) * mixed(g, 0.0, e.p2, e.q2) +
                               mixed(f, 0.0, e.p3, e.q3) * mixed(g, e.s, e.p4, e.q4);
            return make(mixed(product(f, g, 2), e.s, p, q), rhs);
          },
          [&](const ChainRule& e) {
            const auto f = free(u0);
            const auto G = NonlinearityG::power(e.mu, 1.0);
            const auto Gf = pointwise(f, [&G](double z) { return G(z); }, 2);
            const double p = from_inv((e.mu - 1.0) / e.p1 + 1.0 / e.p2);
            const double q = from_inv((e.mu - 1.0) / e.q1 + 1.0 / e.q2);
            const double lip = lip_norm_estimate(G, e.mu, 1.0, 512).value;
            const double rhs = lip * std::pow(mixed(f, 0.0, e.p1, e.q1), e.mu - 1.0) * mixed(f, e.s, e.p2, e.q2);
            return make(mixed(Gf, e.s, p, q), rhs);
          },
          [&](const NonlinearI& e) {
            const auto u = free(u0);
            const auto G = NonlinearityG::power(e.alpha, 1.0);
            const auto Gu = pointwise(u, [&G](double z) { return G(z); }, 2);
            const double crit = 0.5 * (e.alpha - 1.0);
            const double rhs = std::pow(snorm(u, crit), e.alpha - 1.0) * xnorm(u, *e.s, *e.r);
            return make(ynorm(Gu, *e.s, *e.r), rhs);
          },
          [&](const NonlinearII& e) {
            const auto u = free(u0);
            const auto v = free(u0 + second() * 0.5);
            const auto G = NonlinearityG::power(e.alpha, 1.0);
            const auto op = [&G](double z) { return G(z); };
            const auto diff = pointwise(u, op, 2) - pointwise(v, op, 2);
            const double crit = 0.5 * (e.alpha - 1.0);
            const double su = snorm(u, crit), sv = snorm(v, crit), sd = snorm(u - v, crit);
            const double xu = xnorm(u, *e.s, *e.r), xv = xnorm(v, *e.s, *e.r), xd = xnorm(u - v, *e.s, *e.r);
            const double rhs =
                (xu + xv) * std::pow(su + sv, e.alpha - 2.0) * sd + std::pow(su + sv, e.alpha - 1.0) * xd;
            return make(ynorm(diff, *e.s, *e.r), rhs);
          },
          [&](const Inclusion& e) {
            const bool low = e.r <= 2.0;
            double hat = lhat_norm(u0, e.r);
            double other = 0.0;
            if (e.which == 1) {
              other = lebesgue_norm(u0, e.r);
            } else if (e.which == 2) {
              other = weighted_norm(u0, inv_exponent(e.r) - 0.5);
            } else {
              const double b = 0.5 - inv_exponent(e.r);
              other = besov_norm(u0, b, conjugate_exponent(e.r));
              // L-hat^r embeds into the Besov space for r <= 2, the reverse for r >= 2.
              return low ? make(other, hat) : make(hat, other);
            }
            return low ? make(hat, other) : make(other, hat);
          },
          [&](const Counterexample&) -> RatioSample {
            throw std::invalid_argument("counterexample families are tabulated, not sampled");
          },
      },
      resolved);
}

EstimateReport verify(const EstimateSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  EstimateReport rep;
  rep.spec = spec;
  rep.spec.kind = resolve_estimate(spec.kind);
  rep.id = estimate_id(rep.spec.kind);
  rep.params = estimate_params(rep.spec.kind);
  if (spec.ensemble == 0) throw std::invalid_argument("ensemble must be at least 1");
  if (!(spec.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");

  if (const auto* ce = std::get_if<estimate::Counterexample>(&rep.spec.kind)) {
    rep.table = counterexample_table(*ce);
    for (const auto& row : rep.table->rows) rep.samples.push_back(make(row.sobolev, row.lhat));
    const auto sum = summarize(rep.samples);
    rep.max_ratio = sum.max_ratio;
    rep.mean_ratio = sum.mean_ratio;
    rep.all_finite = sum.all_finite;
    rep.refinement.push_back({"base", rep.table->points, 0, 0.0, rep.samples.size(), sum.max_ratio,
                              sum.mean_ratio, sum.all_finite});
    if (spec.refine) {
      const std::size_t m = rep.table->family == CounterexampleFamily::f_n ? 32 : 128;
      const auto fine = counterexample_table(*ce, m);
      std::vector<RatioSample> s;
      for (const auto& row : fine.rows) s.push_back(make(row.sobolev, row.lhat));
      const auto fs = summarize(s);
      rep.refinement.push_back({"lattice/2", fine.points, 0, 0.0, s.size(), fs.max_ratio, fs.mean_ratio, fs.all_finite});
      rep.grid_drift = rel_drift(sum.max_ratio, fs.max_ratio);
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }

  const Grid1D base(spec.half_length, spec.points);
  rep.time_samples = spec.time_samples ? spec.time_samples : default_samples(spec.t_end);
  const std::size_t M = rep.time_samples;
  const auto& kind = rep.spec.kind;

  for (std::size_t i = 0; i < spec.ensemble; ++i) {
    const auto s = evaluate_sample(kind, base, spec.points, spec.t_end, M, spec.seed, i);
    const auto big = evaluate_sample(kind, base, spec.points, spec.t_end, M, spec.seed, i, 10.0);
    rep.homogeneity_defect = std::max(rep.homogeneity_defect, std::abs(big.ratio - s.ratio) / std::abs(s.ratio));
    rep.samples.push_back(s);
  }
  const auto sum = summarize(rep.samples);
  rep.max_ratio = sum.max_ratio;
  rep.mean_ratio = sum.mean_ratio;
  rep.all_finite = sum.all_finite;
  rep.refinement.push_back({"base", spec.points, M, spec.t_end, spec.ensemble, sum.max_ratio, sum.mean_ratio, sum.all_finite});

  if (spec.refine) {
    std::vector<RatioSample> fine;
    for (std::size_t i = 0; i < spec.ensemble; ++i) {
      fine.push_back(evaluate_sample(kind, base, 2 * spec.points, spec.t_end, 2 * M, spec.seed, i));
    }
    const auto fs = summarize(fine);
    rep.refinement.push_back({"grid", 2 * spec.points, 2 * M, spec.t_end, spec.ensemble, fs.max_ratio, fs.mean_ratio, fs.all_finite});
    rep.grid_drift = rel_drift(sum.max_ratio, fs.max_ratio);

    std::vector<RatioSample> wide = rep.samples;
    for (std::size_t i = spec.ensemble; i < 2 * spec.ensemble; ++i) {
      wide.push_back(evaluate_sample(kind, base, spec.points, spec.t_end, M, spec.seed, i));
    }
    const auto ws = summarize(wide);
    rep.refinement.push_back({"ensemble", spec.points, M, spec.t_end, 2 * spec.ensemble, ws.max_ratio, ws.mean_ratio, ws.all_finite});
    rep.ensemble_drift = rel_drift(sum.max_ratio, ws.max_ratio);

    const bool interval_dependent = std::holds_alternative<estimate::InhomLinf>(kind) ||
                                    std::holds_alternative<estimate::InhomXY>(kind) ||
                                    std::holds_alternative<estimate::ChainRule>(kind);
    if (interval_dependent) {
      std::vector<RatioSample> longer;
      for (std::size_t i = 0; i < spec.ensemble; ++i) {
        longer.push_back(evaluate_sample(kind, base, spec.points, 2.0 * spec.t_end, 2 * M, spec.seed, i));
      }
      const auto ls = summarize(longer);
      rep.refinement.push_back({"interval", spec.points, 2 * M, 2.0 * spec.t_end, spec.ensemble, ls.max_ratio, ls.mean_ratio, ls.all_finite});
      rep.interval_growth = ls.max_ratio / sum.max_ratio;
    }
  }
  if (std::holds_alternative<estimate::ChainRule>(kind)) {
    const auto& e = std::get<estimate::ChainRule>(kind);
    rep.lip_norm = lip_norm_estimate(NonlinearityG::power(e.mu, 1.0), e.mu, 1.0, 512);
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

json report_json(const EstimateReport& r) {
  json j;
  j["id"] = r.id;
  j["params"] = r.params;
  j["seed"] = r.spec.seed;
  j["N"] = r.table ? r.table->points : r.spec.points;
  j["L"] = r.table ? std::numbers::pi / r.table->dxi : r.spec.half_length;
  j["M"] = r.time_samples;
  j["T"] = r.spec.t_end;
  j["ensemble"] = r.spec.ensemble;
  j["max_ratio"] = number_json(r.max_ratio);
  j["empirical_C"] = number_json(r.max_ratio);
  j["mean_ratio"] = number_json(r.mean_ratio);
  j["all_finite"] = r.all_finite;
  json ref = json::array();
  for (const auto& e : r.refinement) {
    ref.push_back({{"label", e.label},
                   {"N", e.points},
                   {"M", e.time_samples},
                   {"T", e.t_end},
                   {"ensemble", e.ensemble},
                   {"max_ratio", number_json(e.max_ratio)},
                   {"mean_ratio", number_json(e.mean_ratio)},
                   {"all_finite", e.all_finite}});
  }
  j["refinement"] = ref;
  if (r.refinement.size() > 1) {
    j["grid_drift"] = number_json(r.grid_drift);
    if (!r.table) j["ensemble_drift"] = number_json(r.ensemble_drift);
  }
  if (r.interval_growth) j["interval_growth"] = number_json(*r.interval_growth);
  if (!r.table) j["homogeneity_defect"] = number_json(r.homogeneity_defect);
  json ratios = json::array();
  for (const auto& s : r.samples) ratios.push_back(number_json(s.ratio));
  j["ratios"] = ratios;
  if (r.table) {
    json rows = json::array();
    for (const auto& row : r.table->rows) {
      rows.push_back({{"n", row.n},
                      {"lhat", number_json(row.lhat)},
                      {"sobolev", number_json(row.sobolev)},
                      {"lhat_exact", number_json(row.lhat_exact)},
                      {"sobolev_exact", number_json(row.sobolev_exact)}});
    }
    j["table"] = {{"family", r.table->family == CounterexampleFamily::f_n ? "fn" : "gn"},
                  {"r", number_json(r.table->r)},
                  {"p", r.table->p},
                  {"sobolev_limit", number_json(r.table->sobolev_limit)},
                  {"dxi", r.table->dxi},
                  {"points", r.table->points},
                  {"rows", rows}};
  }
  if (r.lip_norm) {
    j["lip_norm"] = {{"value", number_json(r.lip_norm->value)},
                     {"derivative_terms", r.lip_norm->derivative_terms},
                     {"holder_term", number_json(r.lip_norm->holder_term)},
                     {"z_min", r.lip_norm->z_min}};
  }
  return j;
}

std::string report_csv(const EstimateReport& r) {
  std::ostringstream out;
  out.precision(17);
  if (r.table) {
    out << "n,lhat,sobolev,lhat_exact,sobolev_exact\n";
    for (const auto& row : r.table->rows) {
      out << row.n << ',' << row.lhat << ',' << row.sobolev << ',' << row.lhat_exact << ',' << row.sobolev_exact << '\n';
    }
    return out.str();
  }
  out << "sample,lhs,rhs,ratio\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    out << i << ',' << s.lhs << ',' << s.rhs << ',' << s.ratio << '\n';
  }
  return out.str();
}

}  // namespace gkdv
