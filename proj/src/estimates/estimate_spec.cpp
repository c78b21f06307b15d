#include "gkdv/estimates/estimate_spec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gkdv/solver/picard.hpp"
#include "gkdv/spacetime/pairs.hpp"

namespace gkdv {
namespace {

using nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

json number_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

double read_number(const json& params, const std::string& key) {
  const json& v = params.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    try {
      std::size_t used = 0;
      const double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
  }
  fail("parameter '" + key + "' must be a number, got " + v.dump());
}

std::vector<long> read_list(const json& params, const std::string& key) {
  const json& v = params.at(key);
  std::vector<long> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) fail("parameter '" + key + "' must hold integers, got " + v.dump());
      out.push_back(e.get<long>());
    }
  } else if (v.is_string()) {
    std::stringstream in(v.get<std::string>());
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stol(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        fail("parameter '" + key + "' must be a comma-separated list of integers, got " + v.dump());
      }
    }
  } else if (v.is_number_integer()) {
    out.push_back(v.get<long>());
  } else {
    fail("parameter '" + key + "' must be a list of integers, got " + v.dump());
  }
  return out;
}

void check_keys(const std::string& id, const json& params, std::initializer_list<const char*> allowed) {
  if (params.is_null()) return;
  if (!params.is_object()) fail("parameters of '" + id + "' must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : params.items()) {
    if (!ok.contains(k)) fail("unknown parameter '" + k + "' for estimate '" + id + "'");
  }
}

void opt_number(const json& params, const char* key, double& target) {
  if (params.is_object() && params.contains(key)) target = read_number(params, key);
}

void opt_number(const json& params, const char* key, std::optional<double>& target) {
  if (params.is_object() && params.contains(key)) target = read_number(params, key);
}

void require_open_unit(double p, const std::string& name, const std::string& id) {
  if (!(p > 1.0 && p < kInf)) fail(id + " requires " + name + " in (1, inf), got " + fmt(p));
}

}  // namespace

bool SRange::contains(double s) const {
  const bool above = lo_closed ? s >= lo - kSlack : s > lo + kSlack;
  const bool below = hi_closed ? s <= hi + kSlack : s < hi - kSlack;
  return above && below;
}

SRange homogeneous_s_range(double inv_r) {
  const double a = inv_r;
  SRange out;
  const double lo_closed = -0.5 * a;
  const double lo_open = 2.0 * a - 1.25;
  out.lo = std::max(lo_closed, lo_open);
  out.lo_closed = lo_closed > lo_open;
  const double hi_closed = 2.0 * a;
  const double hi_open = 2.5 - 3.0 * a;
  out.hi = std::min(hi_closed, hi_open);
  out.hi_closed = hi_closed < hi_open;
  return out;
}

const std::vector<std::string>& estimate_ids() {
  static const std::vector<std::string> ids{
      "stein_tomas", "kenig_ruiz", "kato",        "strichartz",  "inhom_linf", "inhom_xy",      "interpolation",
      "leibniz",     "chain_rule", "nonlinear_i", "nonlinear_ii", "inclusion", "counterexample"};
  return ids;
}

std::string estimate_id(const EstimateKind& kind) { return estimate_ids()[kind.index()]; }

json estimate_params(const EstimateKind& kind) {
  using namespace estimate;
  return std::visit(
      Overloaded{
          [](const SteinTomas& e) { return json{{"r", number_or_inf(e.r)}}; },
          [](const KenigRuiz&) { return json::object(); },
          [](const Kato& e) { return json{{"q", number_or_inf(e.q)}}; },
          [](const Strichartz& e) { return json{{"s", e.s}, {"r", number_or_inf(e.r)}}; },
          [](const InhomLinf& e) {
            json j{{"r", e.r}};
            if (e.s2) j["s2"] = *e.s2;
            return j;
          },
          [](const InhomXY& e) {
            json j{{"r", e.r}};
            if (e.s1) j["s1"] = *e.s1;
            if (e.s2) j["s2"] = *e.s2;
            return j;
          },
          [](const Interpolation& e) {
            return json{{"theta", e.theta}, {"p1", e.first.p},  {"q1", e.first.q},  {"s1", e.first.s},
                        {"p2", e.second.p}, {"q2", e.second.q}, {"s2", e.second.s}};
          },
          [](const Leibniz& e) {
            return json{{"s", e.s},   {"p1", e.p1}, {"q1", e.q1}, {"p2", e.p2}, {"q2", e.q2},
                        {"p3", e.p3}, {"q3", e.q3}, {"p4", e.p4}, {"q4", e.q4}};
          },
          [](const ChainRule& e) {
            return json{{"mu", e.mu}, {"s", e.s}, {"p1", e.p1}, {"q1", e.q1}, {"p2", e.p2}, {"q2", e.q2}};
          },
          [](const NonlinearI& e) {
            json j{{"alpha", e.alpha}};
            if (e.s) j["s"] = *e.s;
            if (e.r) j["r"] = *e.r;
            return j;
          },
          [](const NonlinearII& e) {
            json j{{"alpha", e.alpha}};
            if (e.s) j["s"] = *e.s;
            if (e.r) j["r"] = *e.r;
            return j;
          },
          [](const Inclusion& e) { return json{{"case", e.which}, {"r", number_or_inf(e.r)}}; },
          [](const Counterexample& e) {
            json j{{"family", e.family == CounterexampleFamily::f_n ? "fn" : "gn"},
                   {"r", number_or_inf(e.r)},
                   {"n", e.n}};
            if (e.p) j["p"] = *e.p;
            return j;
          },
      },
      kind);
}

EstimateKind parse_estimate(const std::string& id, const json& params) {
  using namespace estimate;
  const json& p = params;
  if (id == "stein_tomas") {
    check_keys(id, p, {"r"});
    SteinTomas e;
    opt_number(p, "r", e.r);
    return e;
  }
  if (id == "kenig_ruiz") {
    check_keys(id, p, {});
    return KenigRuiz{};
  }
  if (id == "kato") {
    check_keys(id, p, {"q"});
    Kato e;
    opt_number(p, "q", e.q);
    return e;
  }
  if (id == "strichartz") {
    check_keys(id, p, {"s", "r"});
    Strichartz e;
    opt_number(p, "s", e.s);
    opt_number(p, "r", e.r);
    return e;
  }
  if (id == "inhom_linf") {
    check_keys(id, p, {"r", "s2"});
    InhomLinf e;
    opt_number(p, "r", e.r);
    opt_number(p, "s2", e.s2);
    return e;
  }
  if (id == "inhom_xy") {
    check_keys(id, p, {"r", "s1", "s2"});
    InhomXY e;
    opt_number(p, "r", e.r);
    opt_number(p, "s1", e.s1);
    opt_number(p, "s2", e.s2);
    return e;
  }
  if (id == "interpolation") {
    check_keys(id, p, {"theta", "p1", "q1", "s1", "p2", "q2", "s2"});
    Interpolation e;
    opt_number(p, "theta", e.theta);
    opt_number(p, "p1", e.first.p);
    opt_number(p, "q1", e.first.q);
    opt_number(p, "s1", e.first.s);
    opt_number(p, "p2", e.second.p);
    opt_number(p, "q2", e.second.q);
    opt_number(p, "s2", e.second.s);
    return e;
  }
  if (id == "leibniz") {
    check_keys(id, p, {"s", "p1", "q1", "p2", "q2", "p3", "q3", "p4", "q4"});
    Leibniz e;
    opt_number(p, "s", e.s);
    opt_number(p, "p1", e.p1);
    opt_number(p, "q1", e.q1);
    opt_number(p, "p2", e.p2);
    opt_number(p, "q2", e.q2);
    opt_number(p, "p3", e.p3);
    opt_number(p, "q3", e.q3);
    opt_number(p, "p4", e.p4);
    opt_number(p, "q4", e.q4);
    return e;
  }
  if (id == "chain_rule") {
    check_keys(id, p, {"mu", "s", "p1", "q1", "p2", "q2"});
    ChainRule e;
    opt_number(p, "mu", e.mu);
    opt_number(p, "s", e.s);
    opt_number(p, "p1", e.p1);
    opt_number(p, "q1", e.q1);
    opt_number(p, "p2", e.p2);
    opt_number(p, "q2", e.q2);
    return e;
  }
  if (id == "nonlinear_i" || id == "nonlinear_ii") {
    check_keys(id, p, {"alpha", "s", "r"});
    double alpha = 5.0;
    std::optional<double> s, r;
    opt_number(p, "alpha", alpha);
    opt_number(p, "s", s);
    opt_number(p, "r", r);
    if (id == "nonlinear_i") return NonlinearI{alpha, s, r};
    return NonlinearII{alpha, s, r};
  }
  if (id == "inclusion") {
    check_keys(id, p, {"case", "r"});
    Inclusion e;
    if (p.is_object() && p.contains("case")) {
      const json& c = p.at("case");
      if (c.is_number_integer()) {
        e.which = c.get<int>();
      } else if (c.is_string() && (c == "i" || c == "ii" || c == "iii")) {
        e.which = static_cast<int>(c.get<std::string>().size());
      } else {
        fail("parameter 'case' must be 1, 2, 3 (or i, ii, iii), got " + c.dump());
      }
    }
    opt_number(p, "r", e.r);
    return e;
  }
  if (id == "counterexample") {
    check_keys(id, p, {"family", "r", "n", "p"});
    Counterexample e;
    if (p.is_object() && p.contains("family")) {
      const json& f = p.at("family");
      if (f == "fn" || f == "f_n") {
        e.family = CounterexampleFamily::f_n;
      } else if (f == "gn" || f == "g_n") {
        e.family = CounterexampleFamily::g_n;
        if (!p.contains("n")) e.n = {8, 64, 512};
      } else {
        fail("parameter 'family' must be fn or gn, got " + f.dump());
      }
    }
    opt_number(p, "r", e.r);
    if (p.is_object() && p.contains("n")) e.n = read_list(p, "n");
    opt_number(p, "p", e.p);
    return e;
  }
  fail("unknown estimate id '" + id + "'");
}

EstimateKind resolve_estimate(const EstimateKind& kind) {
  using namespace estimate;
  return std::visit(
      Overloaded{
          [](SteinTomas e) -> EstimateKind {
            if (!(e.r > 4.0 + kSlack)) fail("stein_tomas requires r > 4 (2/(r-2) < 1), got r = " + fmt(e.r));
            return e;
          },
          [](KenigRuiz e) -> EstimateKind { return e; },
          [](Kato e) -> EstimateKind {
            if (!(e.q >= 2.0)) fail("kato requires q in [2, inf], got q = " + fmt(e.q));
            return e;
          },
          [](Strichartz e) -> EstimateKind {
            const auto pc = classify_pair(e.s, e.r);
            if (!pc.acceptable) fail("strichartz requires an acceptable pair: " + pc.violation);
            return e;
          },
          [](InhomLinf e) -> EstimateKind {
            if (!(e.r > 4.0 / 3.0 && e.r < 4.0)) fail("inhom_linf requires 4/3 < r < 4, got r = " + fmt(e.r));
            const auto range = homogeneous_s_range(1.0 - 1.0 / e.r);
            if (!e.s2) e.s2 = range.midpoint();
            if (!range.contains(*e.s2)) {
              fail("inhom_linf requires (s2, r') in the homogeneous range: s2 in (" + fmt(range.lo) + ", " +
                   fmt(range.hi) + "), got s2 = " + fmt(*e.s2));
            }
            return e;
          },
          [](InhomXY e) -> EstimateKind {
            if (!(e.r > 4.0 / 3.0 && e.r < 4.0)) fail("inhom_xy requires 4/3 < r < 4, got r = " + fmt(e.r));
            const auto r2 = homogeneous_s_range(1.0 - 1.0 / e.r);
            const auto r1 = homogeneous_s_range(1.0 / e.r);
            if (!e.s2) e.s2 = r2.midpoint();
            if (!e.s1) e.s1 = r1.midpoint();
            if (!r2.contains(*e.s2)) {
              fail("inhom_xy requires (s2, r') in the homogeneous range: s2 in (" + fmt(r2.lo) + ", " +
                   fmt(r2.hi) + "), got s2 = " + fmt(*e.s2));
            }
            if (!r1.contains(*e.s1)) {
              fail("inhom_xy requires (s1, r) in the homogeneous range: s1 in (" + fmt(r1.lo) + ", " +
                   fmt(r1.hi) + "), got s1 = " + fmt(*e.s1));
            }
            return e;
          },
          [](Interpolation e) -> EstimateKind {
            if (!(e.theta > 0.0 && e.theta < 1.0)) fail("interpolation requires theta in (0, 1), got " + fmt(e.theta));
            require_open_unit(e.first.p, "p1", "interpolation");
            require_open_unit(e.first.q, "q1", "interpolation");
            require_open_unit(e.second.p, "p2", "interpolation");
            require_open_unit(e.second.q, "q2", "interpolation");
            return e;
          },
          [](Leibniz e) -> EstimateKind {
            if (!(e.s >= 0.0)) fail("leibniz requires s >= 0, got " + fmt(e.s));
            for (auto [v, n] : {std::pair{e.p1, "p1"}, {e.q1, "q1"}, {e.p2, "p2"}, {e.q2, "q2"}, {e.p3, "p3"},
                                {e.q3, "q3"}, {e.p4, "p4"}, {e.q4, "q4"}}) {
              require_open_unit(v, n, "leibniz");
            }
            const double ip = 1.0 / e.p1 + 1.0 / e.p2, iq = 1.0 / e.q1 + 1.0 / e.q2;
            if (std::abs(ip - (1.0 / e.p3 + 1.0 / e.p4)) > kSlack)
              fail("leibniz requires 1/p1 + 1/p2 = 1/p3 + 1/p4");
            if (std::abs(iq - (1.0 / e.q3 + 1.0 / e.q4)) > kSlack)
              fail("leibniz requires 1/q1 + 1/q2 = 1/q3 + 1/q4");
            if (!(ip < 1.0 && iq < 1.0)) fail("leibniz requires the product exponents p, q in (1, inf)");
            return e;
          },
          [](ChainRule e) -> EstimateKind {
            if (!(e.mu > 1.0)) fail("chain_rule requires mu > 1, got " + fmt(e.mu));
            if (!(e.s > 0.0 && e.s < e.mu)) fail("chain_rule requires s in (0, mu), got s = " + fmt(e.s));
            for (auto [v, n] : {std::pair{e.p1, "p1"}, {e.q1, "q1"}, {e.p2, "p2"}, {e.q2, "q2"}}) {
              require_open_unit(v, n, "chain_rule");
            }
            const double ip = (e.mu - 1.0) / e.p1 + 1.0 / e.p2, iq = (e.mu - 1.0) / e.q1 + 1.0 / e.q2;
            if (!(ip < 1.0 && iq < 1.0)) {
              fail("chain_rule requires p, q in (1, inf) with 1/p = (mu-1)/p1 + 1/p2, 1/q = (mu-1)/q1 + 1/q2");
            }
            return e;
          },
          [](NonlinearI e) -> EstimateKind {
            if (!(e.alpha > 21.0 / 5.0 && e.alpha < 23.0 / 3.0))
              fail("nonlinear_i requires 21/5 < alpha < 23/3, got alpha = " + fmt(e.alpha));
            if (!e.s) e.s = s_L(e.alpha);
            if (!e.r) e.r = critical_exponent(e.alpha);
            const auto pc = classify_pair(*e.s, *e.r);
            if (!pc.acceptable) fail("nonlinear_i requires (s, r) acceptable: " + pc.violation);
            if (!pc.conjugate_acceptable) fail("nonlinear_i requires (s, r) conjugate-acceptable: " + pc.conjugate_violation);
            return e;
          },
          [](NonlinearII e) -> EstimateKind {
            if (!(e.alpha > 21.0 / 5.0 && e.alpha < 23.0 / 3.0))
              fail("nonlinear_ii requires 21/5 < alpha < 23/3, got alpha = " + fmt(e.alpha));
            if (!e.s) e.s = s_L(e.alpha);
            if (!e.r) e.r = critical_exponent(e.alpha);
            const auto pc = classify_pair(*e.s, *e.r);
            if (!pc.acceptable) fail("nonlinear_ii requires (s, r) acceptable: " + pc.violation);
            if (!pc.conjugate_acceptable) fail("nonlinear_ii requires (s, r) conjugate-acceptable: " + pc.conjugate_violation);
            return e;
          },
          [](Inclusion e) -> EstimateKind {
            if (e.which < 1 || e.which > 3) fail("inclusion case must be 1, 2 or 3, got " + std::to_string(e.which));
            if (!(e.r >= 1.0)) fail("inclusion requires r in [1, inf], got " + fmt(e.r));
            if (e.which == 2 && !(e.r > 1.0 && e.r < kInf)) fail("inclusion case 2 requires 1 < r < inf, got " + fmt(e.r));
            return e;
          },
          [](Counterexample e) -> EstimateKind {
            if (!(e.r > 2.0)) fail("counterexample families require 2 < r <= inf, got r = " + fmt(e.r));
            if (e.n.empty()) fail("counterexample requires at least one n");
            const long min_n = e.family == CounterexampleFamily::f_n ? 1 : 3;
            for (long n : e.n) {
              if (n < min_n) fail("counterexample requires n >= " + std::to_string(min_n) + ", got " + std::to_string(n));
            }
            if (e.family == CounterexampleFamily::g_n) {
              const double hi = 1.0 - 1.0 / e.r;
              if (!e.p) e.p = 0.5 * (0.5 + hi);
              if (!(*e.p > 0.5 && *e.p < hi)) {
                fail("g_n requires p in (1/2, 1/r') = (0.5, " + fmt(hi) + "), got p = " + fmt(*e.p));
              }
            }
            return e;
          },
      },
      kind);
}

}  // namespace gkdv
