#include "fracspec/asymptotics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

#include <nlohmann/json.hpp>

#include "fracspec/frst.hpp"
#include "fracspec/frwt.hpp"
#include "fracspec/io.hpp"
#include "fracspec/parallel.hpp"

namespace fracspec {

std::string_view to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::REZ1: return "REZ1";
    case TheoremId::TEAB1: return "TEAB1";
    case TheoremId::TE1_HYPOTHESES: return "TE1_HYPOTHESES";
    case TheoremId::TE3: return "TE3";
    case TheoremId::TE4: return "TE4";
    case TheoremId::TE5: return "TE5";
  }
  return "?";
}

TheoremId theorem_from_string(std::string_view s) {
  std::string k(s);
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (k == "rez1") return TheoremId::REZ1;
  if (k == "teab1") return TheoremId::TEAB1;
  if (k == "te1" || k == "te1_hypotheses") return TheoremId::TE1_HYPOTHESES;
  if (k == "te3") return TheoremId::TE3;
  if (k == "te4") return TheoremId::TE4;
  if (k == "te5") return TheoremId::TE5;
  throw Error(ErrorCode::InvalidArgument, "unknown theorem id '" + std::string(s) + "'");
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

std::vector<Probe> default_probes() {
  std::vector<Probe> out;
  for (const double xi : {0.5, 2.0})
    for (const double x : {-1.5, -0.5, 0.5, 1.5}) out.push_back({x, xi});
  return out;
}

namespace {

// Angle must sit in (0, upper) after reduction into [0, 2pi).
void require_interval(const FracParam& p, double upper, const char* label) {
  if (!p.regular() || !(p.alpha > 0.0) || !(p.alpha < upper))
    throw Error(ErrorCode::AngleOutsideTheoremRange,
                std::string("alpha = ") + format_double(p.alpha) + " outside " + label);
}

// t -> conj(g(xi (t - x))) e^{i freq t}.
TestFunction window_probe(const Window& g, double x, double xi, double freq) {
  TestFunction phi;
  phi.center = x;
  phi.width = g.decay_scale / std::abs(xi);
  phi.name = "window-probe";
  phi.eval = [g, x, xi, freq](double t) { return std::conj(g.eval(xi * (t - x))) * std::polar(1.0, freq * t); };
  const double f = std::abs(freq) + (g.packet ? std::abs(g.packet->mod * xi) : 0.0);
  if (f > 0.0) phi.panel = kPi / (2.0 * f);
  return phi;
}

using LhsFn = std::function<cplx(double x, double xi, double eps)>;
using LimitFn = std::function<cplx(double x, double xi)>;

struct TheoremSpec {
  TheoremId id;
  double offset;  // expected exponent minus m
  LhsFn lhs;
  LimitFn rhs;
  LimitFn derived;
};

AsymptoticReport run_check(const TheoremSpec& spec, const FracParam& p, const Window& g, const Distribution& f,
                           const CheckConfig& cfg) {
  cfg.seq.validate();
  AsymptoticReport rep;
  rep.theorem = spec.id;
  rep.alpha = p.alpha;
  rep.window = g.name;
  rep.distribution = f.describe();
  rep.eps = cfg.seq.eps;
  rep.slope_tol = cfg.slope_tol;
  rep.ratio_tol = cfg.ratio_tol;

  if (f.is_zero()) {
    rep.verdict = Verdict::NotApplicable;
    rep.notes.push_back("degenerate input: the distribution is identically zero");
    return rep;
  }
  const auto qa = cfg.qa ? cfg.qa : known_quasiasymptotics(f);
  if (!qa) throw Error(ErrorCode::InvalidArgument, "no known quasiasymptotics for " + f.describe());
  rep.m = qa->m;
  rep.slowly_varying = qa->L.name();
  rep.exponent_expected = qa->m + spec.offset;

  const std::size_t np = cfg.probes.size();
  const std::size_t ne = cfg.seq.eps.size();
  rep.probes.resize(np);
  std::vector<cplx> cells(np * ne);
  parallel_for(np * ne, [&](std::size_t c) {
    const Probe& pr = cfg.probes[c / ne];
    cells[c] = spec.lhs(pr.x, pr.xi, cfg.seq.eps[c % ne]);
  });
  parallel_for(np, [&](std::size_t i) {
    ProbeResult& r = rep.probes[i];
    r.probe = cfg.probes[i];
    r.lhs.assign(cells.begin() + static_cast<std::ptrdiff_t>(i * ne),
                 cells.begin() + static_cast<std::ptrdiff_t>((i + 1) * ne));
    r.rhs = spec.rhs(r.probe.x, r.probe.xi);
    r.rhs_derived = spec.derived(r.probe.x, r.probe.xi);
  });

  bool ok = true;
  for (auto& r : rep.probes) {
    std::vector<double> y(ne);
    for (std::size_t k = 0; k < ne; ++k) y[k] = std::abs(r.lhs[k]) / qa->L(cfg.seq.eps[k]);
    try {
      const auto fit = fit_log_slope(cfg.seq.eps, y);
      r.fitted_exponent = fit.slope;
      r.fit_residual = fit.residual;
    } catch (const Error&) {
      r.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    }
    const double slope_err = std::abs(r.fitted_exponent - rep.exponent_expected);
    if (!(slope_err <= cfg.slope_tol)) ok = false;
    rep.max_slope_error = std::max(rep.max_slope_error, std::isfinite(slope_err) ? slope_err : HUGE_VAL);

    r.rhs_zero = std::abs(r.rhs) < 1e-13;
    for (std::size_t k = 0; k < ne; ++k) {
      const double eps = cfg.seq.eps[k];
      if (eps > cfg.ratio_eps_max * (1.0 + 1e-12)) continue;
      const cplx scaled = r.lhs[k] / (std::pow(eps, rep.exponent_expected) * qa->L(eps));
      if (!r.rhs_zero) r.ratio_deviation = std::max(r.ratio_deviation, std::abs(scaled / r.rhs - 1.0));
      if (std::abs(r.rhs_derived) >= 1e-13)
        r.derived_ratio_deviation = std::max(r.derived_ratio_deviation, std::abs(scaled / r.rhs_derived - 1.0));
    }
    if (!r.rhs_zero && !(r.ratio_deviation <= cfg.ratio_tol)) ok = false;
    rep.max_ratio_deviation = std::max(rep.max_ratio_deviation, r.ratio_deviation);
    rep.max_derived_ratio_deviation = std::max(rep.max_derived_ratio_deviation, r.derived_ratio_deviation);
  }
  if (std::all_of(rep.probes.begin(), rep.probes.end(), [](const ProbeResult& r) { return r.rhs_zero; }))
    rep.notes.push_back("the stated limit vanishes at every probe; only exponents are judged");
  if (rep.max_ratio_deviation > cfg.ratio_tol && rep.max_derived_ratio_deviation <= cfg.ratio_tol)
    rep.notes.push_back("ratios fail against the stated limit but converge to the limit from direct substitution");
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return rep;
}

double frst_phase(const FracParam& p, double xi) { return -0.5 * p.c1 * xi * xi; }

}  // namespace

AsymptoticReport check_rez1(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg) {
  require_interval(p, kPi, "(0, pi)");
  const FracParam cl = classical_param();
  const auto qa = cfg.qa ? cfg.qa : known_quasiasymptotics(f);
  const double m = qa ? qa->m : 0.0;
  const Distribution u = qa ? qa->u : zero_distribution();
  const cplx pre = std::sqrt(cplx(1.0, -p.c1)) / std::pow(p.c2, m);
  TheoremSpec spec{
      TheoremId::REZ1, 0.0,
      [&](double x, double xi, double eps) {
        return std::polar(1.0, frst_phase(p, xi / eps)) * frst_point(p, g, f, eps * x, xi / eps);
      },
      [&](double x, double xi) { return pre * frst_point(cl, g, u, x * p.c2, xi / p.c2); },
      [&](double x, double xi) { return p.c_alpha * std::abs(xi) * pair(u, window_probe(g, x, xi, -p.c2 * xi)); }};
  auto rep = run_check(spec, p, g, f, cfg);
  return rep;
}

AsymptoticReport check_teab1(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg) {
  require_interval(p, kPi, "(0, pi)");
  const FracParam cl = classical_param();
  const auto qa = cfg.qa ? cfg.qa : known_quasiasymptotics(f);
  const double m = qa ? qa->m : 0.0;
  const Distribution u = qa ? qa->u : zero_distribution();
  const cplx pre = std::sqrt(cplx(1.0, -p.c1)) / std::pow(p.c2, m);
  TheoremSpec spec{
      TheoremId::TEAB1, 2.0,
      [&](double x, double xi, double eps) {
        const Window gd = dilate(g, 1.0 / (eps * eps));
        return std::polar(1.0, frst_phase(p, eps * xi)) * frst_point(p, gd, f, eps * x, eps * xi);
      },
      [&](double x, double xi) { return pre * frst_point(cl, g, modulate(u, xi / p.c2), x * p.c2, xi / p.c2); },
      [&](double x, double xi) { return p.c_alpha * std::abs(xi) * pair(u, window_probe(g, x, xi, 0.0)); }};
  return run_check(spec, p, g, f, cfg);
}

AsymptoticReport check_te3(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg) {
  require_interval(p, kPi / 2.0, "(0, pi/2)");
  const FracParam cl = classical_param();
  const auto qa = cfg.qa ? cfg.qa : known_quasiasymptotics(f);
  const double m = qa ? qa->m : 0.0;
  const Distribution u = qa ? qa->u : zero_distribution();
  const Window h = modulate(g, p.c2);
  const Window g1 = modulate(g, 1.0);
  const double pre = std::pow(p.c2, -(m + 0.5));
  TheoremSpec spec{
      TheoremId::TE3, 0.5,
      [&](double x, double xi, double eps) {
        return std::polar(1.0, 0.5 * p.c1 * eps * eps * x * x) * frwt_point(p, h, f, eps * x, eps / xi);
      },
      [&](double x, double xi) {
        return pre * std::polar(1.0, x * xi * (p.c2 - 1.0)) * frwt_point(cl, g1, u, x * p.c2, p.c2 / xi);
      },
      [&](double x, double xi) {
        return std::sqrt(xi) * std::polar(1.0, p.c2 * x * xi) * pair(u, window_probe(g, x, xi, -p.c2 * xi));
      }};
  auto rep = run_check(spec, p, g, f, cfg);
  rep.notes.push_back("one line of the proof omits the argument u of W_{M_1 g}; the statement's W_{M_1 g} u is used");
  return rep;
}

AsymptoticReport check_te4(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg) {
  require_interval(p, kPi / 2.0, "(0, pi/2)");
  const FracParam cl = classical_param();
  const auto qa = cfg.qa ? cfg.qa : known_quasiasymptotics(f);
  const double m = qa ? qa->m : 0.0;
  const Distribution u = qa ? qa->u : zero_distribution();
  const double pre = std::pow(p.c2, -(m + 0.5));
  TheoremSpec spec{
      TheoremId::TE4, 1.5,
      [&](double x, double xi, double eps) {
        const Window h = modulate(dilate(g, 1.0 / (eps * eps)), p.c2);
        return std::polar(1.0, 0.5 * p.c1 * eps * eps * x * x - p.c2 * eps * eps * x * xi) *
               frwt_point(p, h, f, eps * x, 1.0 / (eps * xi));
      },
      [&](double x, double xi) {
        return pre * std::polar(1.0, x * xi * (p.c2 - 1.0)) * frwt_point(cl, g, u, x * p.c2, p.c2 / xi);
      },
      [&](double x, double xi) { return std::sqrt(xi) * pair(u, window_probe(g, x, xi, 0.0)); }};
  auto rep = run_check(spec, p, g, f, cfg);
  rep.notes.push_back("the statement's W_g u is used; the proof's last line reads W_g f and drops e^{i x xi (c2-1)}");
  return rep;
}

AsymptoticReport check_te5(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg) {
  require_interval(p, kPi, "(0, pi)");
  for (const auto& pr : cfg.probes)
    if (!(pr.xi > 0.0)) throw Error(ErrorCode::InvalidArgument, "te5 probes need xi > 0");
  const FracParam cl = classical_param();
  const auto qa = cfg.qa ? cfg.qa : known_quasiasymptotics(f);
  const Distribution u = qa ? qa->u : zero_distribution();
  auto lhs = [&](double x, double xi, double eps) {
    return std::polar(1.0, frst_phase(p, xi / eps)) * frst_point(p, g, f, eps * eps * x, xi / eps);
  };
  TheoremSpec spec{
      TheoremId::TE5, 0.0, lhs,
      [&](double, double xi) {
        return p.c_alpha * std::sqrt(xi) * frwt_point(cl, g, modulate(u, -xi * p.c2), 0.0, 1.0 / xi);
      },
      [&](double, double xi) { return p.c_alpha * std::abs(xi) * pair(u, window_probe(g, 0.0, xi, -p.c2 * xi)); }};
  auto rep = run_check(spec, p, g, f, cfg);
  if (rep.verdict == Verdict::NotApplicable) return rep;

  // the limit does not depend on x: compare every probe with x = 0 at the same xi
  const std::size_t ne = cfg.seq.eps.size();
  rep.x_dependence.assign(ne, 0.0);
  std::vector<cplx> at_zero(ne * cfg.probes.size());
  parallel_for(at_zero.size(), [&](std::size_t c) {
    at_zero[c] = lhs(0.0, cfg.probes[c / ne].xi, cfg.seq.eps[c % ne]);
  });
  for (std::size_t i = 0; i < cfg.probes.size(); ++i)
    for (std::size_t k = 0; k < ne; ++k) {
      const cplx z = at_zero[i * ne + k];
      const double dev = std::abs(z) > 0.0 ? std::abs(rep.probes[i].lhs[k] - z) / std::abs(z) : HUGE_VAL;
      rep.x_dependence[k] = std::max(rep.x_dependence[k], dev);
    }
  if (!(rep.x_dependence.back() <= cfg.ratio_tol)) {
    rep.verdict = Verdict::Fail;
    rep.notes.push_back("x-dependence of the left-hand side does not decay below ratio_tol");
  }
  if (std::abs(g.eval(0.0)) == 0.0)
    rep.notes.push_back("g(0) = 0, so the limit vanishes for u = delta; choose a window with g(0) != 0");
  return rep;
}

AsymptoticReport check_theorem(TheoremId id, const FracParam& p, const Window& g, const Distribution& f,
                               const CheckConfig& cfg) {
  switch (id) {
    case TheoremId::REZ1: return check_rez1(p, g, f, cfg);
    case TheoremId::TEAB1: return check_teab1(p, g, f, cfg);
    case TheoremId::TE3: return check_te3(p, g, f, cfg);
    case TheoremId::TE4: return check_te4(p, g, f, cfg);
    case TheoremId::TE5: return check_te5(p, g, f, cfg);
    case TheoremId::TE1_HYPOTHESES: break;
  }
  throw Error(ErrorCode::InvalidArgument, "te1 is a hypothesis check; use check_te1_hypotheses");
}

HypothesisReport check_te1_hypotheses(const FracParam& p, const Window& g, const Distribution& f,
                                      const HypothesisConfig& cfg) {
  if (!(cfg.s > 1.0)) throw Error(ErrorCode::InvalidExponent, "te1 needs s > 1");
  if (cfg.r < 1) throw Error(ErrorCode::InvalidExponent, "te1 needs r >= 1");
  require_interval(p, kPi, "(0, pi)");
  cfg.seq.validate();

  std::vector<double> xs = cfg.x_lattice;
  if (xs.empty())
    for (int i = -4; i <= 4; ++i) xs.push_back(i);
  std::vector<double> xis = cfg.xi_lattice;
  if (xis.empty()) {
    for (int k = 4; k >= -4; --k) xis.push_back(-std::ldexp(1.0, k));
    for (int k = -4; k <= 4; ++k) xis.push_back(std::ldexp(1.0, k));
  }

  HypothesisReport rep;
  rep.alpha = p.alpha;
  rep.window = g.name;
  rep.distribution = f.describe();
  rep.m = cfg.m;
  rep.r = cfg.r;
  rep.s = cfg.s;
  rep.eps = cfg.seq.eps;
  rep.lattice_points = xs.size() * xis.size();

  const std::size_t ne = rep.eps.size();
  std::vector<cplx> v(rep.lattice_points * ne);
  parallel_for(v.size(), [&](std::size_t c) {
    const std::size_t pt = c / ne;
    const double x = xs[pt / xis.size()];
    const double xi = xis[pt % xis.size()];
    const double eps = rep.eps[c % ne];
    v[c] = std::polar(1.0, frst_phase(p, eps * xi)) * frst_point(p, g, f, eps * x, eps * xi) /
           (std::pow(eps, cfg.m) * cfg.L(eps));
  });

  double worst = 0.0;
  for (std::size_t pt = 0; pt < rep.lattice_points; ++pt) {
    const double x = xs[pt / xis.size()];
    const double xi = xis[pt % xis.size()];
    std::span<const cplx> series(v.data() + pt * ne, ne);
    if (cauchy_converged(series)) ++rep.converged_points;
    const double bound = std::pow(std::abs(xi) + 1.0 / std::abs(xi), -cfg.s) * std::pow(std::abs(x), cfg.r);
    for (const cplx z : series) {
      const double a = std::abs(z);
      if (a == 0.0) continue;
      const double d = bound > 0.0 ? a / bound : HUGE_VAL;
      if (d > worst) {
        worst = d;
        rep.worst_point = "(x, xi) = (" + format_double(x) + ", " + format_double(xi) + ")";
      }
    }
  }
  rep.condition_i = rep.converged_points == rep.lattice_points;
  rep.bound_constant = worst;
  rep.condition_ii = std::isfinite(worst);
  rep.verdict = rep.condition_i && rep.condition_ii ? Verdict::Pass : Verdict::Fail;
  if (f.is_zero()) rep.notes.push_back("zero input: the bound holds with any D > 0");
  rep.notes.push_back("(i) uses the Cauchy proxy over the last three gaps; (ii) scans the lattice and every eps");
  return rep;
}

namespace {

nlohmann::json cjson(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? nlohmann::json("nan") : nlohmann::json(v > 0 ? "inf" : "-inf");
}

}  // namespace

nlohmann::json to_json(const AsymptoticReport& r) {
  nlohmann::json j;
  j["theorem_id"] = to_string(r.theorem);
  j["alpha"] = r.alpha;
  j["window"] = r.window;
  j["distribution"] = r.distribution;
  j["m"] = r.m;
  j["slowly_varying"] = r.slowly_varying;
  j["eps_seq"] = r.eps;
  j["exponent_expected"] = r.exponent_expected;
  auto probes = nlohmann::json::array();
  for (const auto& p : r.probes) {
    nlohmann::json q;
    q["x"] = p.probe.x;
    q["xi"] = p.probe.xi;
    auto lhs = nlohmann::json::array();
    for (const cplx z : p.lhs) lhs.push_back(cjson(z));
    q["lhs_values"] = lhs;
    q["rhs_limit"] = cjson(p.rhs);
    q["rhs_derived"] = cjson(p.rhs_derived);
    q["fitted_exponent"] = num(p.fitted_exponent);
    q["fit_residual"] = num(p.fit_residual);
    q["ratio_deviation"] = num(p.ratio_deviation);
    q["derived_ratio_deviation"] = num(p.derived_ratio_deviation);
    q["rhs_zero"] = p.rhs_zero;
    probes.push_back(q);
  }
  j["probes"] = probes;
  j["max_slope_error"] = num(r.max_slope_error);
  j["max_ratio_deviation"] = num(r.max_ratio_deviation);
  j["max_derived_ratio_deviation"] = num(r.max_derived_ratio_deviation);
  if (!r.x_dependence.empty()) {
    auto xd = nlohmann::json::array();
    for (const double d : r.x_dependence) xd.push_back(num(d));
    j["x_dependence"] = xd;
  }
  j["tolerances"] = {{"slope_tol", r.slope_tol}, {"ratio_tol", r.ratio_tol}};
  j["verdict"] = to_string(r.verdict);
  j["notes"] = r.notes;
  return j;
}

nlohmann::json to_json(const HypothesisReport& r) {
  nlohmann::json j;
  j["theorem_id"] = to_string(TheoremId::TE1_HYPOTHESES);
  j["alpha"] = r.alpha;
  j["window"] = r.window;
  j["distribution"] = r.distribution;
  j["m"] = r.m;
  j["r"] = r.r;
  j["s"] = r.s;
  j["eps_seq"] = r.eps;
  j["lattice_points"] = r.lattice_points;
  j["converged_points"] = r.converged_points;
  j["condition_i"] = r.condition_i;
  j["bound_constant"] = num(r.bound_constant);
  j["condition_ii"] = r.condition_ii;
  j["worst_point"] = r.worst_point;
  j["verdict"] = to_string(r.verdict);
  j["notes"] = r.notes;
  return j;
}

}  // namespace fracspec
