#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fracspec/asymptotics.hpp"
#include "fracspec/distributions.hpp"
#include "fracspec/fraccore.hpp"
#include "fracspec/frst.hpp"
#include "fracspec/frwt.hpp"
#include "fracspec/io.hpp"
#include "fracspec/windows.hpp"

namespace fracspec::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridFlags {
  double x_min = NAN, x_max = NAN, xi_min = NAN, xi_max = NAN;
  std::size_t nx = 0, nxi = 0;

  void add(CLI::App* app) {
    app->add_option("--x-min", x_min, "smallest time shift");
    app->add_option("--x-max", x_max, "largest time shift");
    app->add_option("--nx", nx, "number of time shifts");
    app->add_option("--xi-min", xi_min, "smallest |xi|");
    app->add_option("--xi-max", xi_max, "largest |xi|");
    app->add_option("--nxi", nxi, "number of |xi| values (per sign for the FRST)");
  }

  AxesSpec apply(AxesSpec ax) const {
    if (!std::isnan(x_min)) ax.x.min = x_min;
    if (!std::isnan(x_max)) ax.x.max = x_max;
    if (nx) ax.x.n = nx;
    if (!std::isnan(xi_min)) ax.xi.min = xi_min;
    if (!std::isnan(xi_max)) ax.xi.max = xi_max;
    if (nxi) ax.xi.n = nxi;
    return ax;
  }
};

json load_json(const std::string& text_or_path) {
  if (!text_or_path.empty() && text_or_path.front() == '{') return json::parse(text_or_path);
  std::ifstream in(text_or_path);
  if (!in) throw UsageError("cannot open " + text_or_path);
  return json::parse(in);
}

SampledSignal ingest_signal(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return synthetic_signal(json::parse(spec));
  const fs::path path(spec);
  if (!fs::exists(path)) throw UsageError("input not found: " + spec);
  if (path.extension() == ".json") return synthetic_signal(load_json(spec));
  return read_signal_csv(path);
}

Distribution ingest_distribution(const std::string& spec) {
  const fs::path base = (!spec.empty() && spec.front() == '{') ? fs::path{} : fs::path(spec).parent_path();
  return distribution_from_json(load_json(spec), base);
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const json& j) { open_out(path) << j.dump(2) << '\n'; }

void write_grid(const std::string& prefix, const TFGrid& g) {
  auto csv = open_out(prefix + ".csv");
  write_grid_csv(g, csv);
  write_json(prefix + ".json", grid_meta_json(g));
}

FracParam parse_alpha(double alpha) {
  if (!std::isfinite(alpha)) throw UsageError("alpha must be finite");
  return make_frac_param(alpha);
}

void require_regular(const FracParam& p) {
  if (!p.regular()) throw UsageError("alpha at singular angle (|sin alpha| < 1e-3)");
}

SlowlyVarying parse_slowly_varying(const std::string& s) {
  if (s == "one") return SlowlyVarying::one();
  if (s == "iterlog") return SlowlyVarying::iter_log();
  if (s.rfind("log:", 0) == 0) return SlowlyVarying::log_power(std::stod(s.substr(4)));
  if (s == "log") return SlowlyVarying::log_power(1.0);
  throw UsageError("unknown slowly varying model '" + s + "' (one, log, log:<a>, iterlog)");
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json reconstruction_json(const ReconstructionReport& r, const std::string& transform, const FracParam& p,
                         const std::string& window) {
  json j;
  j["transform"] = transform;
  j["alpha"] = p.alpha;
  j["window"] = window;
  j["constant"] = cjson(r.constant);
  j["constant_error"] = r.constant_error;
  j["relative_l2"] = r.relative_l2;
  j["max_error"] = r.max_error;
  if (std::isfinite(r.diagnostic_relative_l2)) j["diagnostic_relative_l2"] = r.diagnostic_relative_l2;
  j["note"] = r.note;
  j["n"] = r.t.size();
  return j;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularAngle:
    case ErrorCode::AngleOutsideTheoremRange:
    case ErrorCode::InvalidExponent:
    case ErrorCode::InvalidArgument:
    case ErrorCode::MalformedCSV:
    case ErrorCode::NonUniformGrid:
    case ErrorCode::UnknownWindow:
      return Usage;
    default:
      return Numerical;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Fourier, Stockwell and wavelet transforms with asymptotic checks", "fracspec"};
  app.require_subcommand(1);

  double alpha = NAN;
  std::string window;
  std::string psi;
  std::string input;
  std::string dist;
  std::string output = "fracspec_out";
  GridFlags grid;

  auto* frft_cmd = app.add_subcommand("frft", "fractional Fourier transform on the signal's own grid");
  frft_cmd->add_option("--alpha", alpha, "angle in radians")->required();
  frft_cmd->add_option("--input", input, "signal CSV (t,re,im), synthetic JSON file or inline JSON")->required();
  frft_cmd->add_option("--output", output, "output path prefix");

  auto* frst_cmd = app.add_subcommand("frst", "fractional Stockwell transform onto a time-frequency grid");
  auto* frwt_cmd = app.add_subcommand("frwt", "fractional wavelet transform onto a time-scale grid");
  for (auto* c : {frst_cmd, frwt_cmd}) {
    c->add_option("--alpha", alpha, "angle in radians")->required();
    c->add_option("--window", window, "window name");
    auto* in = c->add_option("--input", input, "signal CSV, synthetic JSON file or inline JSON");
    auto* d = c->add_option("--dist", dist, "distribution descriptor (JSON file or inline)");
    in->excludes(d);
    c->add_option("--output", output, "output path prefix");
    grid.add(c);
  }

  std::string transform = "frst";
  double tol = NAN;
  auto* invert_cmd = app.add_subcommand("invert", "forward transform followed by synthesis; reports the error");
  invert_cmd->add_option("--transform", transform, "frst or frwt")->check(CLI::IsMember({"frst", "frwt"}));
  invert_cmd->add_option("--alpha", alpha, "angle in radians")->required();
  invert_cmd->add_option("--window", window, "analysis window");
  invert_cmd->add_option("--psi", psi, "synthesis window (FRST only; defaults to --window)");
  invert_cmd->add_option("--input", input, "signal")->required();
  invert_cmd->add_option("--output", output, "output path prefix");
  invert_cmd->add_option("--tol", tol, "fail (exit 3) when the relative L2 error exceeds this");
  grid.add(invert_cmd);

  std::vector<double> points;
  auto* bridge_cmd = app.add_subcommand("bridge", "compare the FRST with the FRWT of the modulated window");
  bridge_cmd->add_option("--alpha", alpha, "angle in radians")->required();
  bridge_cmd->add_option("--window", window, "window name");
  auto* bin = bridge_cmd->add_option("--input", input, "signal");
  auto* bd = bridge_cmd->add_option("--dist", dist, "distribution descriptor");
  bin->excludes(bd);
  bridge_cmd->add_option("--points", points, "flat list x1 xi1 x2 xi2 ... (default 8x8 over [-2,2]x[1/2,4])");
  bridge_cmd->add_option("--tol", tol, "maximum relative deviation (default 1e-6)");
  bridge_cmd->add_option("--output", output, "output path prefix");

  std::string theorem;
  double m = NAN;
  std::string slowly = "";
  double slope_tol = NAN, ratio_tol = NAN;
  int r_exp = 2;
  double s_exp = 2.0;
  auto* verify_cmd = app.add_subcommand("verify", "check a scaling theorem on a distribution");
  verify_cmd->add_option("theorem", theorem, "rez1, teab1, te1, te3, te4 or te5")->required();
  verify_cmd->add_option("--alpha", alpha, "angle in radians")->required();
  verify_cmd->add_option("--window", window, "window name (default hermite1)");
  verify_cmd->add_option("--dist", dist, "distribution descriptor")->required();
  verify_cmd->add_option("--m", m, "quasiasymptotic degree (overrides the known one)");
  verify_cmd->add_option("--L", slowly, "slowly varying model: one, log, log:<a>, iterlog");
  verify_cmd->add_option("--slope-tol", slope_tol, "override slope tolerance");
  verify_cmd->add_option("--ratio-tol", ratio_tol, "override ratio tolerance");
  verify_cmd->add_option("--r", r_exp, "te1: power of |x| in the bound");
  verify_cmd->add_option("--s", s_exp, "te1: decay exponent in xi, > 1");
  verify_cmd->add_option("--output", output, "output path prefix");

  auto* adm_cmd = app.add_subcommand("admissibility", "C_g, or C_{g,psi,c2} when --psi is given");
  adm_cmd->add_option("--window", window, "window name")->required();
  adm_cmd->add_option("--psi", psi, "reconstruction window");
  adm_cmd->add_option("--alpha", alpha, "angle; supplies c2 for C_{g,psi,c2}");

  int k = 0, pder = 0, l = 0, mm = 0, s = 0, r = 0;
  std::string grid_csv;
  std::string kind = "rho";
  auto* sem_cmd = app.add_subcommand("seminorm", "numeric seminorm of a window, signal or grid");
  sem_cmd->add_option("--kind", kind, "rho, sigma or rho_y")->check(CLI::IsMember({"rho", "sigma", "rho_y"}));
  sem_cmd->add_option("--window", window, "window name (rho)");
  sem_cmd->add_option("--input", input, "signal (rho)");
  sem_cmd->add_option("--grid", grid_csv, "grid CSV x,xi,re,im (sigma, rho_y)");
  sem_cmd->add_option("--k", k, "power of x (rho)");
  sem_cmd->add_option("--p", pder, "derivative order (rho)");
  sem_cmd->add_option("--l", l, "xi derivative order");
  sem_cmd->add_option("--m", mm, "x derivative order");
  sem_cmd->add_option("--s", s, "power of |xi|");
  sem_cmd->add_option("--r", r, "power of x");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int rc = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return rc == 0 ? Ok : Usage;
  }

  try {
    if (frft_cmd->parsed()) {
      const FracParam p = parse_alpha(alpha);
      const SampledSignal f = ingest_signal(input);
      const auto xi = f.times();
      SampledSignal F{f.t0, f.dt, frft(p, f, xi)};
      auto csv = open_out(output + ".csv");
      write_signal_csv(F, csv);
      out << "frft alpha=" << format_double(p.alpha) << " n=" << F.size() << " -> " << output << ".csv\n";
      return Ok;
    }

    if (frst_cmd->parsed() || frwt_cmd->parsed()) {
      const bool is_frst = frst_cmd->parsed();
      const FracParam p = parse_alpha(alpha);
      if (is_frst ? p.kind == AngleKind::ParityAngle : !p.regular())
        throw UsageError("alpha at singular angle");
      if (input.empty() == dist.empty()) throw UsageError("exactly one of --input and --dist is required");
      const Window g = window_by_name(window.empty() ? (is_frst ? "gauss-unit" : "mexican-hat") : window);
      const AxesSpec axes = grid.apply(is_frst ? default_frst_axes() : default_frwt_axes());
      TFGrid F;
      if (!input.empty()) {
        const SampledSignal f = ingest_signal(input);
        F = is_frst ? frst_forward(p, g, f, axes) : frwt_forward(p, g, f, axes);
      } else {
        const Distribution f = ingest_distribution(dist);
        F = is_frst ? frst_forward(p, g, f, axes) : frwt_forward(p, g, f, axes);
      }
      write_grid(output, F);
      out << (is_frst ? "frst" : "frwt") << " alpha=" << format_double(p.alpha) << " window=" << g.name
          << " grid=" << F.nx() << "x" << F.nxi() << " -> " << output << ".csv\n";
      return Ok;
    }

    if (invert_cmd->parsed()) {
      const FracParam p = parse_alpha(alpha);
      require_regular(p);
      const bool is_frst = transform == "frst";
      const Window g = window_by_name(window.empty() ? (is_frst ? "hermite1" : "mexican-hat") : window);
      const SampledSignal f = ingest_signal(input);
      const AxesSpec axes = grid.apply(is_frst ? default_frst_axes() : default_frwt_axes());
      const ReconstructionReport rep = is_frst ? frst_reconstruct(p, g, psi.empty() ? g : window_by_name(psi), f, axes)
                                               : frwt_reconstruct(p, g, f, axes);
      auto csv = open_out(output + ".csv");
      write_signal_csv(SampledSignal{f.t0, f.dt, rep.reconstructed}, csv);
      write_json(output + "_report.json", reconstruction_json(rep, is_frst ? "FRST" : "FRWT", p, g.name));
      out << "invert " << transform << " relative_l2=" << format_double(rep.relative_l2)
          << " max_error=" << format_double(rep.max_error) << "\n";
      return (!std::isnan(tol) && !(rep.relative_l2 <= tol)) ? VerificationFailed : Ok;
    }

    if (bridge_cmd->parsed()) {
      const FracParam p = parse_alpha(alpha);
      require_regular(p);
      if (input.empty() == dist.empty()) throw UsageError("exactly one of --input and --dist is required");
      const Window g = window_by_name(window.empty() ? "hermite1" : window);
      if (points.size() % 2) throw UsageError("--points needs x, xi pairs");
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < points.size(); i += 2) pts.emplace_back(points[i], points[i + 1]);
      if (pts.empty())
        for (int i = 0; i < 8; ++i)
          for (int j = 0; j < 8; ++j) pts.emplace_back(-2.0 + 4.0 * i / 7.0, 0.5 * std::pow(8.0, j / 7.0));
      const BridgeReport rep = !input.empty() ? frst_frwt_bridge(p, g, ingest_signal(input), pts)
                                              : frst_frwt_bridge(p, g, ingest_distribution(dist), pts);
      const double limit = std::isnan(tol) ? 1e-6 : tol;
      json j;
      j["alpha"] = p.alpha;
      j["window"] = g.name;
      j["max_rel_dev"] = rep.max_rel_dev;
      j["tolerance"] = limit;
      auto arr = json::array();
      for (const auto& b : rep.points)
        arr.push_back({{"x", b.x}, {"xi", b.xi}, {"lhs", cjson(b.lhs)}, {"rhs", cjson(b.rhs)}, {"rel_dev", b.rel_dev}});
      j["points"] = arr;
      write_json(output + ".json", j);
      out << "bridge points=" << rep.points.size() << " max_rel_dev=" << format_double(rep.max_rel_dev) << "\n";
      return rep.max_rel_dev <= limit ? Ok : VerificationFailed;
    }

    if (verify_cmd->parsed()) {
      const FracParam p = parse_alpha(alpha);
      const TheoremId id = theorem_from_string(theorem);
      const Window g = window_by_name(window.empty() ? "hermite1" : window);
      const Distribution f = ingest_distribution(dist);
      Verdict verdict;
      json report;
      std::string summary;
      if (id == TheoremId::TE1_HYPOTHESES) {
        HypothesisConfig cfg;
        const auto qa = known_quasiasymptotics(f);
        if (!std::isnan(m)) cfg.m = m;
        else if (qa) cfg.m = qa->m;
        else throw UsageError("te1 needs --m for this distribution");
        cfg.L = !slowly.empty() ? parse_slowly_varying(slowly) : (qa ? qa->L : SlowlyVarying::one());
        cfg.r = r_exp;
        cfg.s = s_exp;
        const auto rep = check_te1_hypotheses(p, g, f, cfg);
        verdict = rep.verdict;
        report = to_json(rep);
        summary = "te1 (i)=" + std::string(rep.condition_i ? "ok" : "no") + " (ii)=" +
                  (rep.condition_ii ? "ok" : "no") + " D=" + format_double(rep.bound_constant);
      } else {
        CheckConfig cfg;
        if (!std::isnan(slope_tol)) cfg.slope_tol = slope_tol;
        if (!std::isnan(ratio_tol)) cfg.ratio_tol = ratio_tol;
        if (!std::isnan(m) || !slowly.empty()) {
          auto qa = known_quasiasymptotics(f);
          if (!qa) throw UsageError("no known limit u for this distribution; --m/--L cannot stand alone");
          if (!std::isnan(m)) qa->m = m;
          if (!slowly.empty()) qa->L = parse_slowly_varying(slowly);
          cfg.qa = qa;
        }
        const auto rep = check_theorem(id, p, g, f, cfg);
        verdict = rep.verdict;
        report = to_json(rep);
        double mean = 0.0;
        for (const auto& pr : rep.probes) mean += pr.fitted_exponent / static_cast<double>(rep.probes.size());
        summary = std::string(to_string(id)) + " exponent=" + format_double(mean) +
                  " expected=" + format_double(rep.exponent_expected) +
                  " ratio_dev=" + format_double(rep.max_ratio_deviation);
      }
      write_json(output + ".json", report);
      out << summary << " verdict=" << to_string(verdict) << "\n";
      switch (verdict) {
        case Verdict::Pass: return Ok;
        case Verdict::Fail: return VerificationFailed;
        case Verdict::NotApplicable: return NotApplicable;
      }
    }

    if (adm_cmd->parsed()) {
      const Window g = window_by_name(window);
      json j;
      j["window"] = g.name;
      if (psi.empty()) {
        const auto c = admissibility_cg(g);
        j["C_g"] = c.value.real();
        j["quadrature_error_estimate"] = c.quadrature_error_estimate;
      } else {
        const FracParam p = parse_alpha(alpha);
        require_regular(p);
        const Window h = window_by_name(psi);
        const auto c = admissibility_cgpsi(g, h, p.c2);
        j["psi"] = h.name;
        j["alpha"] = p.alpha;
        j["C_g_psi_c2"] = cjson(c.value);
        j["quadrature_error_estimate"] = c.quadrature_error_estimate;
      }
      out << j.dump() << "\n";
      return Ok;
    }

    if (sem_cmd->parsed()) {
      SeminormEstimate e;
      if (kind == "rho") {
        if (window.empty() == input.empty()) throw UsageError("rho needs exactly one of --window and --input");
        e = !window.empty() ? seminorm_rho(window_by_name(window), k, pder) : seminorm_rho(ingest_signal(input), k, pder);
      } else {
        if (grid_csv.empty()) throw UsageError(kind + " needs --grid");
        std::ifstream in(grid_csv);
        if (!in) throw UsageError("cannot open " + grid_csv);
        const TFGrid F = read_grid_csv(in);
        e = kind == "sigma" ? seminorm_sigma(F, l, mm, s, r) : seminorm_rho_y(F, l, mm, s, r);
      }
      out << json{{"kind", kind}, {"indices", e.indices}, {"value", e.value}, {"grid_spec", e.grid_spec}}.dump()
          << "\n";
      return Ok;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::UndersampledChirp || e.code() == ErrorCode::GridTooCoarse)
      err << "hint: lower --xi-max, raise --nx, or supply a finer signal\n";
    return exit_for(e.code());
  } catch (const json::exception& e) {
    err << "error: bad JSON: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Numerical;
  }
  return Usage;
}

}  // namespace fracspec::cli
