#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fracspec/distributions.hpp"
#include "fracspec/fraccore.hpp"
#include "fracspec/windows.hpp"

namespace fracspec {

enum class TheoremId { REZ1, TEAB1, TE1_HYPOTHESES, TE3, TE4, TE5 };

std::string_view to_string(TheoremId id) noexcept;
/// "rez1", "teab1", "te1", "te3", "te4", "te5" (case-insensitive); throws InvalidArgument.
TheoremId theorem_from_string(std::string_view s);

enum class Verdict { Pass, Fail, NotApplicable };
std::string_view to_string(Verdict v) noexcept;

struct Probe {
  double x = 0.0;
  double xi = 1.0;
};

/// {-1.5, -0.5, 0.5, 1.5} x {1/2, 2}.
std::vector<Probe> default_probes();

struct CheckConfig {
  std::vector<Probe> probes = default_probes();
  ScaleSequence seq = ScaleSequence::powers_of_two(2, 12);
  double slope_tol = 0.05;
  double ratio_tol = 0.02;
  /// Ratios are judged on every eps at or below this value.
  double ratio_eps_max = 1.0 / 1024.0;
  /// Overrides known_quasiasymptotics(f).
  std::optional<Quasiasymptotics> qa;
};

struct ProbeResult {
  Probe probe;
  std::vector<cplx> lhs;
  cplx rhs{};          // limit as stated by the theorem
  cplx rhs_derived{};  // limit obtained by substituting t = eps s directly
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;
  double ratio_deviation = 0.0;          // max |lhs / (eps^e L rhs) - 1| over the judged eps
  double derived_ratio_deviation = 0.0;  // same against rhs_derived
  bool rhs_zero = false;
};

struct AsymptoticReport {
  TheoremId theorem = TheoremId::REZ1;
  double alpha = 0.0;
  std::string window;
  std::string distribution;
  double m = 0.0;
  std::string slowly_varying;
  std::vector<double> eps;
  std::vector<ProbeResult> probes;
  double exponent_expected = 0.0;
  double max_slope_error = 0.0;
  double max_ratio_deviation = 0.0;
  double max_derived_ratio_deviation = 0.0;
  /// te5 only: max over probes of |lhs(x) - lhs(0)| / |lhs(0)| per eps.
  std::vector<double> x_dependence;
  double slope_tol = 0.05;
  double ratio_tol = 0.02;
  Verdict verdict = Verdict::NotApplicable;
  std::vector<std::string> notes;
};

/// e^{-i c1 (xi/eps)^2/2} S_g f(eps x, xi/eps) ~ eps^m L (sqrt(1 - i c1)/c2^m) S_g u(x c2, xi/c2).
AsymptoticReport check_rez1(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg = {});
/// e^{-i c1 (eps xi)^2/2} S_{g_{1/eps^2}} f(eps x, eps xi) ~ eps^{m+2} L (sqrt(1 - i c1)/c2^m) S_g(M_{xi/c2} u)(x c2, xi/c2).
AsymptoticReport check_teab1(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg = {});
/// e^{i c1 (eps x)^2/2} W_{M_{c2} g} f(eps x, eps/xi) ~ eps^{m+1/2} L c2^{-m-1/2} e^{i x xi (c2-1)} W_{M_1 g} u(x c2, c2/xi).
AsymptoticReport check_te3(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg = {});
/// e^{i c1 (eps x)^2/2 - i c2 eps^2 x xi} W_{M_{c2} g_{1/eps^2}} f(eps x, 1/(eps xi))
///   ~ eps^{m+3/2} L c2^{-m-1/2} e^{i x xi (c2-1)} W_g u(x c2, c2/xi).
AsymptoticReport check_te4(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg = {});
/// e^{-i c1 (xi/eps)^2/2} S_g f(eps^2 x, xi/eps) ~ eps^m L c_alpha sqrt(xi) W_g(M_{-xi c2} u)(0, 1/xi).
AsymptoticReport check_te5(const FracParam& p, const Window& g, const Distribution& f, const CheckConfig& cfg = {});

AsymptoticReport check_theorem(TheoremId id, const FracParam& p, const Window& g, const Distribution& f,
                               const CheckConfig& cfg = {});

struct HypothesisConfig {
  double m = 0.0;
  SlowlyVarying L = SlowlyVarying::one();
  int r = 2;
  double s = 2.0;
  ScaleSequence seq = ScaleSequence::powers_of_two(2, 12);
  std::vector<double> x_lattice;   // default: -4, -3, ..., 4
  std::vector<double> xi_lattice;  // default: +-2^k, k = -4..4
};

struct HypothesisReport {
  double alpha = 0.0;
  std::string window;
  std::string distribution;
  double m = 0.0;
  int r = 0;
  double s = 0.0;
  std::vector<double> eps;
  std::size_t lattice_points = 0;
  std::size_t converged_points = 0;
  bool condition_i = false;   // Cauchy convergence at every lattice point
  double bound_constant = 0.0;  // smallest D over the lattice and the sequence
  bool condition_ii = false;  // D finite
  std::string worst_point;
  Verdict verdict = Verdict::NotApplicable;
  std::vector<std::string> notes;
};

/// Hypotheses (i) and (ii) of the Tauberian theorem for v = e^{-i c1 (eps xi)^2/2} S_g f(eps x, eps xi)/(eps^m L(eps)).
/// Throws InvalidExponent when s <= 1.
HypothesisReport check_te1_hypotheses(const FracParam& p, const Window& g, const Distribution& f,
                                      const HypothesisConfig& cfg);

nlohmann::json to_json(const AsymptoticReport& r);
nlohmann::json to_json(const HypothesisReport& r);

}  // namespace fracspec
