#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fracspec/fraccore.hpp"
#include "fracspec/windows.hpp"

namespace fracspec {

/// A smooth, rapidly decaying test function with the scales the pairing quadrature needs.
struct TestFunction {
  std::function<cplx(double)> eval;
  double center = 0.0;
  double width = 1.0;  // decay scale; panels are never wider than this
  std::string name;
  double panel = 0.0;  // optional tighter panel width for oscillatory test functions

  cplx operator()(double x) const { return eval(x); }
};

TestFunction test_function(const Window& w);

/// Eight fixed probes: Gaussians of width 1/2, 1, 2, hermite1, mexican-hat,
/// Gaussians modulated by 1 and by c2, and a unit Gaussian centred at x = 1.
std::vector<TestFunction> test_battery(double c2);

class SlowlyVarying {
 public:
  enum class Model { One, LogPower, IterLog };

  static SlowlyVarying one() { return {Model::One, 0.0, 1.0}; }
  /// |ln eps|^a on (0, 1/2].
  static SlowlyVarying log_power(double a) { return {Model::LogPower, a, 0.5}; }
  /// ln|ln eps| on (0, 1/4].
  static SlowlyVarying iter_log() { return {Model::IterLog, 0.0, 0.25}; }

  double operator()(double eps) const;
  Model model() const noexcept { return model_; }
  double power() const noexcept { return power_; }
  double eps_max() const noexcept { return eps_max_; }
  std::string name() const;

 private:
  SlowlyVarying(Model m, double a, double eps_max) : model_(m), power_(a), eps_max_(eps_max) {}
  Model model_;
  double power_;
  double eps_max_;
};

struct ScaleSequence {
  std::vector<double> eps;

  /// 2^-kmin, ..., 2^-kmax.
  static ScaleSequence powers_of_two(int kmin = 2, int kmax = 12);
  /// Strictly decreasing, positive, and no entry below 2^-20.
  void validate() const;
};

struct DeltaTerm {
  double location = 0.0;
  int order = 0;
  cplx weight{1.0, 0.0};
};

enum class HomogeneousPattern { Abs, Plus, Minus };

/// A distribution realised through its pairing with test functions.
struct Distribution {
  enum class Kind { DeltaComb, Homogeneous, SampledDensity, ClosedForm };

  Kind kind = Kind::DeltaComb;
  std::vector<DeltaTerm> terms;                            // DeltaComb
  HomogeneousPattern pattern = HomogeneousPattern::Abs;    // Homogeneous
  double degree = 0.0;                                     // Homogeneous, ClosedForm
  SampledSignal density;                                   // SampledDensity
  std::function<cplx(double)> closed;                      // ClosedForm
  std::string expr;                                        // ClosedForm name
  std::vector<double> singular_points;                     // function kinds: panel breaks
  int growth_order = 0;
  cplx scale{1.0, 0.0};                                    // global factor
  double modulation = 0.0;                                 // M_a applied on top: e^{iax} f

  /// Pointwise value for function kinds (modulation and scale included).
  cplx density_at(double x) const;
  bool is_function() const noexcept { return kind != Kind::DeltaComb; }
  bool is_zero() const noexcept;
  std::string describe() const;
};

Distribution delta(double location = 0.0, int order = 0, cplx weight = 1.0);
Distribution delta_comb(std::vector<DeltaTerm> terms);
Distribution zero_distribution();
/// |x|^m, x_+^m or x_-^m with m > -1; throws InvalidExponent otherwise.
Distribution homogeneous(HomogeneousPattern pattern, double m);
Distribution sampled_density(SampledSignal s);
/// |x|^m ln|x|, m > -1.
Distribution abs_pow_log(double m);
Distribution closed_form(std::string name, std::function<cplx(double)> fn, std::vector<double> singular_points,
                         int growth_order);

/// M_a f.
Distribution modulate(const Distribution& f, double a);
/// lambda * f.
Distribution scale(const Distribution& f, cplx lambda);

/// Descriptor from JSON; relative "file" entries resolve against base_dir.
Distribution distribution_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

struct PairingResult {
  cplx value{};
  double error = 0.0;
};

/// <f(eps x), phi(x)>; eps = 1 is the plain pairing.
PairingResult pair_dilated(const Distribution& f, const TestFunction& phi, double eps);

/// <f, phi>; exact for delta combs.
cplx pair(const Distribution& f, const TestFunction& phi);

/// <f(eps x), phi(x)> / (eps^m L(eps)).
cplx scaled_pair(const Distribution& f, const TestFunction& phi, double eps, double m, const SlowlyVarying& L);

struct DegreeEstimate {
  double slope = 0.0;
  double residual = 0.0;
};

/// Least-squares slope of log|<f(eps x), phi>| against log eps over the last 6 points.
DegreeEstimate quasi_degree_estimate(const Distribution& f, const TestFunction& phi, const ScaleSequence& seq);

/// Least-squares slope of log y against log x over the last `tail` points with y > 1e-300.
DegreeEstimate fit_log_slope(std::span<const double> x, std::span<const double> y, std::size_t tail = 6);

/// Cauchy proxy: the last 3 gaps satisfy |v_{k+1} - v_k| < 1e-4 (1 + |v_k|).
bool cauchy_converged(std::span<const cplx> v);

struct ChirpFactorReport {
  std::vector<cplx> plain;
  std::vector<cplx> chirped;
  bool plain_converged = false;
  bool chirped_converged = false;
  double limit_gap = 0.0;
  /// sup over the battery and the sequence of |scaled pairing|; a finite-precision
  /// stand-in for boundedness in S'(R), labelled as such.
  double boundedness_proxy = 0.0;
  std::string note;
};

ChirpFactorReport chirp_factor_check(const Distribution& f, const TestFunction& phi, double c, double m,
                                     const SlowlyVarying& L, const ScaleSequence& seq);

struct Quasiasymptotics {
  double m = 0.0;
  SlowlyVarying L = SlowlyVarying::one();
  Distribution u;
};

/// Known (m, L, u) for descriptors whose behaviour at the origin is exact.
std::optional<Quasiasymptotics> known_quasiasymptotics(const Distribution& f);

}  // namespace fracspec
