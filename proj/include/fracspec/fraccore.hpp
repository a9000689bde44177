#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fracspec/error.hpp"

namespace fracspec {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// |sin(alpha)| below this demotes an angle from Regular.
inline constexpr double kSingularThreshold = 1e-3;

enum class AngleKind { Regular, IdentityAngle, ParityAngle };

/// Fractional angle with the chirp constants of the kernel
///   K(x, xi) = c_alpha * exp(i((x^2 + xi^2)/2 * c1 - x*xi*c2)).
struct FracParam {
  double alpha = 0.0;  // reduced into [0, 2pi)
  double c1 = 0.0;     // cot(alpha)
  double c2 = 0.0;     // csc(alpha)
  cplx c_alpha{};      // sqrt((1 - i c1) / 2pi)
  AngleKind kind = AngleKind::IdentityAngle;
  bool reduced = false;  // true when the input was outside [0, 2pi)

  bool regular() const noexcept { return kind == AngleKind::Regular; }
};

FracParam make_frac_param(double alpha);

/// alpha = pi/2 with the exact constants c1 = 0, c2 = 1, c_alpha = 1/sqrt(2pi)
/// (the classical Fourier, Stockwell and wavelet transforms).
FracParam classical_param();

/// Samples of a signal on the uniform grid t0 + j*dt.
struct SampledSignal {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<cplx> samples;

  std::size_t size() const noexcept { return samples.size(); }
  double t(std::size_t j) const noexcept { return t0 + static_cast<double>(j) * dt; }
  double t_end() const noexcept { return t(samples.size() - 1); }
  /// max |t| over the grid; the truncation half-width T.
  double half_width() const noexcept;
  std::vector<double> times() const;

  /// Linear interpolation; zero outside [t0, t_end].
  cplx interpolate(double t) const noexcept;

  /// Validates N >= 2, dt > 0 and finite samples.
  void validate() const;
};

/// Uniform grid on [-T, T] with N samples of fn.
template <class Fn>
SampledSignal sample_uniform(Fn&& fn, double T, std::size_t N) {
  SampledSignal s;
  s.t0 = -T;
  s.dt = 2.0 * T / static_cast<double>(N - 1);
  s.samples.resize(N);
  for (std::size_t j = 0; j < N; ++j) s.samples[j] = fn(s.t(j));
  return s;
}

/// Trapezoid weights for the uniform grid of `s`.
std::vector<double> trapezoid_weights(std::size_t n, double h);

cplx kernel_eval(const FracParam& p, double x, double xi);

/// Maximal instantaneous kernel frequency |c1|*T + |c2|*xi_max.
double kernel_max_frequency(const FracParam& p, double T, double xi_max);

/// Throws UndersampledChirp unless dt <= pi / (4 * omega_max).
void check_oscillation(const FracParam& p, double dt, double T, double xi_max);

/// Fractional Fourier transform of f evaluated on xi_grid.
std::vector<cplx> frft(const FracParam& p, const SampledSignal& f, std::span<const double> xi_grid);

struct ComposeReport {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double relative_l2 = 0.0;
  std::size_t n = 0;
};

/// Relative L2 deviation between F_{a1}(F_{a2} f) and F_{a1+a2} f on the signal grid.
ComposeReport frft_compose_check(const FracParam& p1, const FracParam& p2, const SampledSignal& f);

double relative_l2(std::span<const cplx> a, std::span<const cplx> ref);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace fracspec
