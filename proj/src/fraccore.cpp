#include "fracspec/fraccore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracspec/simd/kernels.hpp"

namespace fracspec {

FracParam make_frac_param(double alpha) {
  if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be finite");
  FracParam p;
  double a = alpha;
  if (a < 0.0 || a >= kTwoPi) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    p.reduced = true;
  }
  p.alpha = a;
  const double s = std::sin(a);
  const double c = std::cos(a);
  if (std::abs(s) < kSingularThreshold) {
    p.kind = c > 0.0 ? AngleKind::IdentityAngle : AngleKind::ParityAngle;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    p.c1 = nan;
    p.c2 = nan;
    p.c_alpha = {nan, nan};
    return p;
  }
  p.kind = AngleKind::Regular;
  p.c1 = c / s;
  p.c2 = 1.0 / s;
  p.c_alpha = std::sqrt(cplx(1.0, -p.c1) / kTwoPi);
  return p;
}

FracParam classical_param() {
  FracParam p;
  p.alpha = 0.5 * kPi;
  p.c1 = 0.0;
  p.c2 = 1.0;
  p.c_alpha = {1.0 / std::sqrt(kTwoPi), 0.0};
  p.kind = AngleKind::Regular;
  return p;
}

double SampledSignal::half_width() const noexcept { return std::max(std::abs(t0), std::abs(t_end())); }

std::vector<double> SampledSignal::times() const {
  std::vector<double> out(samples.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = t(j);
  return out;
}

cplx SampledSignal::interpolate(double x) const noexcept {
  if (samples.empty() || !(x >= t0) || x > t_end()) return {};
  const double u = (x - t0) / dt;
  const auto j = std::min(static_cast<std::size_t>(u), samples.size() - 2);
  const double frac = u - static_cast<double>(j);
  return samples[j] * (1.0 - frac) + samples[j + 1] * frac;
}

void SampledSignal::validate() const {
  if (samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "signal needs at least 2 samples");
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0))
    throw Error(ErrorCode::InvalidArgument, "signal grid needs finite t0 and dt > 0");
  for (const auto& z : samples)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::InvalidArgument, "signal samples must be finite");
}

std::vector<double> trapezoid_weights(std::size_t n, double h) {
  std::vector<double> w(n, h);
  if (n > 0) {
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
  }
  return w;
}

cplx kernel_eval(const FracParam& p, double x, double xi) {
  if (!p.regular()) throw Error(ErrorCode::SingularAngle, "kernel is a distribution at this angle");
  const double phase = 0.5 * (x * x + xi * xi) * p.c1 - x * xi * p.c2;
  return p.c_alpha * std::polar(1.0, phase);
}

double kernel_max_frequency(const FracParam& p, double T, double xi_max) {
  return std::abs(p.c1) * T + std::abs(p.c2) * std::abs(xi_max);
}

void check_oscillation(const FracParam& p, double dt, double T, double xi_max) {
  const double omega = kernel_max_frequency(p, T, xi_max);
  if (omega > 0.0 && dt > kPi / (4.0 * omega))
    throw Error(ErrorCode::UndersampledChirp, "dt=" + std::to_string(dt) + " exceeds pi/(4*omega_max) with omega_max=" +
                                                  std::to_string(omega));
}

std::vector<cplx> frft(const FracParam& p, const SampledSignal& f, std::span<const double> xi_grid) {
  f.validate();
  std::vector<cplx> out(xi_grid.size());
  for (const double xi : xi_grid)
    if (!std::isfinite(xi)) throw Error(ErrorCode::InvalidArgument, "xi grid must be finite");

  if (p.kind == AngleKind::IdentityAngle) {
    std::transform(xi_grid.begin(), xi_grid.end(), out.begin(), [&](double xi) { return f.interpolate(xi); });
    return out;
  }
  if (p.kind == AngleKind::ParityAngle) {
    std::transform(xi_grid.begin(), xi_grid.end(), out.begin(), [&](double xi) { return f.interpolate(-xi); });
    return out;
  }

  double xi_max = 0.0;
  for (const double xi : xi_grid) xi_max = std::max(xi_max, std::abs(xi));
  check_oscillation(p, f.dt, f.half_width(), xi_max);

  const auto w = trapezoid_weights(f.size(), f.dt);
  const auto pos = f.times();
  std::vector<cplx> coef(f.size());
  for (std::size_t j = 0; j < coef.size(); ++j)
    coef[j] = w[j] * f.samples[j] * std::polar(1.0, 0.5 * p.c1 * pos[j] * pos[j]);
  std::vector<double> freq(xi_grid.size());
  std::transform(xi_grid.begin(), xi_grid.end(), freq.begin(), [&](double xi) { return -p.c2 * xi; });

  simd::phase_sum({.coef = coef, .pos = pos, .freq = freq, .out = out});
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] *= p.c_alpha * std::polar(1.0, 0.5 * p.c1 * xi_grid[k] * xi_grid[k]);
  return out;
}

ComposeReport frft_compose_check(const FracParam& p1, const FracParam& p2, const SampledSignal& f) {
  if (!p1.regular() || !p2.regular())
    throw Error(ErrorCode::SingularAngle, "composition factors must be regular angles");
  const FracParam sum = make_frac_param(p1.alpha + p2.alpha);
  const auto grid = f.times();

  SampledSignal inner{f.t0, f.dt, frft(p2, f, grid)};
  const auto composed = frft(p1, inner, grid);
  const auto direct = frft(sum, f, grid);
  return {p1.alpha, p2.alpha, relative_l2(composed, direct), f.size()};
}

double relative_l2(std::span<const cplx> a, std::span<const cplx> ref) {
  if (a.size() != ref.size()) throw Error(ErrorCode::InvalidArgument, "relative_l2: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - ref[i]);
    den += std::norm(ref[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fracspec
