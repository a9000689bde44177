#include "fracspec/windows.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "fracspec/quadrature.hpp"

namespace fracspec {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_param(std::string_view text, std::string_view spec) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw Error(ErrorCode::UnknownWindow, "bad numeric parameter in window spec '" + std::string(spec) + "'");
  return v;
}

// Central difference of order p (second-order accurate) from samples at offsets -2..2.
template <class At>
cplx central_difference(At&& at, int p, double h) {
  switch (p) {
    case 0: return at(0);
    case 1: return (at(1) - at(-1)) / (2.0 * h);
    case 2: return (at(1) - 2.0 * at(0) + at(-1)) / (h * h);
    case 3: return (at(2) - 2.0 * at(1) + 2.0 * at(-1) - at(-2)) / (2.0 * h * h * h);
    case 4: return (at(2) - 4.0 * at(1) + 6.0 * at(0) - 4.0 * at(-1) + at(-2)) / (h * h * h * h);
    default: throw Error(ErrorCode::DerivativeOrderTooHigh, "derivative order above 4");
  }
}

int stencil_radius(int p) { return p == 0 ? 0 : (p <= 2 ? 1 : 2); }

void check_rho_indices(int k, int p) {
  if (k < 0 || p < 0) throw Error(ErrorCode::InvalidArgument, "seminorm indices must be non-negative");
  if (p > 4) throw Error(ErrorCode::DerivativeOrderTooHigh, "rho seminorm supports p <= 4");
}

// int k(w) dw/|w| over the real line, split at |w| = 1 with w = +-e^{-u} inside.
AdmissibilityConstant weighted_line_integral(const std::function<cplx(double)>& k) {
  double scale = 0.0;
  for (int j = -64; j <= 96; ++j) {
    const double w = std::exp2(j / 8.0);
    scale = std::max({scale, std::abs(k(w)), std::abs(k(-w))});
  }
  if (scale == 0.0) return {};

  const double w_small = std::exp(-40.0);
  const double near_zero = std::max(std::abs(k(w_small)), std::abs(k(-w_small)));
  if (near_zero > 1e-10 * scale)
    throw Error(ErrorCode::DivergentAdmissibility,
                "integrand does not vanish at w = 0 (|k(0)| ~ " + format_param(near_zero) + ")");

  std::vector<double> u_breaks;
  for (int i = 0; i <= 160; ++i) u_breaks.push_back(0.25 * i);
  const auto inner = integrate_panels([&](double u) { const double w = std::exp(-u); return k(w) + k(-w); }, u_breaks);

  const double w_max = std::exp2(24.0);
  if (std::max(std::abs(k(w_max)), std::abs(k(-w_max))) > 1e-16 * scale)
    throw Error(ErrorCode::DivergentAdmissibility, "integrand tail does not decay");
  double w_end = 1.0;
  for (int j = 0; j <= 24 * 16; ++j) {
    const double w = std::exp2(j / 16.0);
    if (std::max(std::abs(k(w)), std::abs(k(-w))) >= 1e-16 * scale) w_end = w;
  }
  std::vector<double> w_breaks{1.0};
  for (int j = 1; w_breaks.back() < w_end; ++j) w_breaks.push_back(std::exp2(j / 16.0));
  const auto outer = integrate_panels([&](double w) { return (k(w) + k(-w)) / w; }, w_breaks);

  return {inner.value + outer.value, inner.error + outer.error + near_zero};
}

}  // namespace

cplx GaussianPacket::eval(double y) const noexcept {
  const double t = lambda * y;
  double p = 0.0;
  for (std::size_t i = poly.size(); i-- > 0;) p = p * t + poly[i];
  const cplx base = amp * (p * std::exp(-0.5 * t * t));
  return mod == 0.0 ? base : base * std::polar(1.0, mod * y);
}

cplx GaussianPacket::ft(double omega) const noexcept {
  // FT[u^n e^{-u^2/2}](v) = (-i)^n He_n(v) e^{-v^2/2}
  const double v = (omega - mod) / lambda;
  cplx acc{};
  double he_prev = 0.0;
  double he = 1.0;
  cplx phase{1.0, 0.0};
  for (std::size_t n = 0; n < poly.size(); ++n) {
    acc += poly[n] * he * phase;
    const double next = v * he - static_cast<double>(n) * he_prev;
    he_prev = he;
    he = next;
    phase *= cplx(0.0, -1.0);
  }
  return amp / lambda * acc * std::exp(-0.5 * v * v);
}

GaussianPacket GaussianPacket::conjugate() const { return {std::conj(amp), poly, lambda, -mod}; }

cplx Window::ft(double omega) const {
  if (!ft_fn) throw Error(ErrorCode::MissingClosedFormFT, "window '" + name + "' has no closed-form FT");
  return ft_fn(omega);
}

Window window_from_packet(std::string name, GaussianPacket packet) {
  Window w;
  w.name = std::move(name);
  w.decay_scale = 1.0 / packet.lambda;
  w.eval_fn = [packet](double x) { return packet.eval(x); };
  w.ft_fn = [packet](double omega) { return packet.ft(omega); };
  w.packet = std::move(packet);
  return w;
}

Window gauss_unit() { return window_from_packet("gauss-unit", {{kInvSqrt2Pi, 0.0}, {1.0}, 1.0, 0.0}); }

Window gauss(double width) {
  if (!(width > 0.0)) throw Error(ErrorCode::NonPositiveScale, "gauss width must be positive");
  const std::string name = width == 1.0 ? "gauss" : "dilated:gauss:" + format_param(1.0 / width);
  return window_from_packet(name, {{1.0, 0.0}, {1.0}, 1.0 / width, 0.0});
}

Window mexican_hat() { return window_from_packet("mexican-hat", {{1.0, 0.0}, {1.0, 0.0, -1.0}, 1.0, 0.0}); }

Window hermite1() { return window_from_packet("hermite1", {{1.0, 0.0}, {0.0, -1.0}, 1.0, 0.0}); }

Window window_by_name(std::string_view spec) {
  if (spec == "gauss-unit") return gauss_unit();
  if (spec == "gauss") return gauss();
  if (spec == "mexican-hat") return mexican_hat();
  if (spec == "hermite1") return hermite1();
  for (const std::string_view op : {std::string_view("modulated:"), std::string_view("dilated:")}) {
    if (!spec.starts_with(op)) continue;
    const auto rest = spec.substr(op.size());
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
      throw Error(ErrorCode::UnknownWindow, "window spec '" + std::string(spec) + "' lacks a parameter");
    const Window inner = window_by_name(rest.substr(0, colon));
    const double v = parse_param(rest.substr(colon + 1), spec);
    return op == "modulated:" ? modulate(inner, v) : dilate(inner, v);
  }
  throw Error(ErrorCode::UnknownWindow, "unknown window '" + std::string(spec) + "'");
}

Window modulate(const Window& g, double a) {
  if (a == 0.0) return g;
  Window w;
  w.name = "modulated:" + g.name + ":" + format_param(a);
  w.decay_scale = g.decay_scale;
  w.eval_fn = [f = g.eval_fn, a](double x) { return std::polar(1.0, a * x) * f(x); };
  if (g.ft_fn) w.ft_fn = [f = g.ft_fn, a](double omega) { return f(omega - a); };
  if (g.packet) {
    w.packet = *g.packet;
    w.packet->mod += a;
  }
  return w;
}

Window dilate(const Window& g, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::NonPositiveScale, "dilation needs eps > 0");
  if (eps == 1.0) return g;
  Window w;
  w.name = "dilated:" + g.name + ":" + format_param(eps);
  w.decay_scale = g.decay_scale / eps;
  w.eval_fn = [f = g.eval_fn, eps](double x) { return f(eps * x); };
  if (g.ft_fn) w.ft_fn = [f = g.ft_fn, eps](double omega) { return f(omega / eps) / eps; };
  if (g.packet) {
    w.packet = *g.packet;
    w.packet->lambda *= eps;
    w.packet->mod *= eps;
  }
  return w;
}

cplx numeric_ft(const Window& g, double omega) {
  constexpr std::size_t n = 4097;
  const double a = 10.0 * g.decay_scale;
  const double h = 2.0 * a / static_cast<double>(n - 1);
  cplx acc{};
  for (std::size_t j = 0; j < n; ++j) {
    const double x = -a + static_cast<double>(j) * h;
    const double w = (j == 0 || j + 1 == n) ? 0.5 * h : h;
    acc += w * g.eval(x) * std::polar(1.0, -omega * x);
  }
  return kInvSqrt2Pi * acc;
}

cplx window_ft(const Window& g, double omega) { return g.has_ft() ? g.ft(omega) : numeric_ft(g, omega); }

MomentEstimate moment(const Window& g, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be non-negative");
  if (k > 12) throw Error(ErrorCode::MomentOrderTooHigh, "moment order above 12");
  const double a = 10.0 * g.decay_scale;
  auto trapezoid = [&](std::size_t n) {
    const double h = 2.0 * a / static_cast<double>(n - 1);
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const double x = -a + static_cast<double>(j) * h;
      const double w = (j == 0 || j + 1 == n) ? 0.5 * h : h;
      acc += w * std::pow(x, k) * g.eval(x);
    }
    return acc;
  };
  const cplx fine = trapezoid(8193);
  const cplx coarse = trapezoid(4097);
  return {fine, std::abs(fine - coarse)};
}

AdmissibilityConstant admissibility_cg(const Window& g) {
  const auto m0 = moment(g, 0);
  if (std::abs(m0.value) >= 1e-8)
    throw Error(ErrorCode::NotAWavelet, "window '" + g.name + "' has zeroth moment " + format_param(std::abs(m0.value)));
  auto c = weighted_line_integral([&](double w) { return cplx(std::norm(window_ft(g, w)), 0.0); });
  c.value = {c.value.real(), 0.0};
  if (c.value.real() < 1e-10) throw Error(ErrorCode::ZeroAdmissibility, "C_g vanishes for '" + g.name + "'");
  return c;
}

AdmissibilityConstant admissibility_cgpsi(const Window& g, const Window& psi, double c2) {
  if (!std::isfinite(c2) || c2 == 0.0) throw Error(ErrorCode::InvalidArgument, "c2 must be finite and nonzero");
  auto c = weighted_line_integral([&](double w) {
    const double v = c2 * (w - 1.0);
    return window_ft(psi, v) * std::conj(window_ft(g, v));
  });
  if (std::abs(c.value) < 1e-10)
    throw Error(ErrorCode::ZeroAdmissibility, "C_{g,psi,c2} vanishes; reconstruction impossible");
  return c;
}

SeminormEstimate seminorm_rho(const Window& g, int k, int p, double h) {
  check_rho_indices(k, p);
  const double d = g.decay_scale;
  if (h <= 0.0) h = d / 256.0;
  const double a = 10.0 * d;
  const auto n = static_cast<std::size_t>(std::llround(2.0 * a / h)) + 1;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -a + static_cast<double>(i) * h;
    const cplx dp = central_difference([&](int o) { return g.eval(x + o * h); }, p, h);
    best = std::max(best, std::pow(std::abs(x), k) * std::abs(dp));
  }
  return {{k, p}, best, "x in [" + format_param(-a) + ", " + format_param(a) + "], h=" + format_param(h)};
}

SeminormEstimate seminorm_rho(const SampledSignal& f, int k, int p) {
  check_rho_indices(k, p);
  f.validate();
  const auto r = static_cast<std::size_t>(stencil_radius(p));
  if (f.size() < 2 * r + 1) throw Error(ErrorCode::GridTooCoarse, "signal shorter than the stencil");
  double best = 0.0;
  for (std::size_t j = r; j + r < f.size(); ++j) {
    const cplx dp = central_difference([&](int o) { return f.samples[j + o]; }, p, f.dt);
    best = std::max(best, std::pow(std::abs(f.t(j)), k) * std::abs(dp));
  }
  return {{k, p}, best, "signal grid, h=" + format_param(f.dt)};
}

}  // namespace fracspec
