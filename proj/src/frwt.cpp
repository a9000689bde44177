#include "fracspec/frwt.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/frst.hpp"
#include "fracspec/io.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/simd/kernels.hpp"
#include "transform_detail.hpp"

namespace fracspec {

namespace {

void require_regular(const FracParam& p, const char* what) {
  if (!p.regular()) throw Error(ErrorCode::SingularAngle, std::string("alpha at singular angle: ") + what);
}

void require_wavelet(const Window& g) {
  const auto m0 = moment(g, 0);
  if (std::abs(m0.value) >= 1e-8)
    throw Error(ErrorCode::NotAWavelet, g.name + " has nonzero mean |m0| = " + format_double(std::abs(m0.value)));
}

TFGrid frwt_grid(const FracParam& p, const Window& g, const AxesSpec& axes) {
  axes.validate();
  if (axes.xi.both_signs) throw Error(ErrorCode::InvalidArgument, "FRWT scales must be positive");
  return TFGrid(axes.x.points(), axes.xi.points(), {"FRWT", p.alpha, g.name});
}

void check_x_resolution(const Window& g, std::span<const double> x_axis, double xi_min) {
  if (x_axis.size() < 2) return;
  if (detail::uniform_step(x_axis) > kPi * g.decay_scale * xi_min)
    throw Error(ErrorCode::GridTooCoarse, "x spacing exceeds pi*decay*min(xi)");
}

// Only the chirp e^{i c1 t^2/2} oscillates in the FRWT integrand.
void check_chirp(const FracParam& p, const SampledSignal& f) {
  const double omega = std::abs(p.c1) * f.half_width();
  if (omega > 0.0 && f.dt > kPi / (4.0 * omega))
    throw Error(ErrorCode::UndersampledChirp, "dt exceeds pi/(4 |c1| T)");
}

}  // namespace

cplx frwt_delta(const FracParam& p, const Window& g, double x, double xi) {
  require_regular(p, "FRWT");
  return std::conj(g.eval(-x / xi)) * std::polar(1.0 / std::sqrt(xi), -0.5 * p.c1 * x * x);
}

TestFunction frwt_test_function(const FracParam& p, const Window& g, double x, double xi) {
  if (!(xi > 0.0)) throw Error(ErrorCode::InvalidArgument, "FRWT scale must be positive");
  TestFunction phi;
  phi.center = x;
  phi.width = g.decay_scale * xi;
  phi.name = "frwt-kernel";
  phi.eval = [p, g, x, xi](double t) {
    return std::conj(g.eval((t - x) / xi)) * std::polar(1.0 / std::sqrt(xi), 0.5 * p.c1 * (t * t - x * x));
  };
  const double reach = std::abs(x) + 14.0 * phi.width;
  const double freq = std::abs(p.c1) * reach + detail::window_modulation(g) / xi;
  if (freq > 0.0) phi.panel = kPi / (2.0 * freq);
  return phi;
}

cplx frwt_point(const FracParam& p, const Window& g, const SampledSignal& f, double x, double xi) {
  require_regular(p, "FRWT");
  if (!(xi > 0.0)) throw Error(ErrorCode::InvalidArgument, "FRWT scale must be positive");
  f.validate();
  check_chirp(p, f);
  const auto w = fracspec::trapezoid_weights(f.size(), f.dt);
  cplx acc{};
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double t = f.t(j);
    acc += w[j] * f.samples[j] * std::conj(g.eval((t - x) / xi)) * std::polar(1.0, 0.5 * p.c1 * t * t);
  }
  return std::polar(1.0 / std::sqrt(xi), -0.5 * p.c1 * x * x) * acc;
}

cplx frwt_point(const FracParam& p, const Window& g, const Distribution& f, double x, double xi) {
  require_regular(p, "FRWT");
  if (f.is_zero()) return {};
  return pair(f, frwt_test_function(p, g, x, xi));
}

TFGrid frwt_forward(const FracParam& p, const Window& g, const SampledSignal& f, const AxesSpec& axes,
                    WaveletGate gate) {
  require_regular(p, "FRWT");
  TFGrid grid = frwt_grid(p, g, axes);
  if (gate == WaveletGate::Require) require_wavelet(g);
  f.validate();
  check_chirp(p, f);
  check_x_resolution(g, grid.x_axis, detail::min_abs(grid.xi_axis));

  const auto w = fracspec::trapezoid_weights(f.size(), f.dt);
  const auto pos = f.times();
  std::vector<cplx> coef(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) coef[j] = w[j] * f.samples[j] * std::polar(1.0, 0.5 * p.c1 * pos[j] * pos[j]);
  std::vector<cplx> out_chirp(grid.nx());
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) out_chirp[ix] = std::polar(1.0, -0.5 * p.c1 * grid.x_axis[ix] * grid.x_axis[ix]);

  parallel_for(grid.nxi(), [&](std::size_t k) {
    const double xi = grid.xi_axis[k];
    std::vector<cplx> column(grid.nx());
    detail::window_correlate(g, true, 1.0 / xi, coef, pos, grid.x_axis, column);
    const double norm = 1.0 / std::sqrt(xi);
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) grid.at(ix, k) = norm * out_chirp[ix] * column[ix];
  });
  return grid;
}

TFGrid frwt_forward(const FracParam& p, const Window& g, const Distribution& f, const AxesSpec& axes,
                    WaveletGate gate) {
  require_regular(p, "FRWT");
  TFGrid grid = frwt_grid(p, g, axes);
  if (gate == WaveletGate::Require) require_wavelet(g);
  if (f.is_zero()) return grid;
  parallel_for(grid.nxi(), [&](std::size_t k) {
    for (std::size_t ix = 0; ix < grid.nx(); ++ix)
      grid.at(ix, k) = pair(f, frwt_test_function(p, g, grid.x_axis[ix], grid.xi_axis[k]));
  });
  return grid;
}

ViaFrftReport frwt_via_frft(const FracParam& p, const Window& g, const SampledSignal& f, const AxesSpec& axes,
                            FreqConstant constant, bool conjugate_ft) {
  require_regular(p, "FRWT");
  if (!g.has_ft()) throw Error(ErrorCode::MissingClosedFormFT, g.name);
  ViaFrftReport rep;
  rep.constant = constant;
  rep.conjugate_ft = conjugate_ft;
  rep.grid = frwt_grid(p, g, axes);
  f.validate();
  TFGrid& grid = rep.grid;

  const auto u = f.times();
  const auto Ff = frft(p, f, u);
  const auto w = fracspec::trapezoid_weights(f.size(), f.dt);
  const double c = constant == FreqConstant::C1 ? p.c1 : p.c2;
  std::vector<double> freq(grid.nx());
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) freq[ix] = p.c2 * grid.x_axis[ix];

  parallel_for(grid.nxi(), [&](std::size_t k) {
    const double xi = grid.xi_axis[k];
    std::vector<cplx> coef(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      const cplx G = g.ft(c * u[j] * xi);
      coef[j] = w[j] * Ff[j] * (conjugate_ft ? std::conj(G) : G) * std::polar(1.0, -0.5 * p.c1 * u[j] * u[j]);
    }
    std::vector<cplx> column(grid.nx());
    simd::phase_sum({.coef = coef, .pos = u, .freq = freq, .out = column});
    const cplx pre = std::sqrt(kTwoPi * xi) * std::conj(p.c_alpha);
    for (std::size_t ix = 0; ix < grid.nx(); ++ix)
      grid.at(ix, k) = pre * std::polar(1.0, -0.5 * p.c1 * grid.x_axis[ix] * grid.x_axis[ix]) * column[ix];
  });

  const TFGrid direct = frwt_forward(p, g, f, axes, WaveletGate::Skip);
  rep.relative_l2 = relative_l2(grid.values, direct.values);
  rep.max_abs_dev = max_abs_diff(grid.values, direct.values);
  return rep;
}

std::vector<cplx> frwt_synthesis(const FracParam& p, const Window& g, const TFGrid& F, std::span<const double> t_grid,
                                 SynthesisForm form) {
  require_regular(p, "FRWT synthesis");
  F.validate();
  if (F.nx() < 2 || F.nxi() < 2) throw Error(ErrorCode::GridTooCoarse, "synthesis needs at least 2 points per axis");
  if (F.xi_axis.front() <= 0.0) throw Error(ErrorCode::InvalidArgument, "FRWT scales must be positive");
  check_x_resolution(g, F.x_axis, F.xi_axis.front());

  const auto wx = detail::trapezoid_weights(F.x_axis);
  // dxi/xi^2 = xi^{-1} d ln xi
  const auto wxi = detail::log_axis_weights(F.xi_axis, form == SynthesisForm::Adjoint ? -1.5 : -1.0);
  const std::size_t nt = t_grid.size();
  std::vector<cplx> columns(F.nxi() * nt);

  parallel_for(F.nxi(), [&](std::size_t k) {
    const double xi = F.xi_axis[k];
    std::vector<cplx> coef(F.nx());
    for (std::size_t ix = 0; ix < F.nx(); ++ix)
      coef[ix] = wx[ix] * F.at(ix, k) * std::polar(1.0, 0.5 * p.c1 * F.x_axis[ix] * F.x_axis[ix]);
    std::span<cplx> column(columns.data() + k * nt, nt);
    detail::window_correlate(g, false, -1.0 / xi, coef, F.x_axis, t_grid, column);
    for (auto& v : column) v *= wxi[k];
  });

  std::vector<cplx> out(nt);
  std::vector<cplx> terms(F.nxi());
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t k = 0; k < F.nxi(); ++k) terms[k] = columns[k * nt + i];
    out[i] = std::polar(1.0 / kTwoPi, -0.5 * p.c1 * t_grid[i] * t_grid[i]) * pairwise_sum(terms);
  }
  return out;
}

ReconstructionReport frwt_reconstruct(const FracParam& p, const Window& g, const SampledSignal& f,
                                      const AxesSpec& axes) {
  require_regular(p, "FRWT");
  const auto cg = admissibility_cg(g);
  const TFGrid F = frwt_forward(p, g, f, axes);
  ReconstructionReport rep;
  rep.t = f.times();
  rep.original = f.samples;
  rep.constant = cg.value;
  rep.constant_error = cg.quadrature_error_estimate;

  // positive scales only cover half the frequency axis for each sign, hence 2/C_g
  rep.reconstructed = frwt_synthesis(p, g, F, rep.t, SynthesisForm::Adjoint);
  for (auto& v : rep.reconstructed) v *= 2.0 / cg.value;
  rep.relative_l2 = relative_l2(rep.reconstructed, rep.original);
  rep.max_error = max_abs_diff(rep.reconstructed, rep.original);

  auto printed = frwt_synthesis(p, g, F, rep.t, SynthesisForm::Printed);
  for (auto& v : printed) v /= kTwoPi * cg.value;
  rep.diagnostic_relative_l2 = relative_l2(printed, rep.original);
  rep.note = "reconstructed: (2/C_g) with xi^{-1/2} in the synthesis kernel; diagnostic: printed 1/(2 pi C_g) form";
  return rep;
}

namespace {

template <class Input>
BridgeReport bridge_impl(const FracParam& p, const Window& g, const Input& f,
                         std::span<const std::pair<double, double>> points, const std::optional<ScaleAxis>& range) {
  require_regular(p, "bridge");
  for (const auto& [x, xi] : points) {
    if (!(xi > 0.0)) throw Error(ErrorCode::InvalidArgument, "bridge probes need xi > 0");
    if (range) {
      const double lo = range->min * (1.0 - 1e-12);
      const double hi = range->max * (1.0 + 1e-12);
      if (xi < lo || xi > hi || 1.0 / xi < lo || 1.0 / xi > hi)
        throw Error(ErrorCode::InvalidArgument, "bridge probe xi or 1/xi outside the scale axis");
    }
  }
  const Window h = modulate(g, p.c2);
  BridgeReport rep;
  rep.points.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto [x, xi] = points[i];
    BridgePoint& b = rep.points[i];
    b.x = x;
    b.xi = xi;
    b.lhs = std::polar(1.0, -0.5 * p.c1 * xi * xi) * frst_point(p, g, f, x, xi);
    b.rhs = std::sqrt(xi) * p.c_alpha * std::polar(1.0, 0.5 * p.c1 * x * x - p.c2 * x * xi) *
            frwt_point(p, h, f, x, 1.0 / xi);
    const double scale = std::max(std::abs(b.lhs), std::abs(b.rhs));
    b.rel_dev = scale > 0.0 ? std::abs(b.lhs - b.rhs) / scale : 0.0;
  });
  for (const auto& b : rep.points) rep.max_rel_dev = std::max(rep.max_rel_dev, b.rel_dev);
  return rep;
}

}  // namespace

BridgeReport frst_frwt_bridge(const FracParam& p, const Window& g, const SampledSignal& f,
                              std::span<const std::pair<double, double>> points, const std::optional<ScaleAxis>& range) {
  return bridge_impl(p, g, f, points, range);
}

BridgeReport frst_frwt_bridge(const FracParam& p, const Window& g, const Distribution& f,
                              std::span<const std::pair<double, double>> points, const std::optional<ScaleAxis>& range) {
  return bridge_impl(p, g, f, points, range);
}

std::vector<BatteryCheck> frwt_distribution_inversion(const FracParam& p, const Window& g, const Distribution& f,
                                                      const AxesSpec& axes, double T, std::size_t N) {
  require_regular(p, "FRWT");
  const auto cg = admissibility_cg(g);
  const TFGrid Wf = frwt_forward(p, g, f, axes);
  const auto wx = detail::trapezoid_weights(Wf.x_axis);
  const auto wxi = detail::log_axis_weights(Wf.xi_axis, -1.0);

  std::vector<BatteryCheck> out;
  for (const auto& phi : test_battery(p.c2)) {
    BatteryCheck c;
    c.name = phi.name;
    c.direct = pair(f, phi);
    const auto phi_bar = sample_uniform([&](double t) { return std::conj(phi(t)); }, T, N);
    const TFGrid Wphi = frwt_forward(p, g, phi_bar, axes);
    std::vector<cplx> terms(Wf.values.size());
    for (std::size_t ix = 0; ix < Wf.nx(); ++ix)
      for (std::size_t k = 0; k < Wf.nxi(); ++k)
        terms[ix * Wf.nxi() + k] = wx[ix] * wxi[k] * Wf.at(ix, k) * std::conj(Wphi.at(ix, k));
    c.reconstructed = pairwise_sum(terms) / (kPi * cg.value);
    const double scale = std::max(std::abs(c.direct), std::abs(c.reconstructed));
    c.rel_dev = scale > 0.0 ? std::abs(c.direct - c.reconstructed) / scale : 0.0;
    out.push_back(std::move(c));
  }
  return out;
}

ContinuityBound continuity_bound(const FracParam& p, const Window& g, const TFGrid& F, int k, int n, double T,
                                 std::size_t N) {
  SampledSignal out = sample_uniform([](double) { return cplx{}; }, T, N);
  out.samples = frwt_synthesis(p, g, F, out.times(), SynthesisForm::Printed);
  ContinuityBound b;
  b.k = k;
  b.n = n;
  b.lhs = seminorm_rho(out, k, n).value;
  double binom = 1.0;
  for (int n1 = 0; n1 <= n; ++n1) {
    if (n1 > 0) binom = binom * (n - n1 + 1) / n1;
    const int n2 = n - n1;
    b.rhs += binom * seminorm_sigma(F, 0, 0, k, k + n2).value * seminorm_rho(g, k + n2, n1).value;
  }
  b.constant = b.rhs > 0.0 ? b.lhs / b.rhs : (b.lhs > 0.0 ? HUGE_VAL : 0.0);
  return b;
}

}  // namespace fracspec
