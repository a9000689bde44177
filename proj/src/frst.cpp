#include "fracspec/frst.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/parallel.hpp"
#include "transform_detail.hpp"

namespace fracspec {

namespace {

// Returns false for the identity angle (zero operator).
bool require_frst_angle(const FracParam& p) {
  if (p.kind == AngleKind::IdentityAngle) return false;
  if (p.kind == AngleKind::ParityAngle)
    throw Error(ErrorCode::SingularAngle, "alpha at singular angle: the FRST is not defined at alpha = pi");
  return true;
}

void check_x_resolution(const Window& g, std::span<const double> x_axis, double xi_max) {
  if (x_axis.size() < 2) return;
  const double dx = detail::uniform_step(x_axis);
  if (dx > kPi * g.decay_scale / xi_max)
    throw Error(ErrorCode::GridTooCoarse, "x spacing exceeds pi*decay/max|xi|");
}

TFGrid empty_grid(const FracParam& p, const Window& g, const AxesSpec& axes) {
  axes.validate();
  return TFGrid(axes.x.points(), axes.xi.points(), {"FRST", p.alpha, g.name});
}

}  // namespace

cplx frst_delta(const FracParam& p, const Window& g, double x, double xi) {
  if (!require_frst_angle(p)) return {};
  return std::abs(xi) * (p.c_alpha * std::polar(1.0, 0.5 * p.c1 * xi * xi)) * std::conj(g.eval(-xi * x));
}

TestFunction frst_test_function(const FracParam& p, const Window& g, double x, double xi) {
  TestFunction phi;
  phi.center = x;
  phi.width = g.decay_scale / std::abs(xi);
  phi.name = "frst-kernel";
  // the xi^2 chirp is split off so that large |xi| does not swamp the t-dependent phase
  const cplx xi_factor = p.c_alpha * std::polar(1.0, 0.5 * p.c1 * xi * xi);
  phi.eval = [p, g, x, xi, xi_factor](double t) {
    const double phase = 0.5 * p.c1 * t * t - p.c2 * t * xi;
    return std::abs(xi) * xi_factor * std::conj(g.eval(xi * (t - x))) * std::polar(1.0, phase);
  };
  const double reach = std::abs(x) + 14.0 * phi.width;
  const double freq = std::abs(p.c1) * reach + std::abs(p.c2 * xi) + detail::window_modulation(g) * std::abs(xi);
  if (freq > 0.0) phi.panel = kPi / (2.0 * freq);
  return phi;
}

cplx frst_point(const FracParam& p, const Window& g, const SampledSignal& f, double x, double xi) {
  if (!require_frst_angle(p)) return {};
  f.validate();
  check_oscillation(p, f.dt, f.half_width(), xi);
  const auto w = fracspec::trapezoid_weights(f.size(), f.dt);
  cplx acc{};
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double t = f.t(j);
    acc += w[j] * f.samples[j] * std::conj(g.eval(xi * (t - x))) *
           std::polar(1.0, 0.5 * p.c1 * t * t - p.c2 * t * xi);
  }
  return std::abs(xi) * p.c_alpha * std::polar(1.0, 0.5 * p.c1 * xi * xi) * acc;
}

cplx frst_point(const FracParam& p, const Window& g, const Distribution& f, double x, double xi) {
  if (!require_frst_angle(p)) return {};
  if (f.is_zero()) return {};
  return pair(f, frst_test_function(p, g, x, xi));
}

TFGrid frst_forward(const FracParam& p, const Window& g, const SampledSignal& f, const AxesSpec& axes) {
  TFGrid grid = empty_grid(p, g, axes);
  f.validate();
  if (!require_frst_angle(p)) return grid;
  const double xi_max = detail::max_abs(grid.xi_axis);
  check_oscillation(p, f.dt, f.half_width(), xi_max);
  check_x_resolution(g, grid.x_axis, xi_max);

  const auto w = fracspec::trapezoid_weights(f.size(), f.dt);
  const auto pos = f.times();
  std::vector<cplx> chirped(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) chirped[j] = w[j] * f.samples[j] * std::polar(1.0, 0.5 * p.c1 * pos[j] * pos[j]);

  parallel_for(grid.nxi(), [&](std::size_t k) {
    const double xi = grid.xi_axis[k];
    std::vector<cplx> coef(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) coef[j] = chirped[j] * std::polar(1.0, -p.c2 * xi * pos[j]);
    std::vector<cplx> column(grid.nx());
    detail::window_correlate(g, true, xi, coef, pos, grid.x_axis, column);
    const cplx factor = std::abs(xi) * p.c_alpha * std::polar(1.0, 0.5 * p.c1 * xi * xi);
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) grid.at(ix, k) = factor * column[ix];
  });
  return grid;
}

TFGrid frst_forward(const FracParam& p, const Window& g, const Distribution& f, const AxesSpec& axes) {
  TFGrid grid = empty_grid(p, g, axes);
  if (!require_frst_angle(p) || f.is_zero()) return grid;
  parallel_for(grid.nxi(), [&](std::size_t k) {
    for (std::size_t ix = 0; ix < grid.nx(); ++ix)
      grid.at(ix, k) = pair(f, frst_test_function(p, g, grid.x_axis[ix], grid.xi_axis[k]));
  });
  return grid;
}

std::vector<cplx> frst_synthesis(const FracParam& p, const Window& psi, const TFGrid& F, std::span<const double> t_grid) {
  if (!p.regular()) throw Error(ErrorCode::SingularAngle, "FRST synthesis needs a regular angle");
  F.validate();
  if (F.nx() < 2) throw Error(ErrorCode::GridTooCoarse, "synthesis needs at least 2 x points");
  const std::size_t negatives = static_cast<std::size_t>(
      std::count_if(F.xi_axis.begin(), F.xi_axis.end(), [](double xi) { return xi < 0.0; }));
  if ((negatives == 1) || (F.nxi() - negatives == 1))
    throw Error(ErrorCode::GridTooCoarse, "each sign of xi needs at least 2 points");
  check_x_resolution(psi, F.x_axis, detail::max_abs(F.xi_axis));

  const auto wx = detail::trapezoid_weights(F.x_axis);
  const auto wxi = detail::log_axis_weights(F.xi_axis, 1.0);
  const std::size_t nt = t_grid.size();
  std::vector<cplx> columns(F.nxi() * nt);

  parallel_for(F.nxi(), [&](std::size_t k) {
    const double xi = F.xi_axis[k];
    std::vector<cplx> coef(F.nx());
    for (std::size_t ix = 0; ix < F.nx(); ++ix) coef[ix] = wx[ix] * F.at(ix, k);
    std::span<cplx> column(columns.data() + k * nt, nt);
    detail::window_correlate(psi, false, -xi, coef, F.x_axis, t_grid, column);
    const cplx factor = wxi[k] * std::polar(1.0, -0.5 * p.c1 * xi * xi);
    for (std::size_t i = 0; i < nt; ++i) column[i] *= factor * std::polar(1.0, p.c2 * t_grid[i] * xi);
  });

  const double sin_abs = std::abs(std::sin(p.alpha));
  const cplx pre = sin_abs * std::conj(p.c_alpha);
  std::vector<cplx> out(nt);
  std::vector<cplx> terms(F.nxi());
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t k = 0; k < F.nxi(); ++k) terms[k] = columns[k * nt + i];
    out[i] = pre * std::polar(1.0, -0.5 * p.c1 * t_grid[i] * t_grid[i]) * pairwise_sum(terms);
  }
  return out;
}

ReconstructionReport frst_reconstruct(const FracParam& p, const Window& g, const Window& psi, const SampledSignal& f,
                                      const AxesSpec& axes) {
  if (!p.regular()) throw Error(ErrorCode::SingularAngle, "reconstruction needs a regular angle");
  const auto c = admissibility_cgpsi(g, psi, p.c2);
  const TFGrid F = frst_forward(p, g, f, axes);
  ReconstructionReport rep;
  rep.t = f.times();
  rep.original = f.samples;
  rep.reconstructed = frst_synthesis(p, psi, F, rep.t);
  for (auto& v : rep.reconstructed) v /= c.value;
  rep.constant = c.value;
  rep.constant_error = c.quadrature_error_estimate;
  rep.relative_l2 = relative_l2(rep.reconstructed, rep.original);
  rep.max_error = max_abs_diff(rep.reconstructed, rep.original);
  return rep;
}

}  // namespace fracspec
