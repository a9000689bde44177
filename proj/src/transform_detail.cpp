#include "transform_detail.hpp"

#include <algorithm>
#include <cmath>

namespace fracspec::detail {

void window_correlate(const Window& g, bool conjugate, double scale, std::span<const cplx> coef,
                      std::span<const double> pos, std::span<const double> centers, std::span<cplx> out) {
  if (g.packet) {
    const GaussianPacket packet = conjugate ? g.packet->conjugate() : *g.packet;
    simd::packet_correlate({.packet = packet.view(),
                            .scale = scale,
                            .cutoff = 12.0,
                            .coef = coef,
                            .pos = pos,
                            .centers = centers,
                            .out = out});
    return;
  }
  for (std::size_t k = 0; k < centers.size(); ++k) {
    cplx acc{};
    for (std::size_t j = 0; j < pos.size(); ++j) {
      const cplx h = g.eval(scale * (pos[j] - centers[k]));
      acc += coef[j] * (conjugate ? std::conj(h) : h);
    }
    out[k] = acc;
  }
}

std::vector<double> trapezoid_weights(std::span<const double> nodes) {
  std::vector<double> w(nodes.size(), 0.0);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double h = 0.5 * (nodes[i + 1] - nodes[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  return w;
}

std::vector<double> log_axis_weights(std::span<const double> xi, double power) {
  std::vector<double> w(xi.size(), 0.0);
  std::size_t start = 0;
  while (start < xi.size()) {
    std::size_t stop = start;
    while (stop < xi.size() && (xi[stop] > 0.0) == (xi[start] > 0.0)) ++stop;
    std::vector<double> u;
    for (std::size_t i = start; i < stop; ++i) u.push_back(std::log(std::abs(xi[i])));
    if (u.size() > 1 && u.front() > u.back()) {
      // negative branch runs from large to small |xi|
      std::vector<double> rev(u.rbegin(), u.rend());
      const auto tw = trapezoid_weights(rev);
      for (std::size_t i = 0; i < u.size(); ++i) w[start + i] = tw[u.size() - 1 - i];
    } else {
      const auto tw = trapezoid_weights(u);
      for (std::size_t i = 0; i < u.size(); ++i) w[start + i] = tw[i];
    }
    for (std::size_t i = start; i < stop; ++i) w[i] *= std::pow(std::abs(xi[i]), power);
    start = stop;
  }
  return w;
}

double max_abs(std::span<const double> v) noexcept {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

double min_abs(std::span<const double> v) noexcept {
  double m = HUGE_VAL;
  for (const double x : v) m = std::min(m, std::abs(x));
  return m;
}

double uniform_step(std::span<const double> axis) noexcept {
  double h = 0.0;
  for (std::size_t i = 1; i < axis.size(); ++i) h = std::max(h, axis[i] - axis[i - 1]);
  return h;
}

double window_modulation(const Window& g) noexcept { return g.packet ? std::abs(g.packet->mod) : 0.0; }

}  // namespace fracspec::detail
