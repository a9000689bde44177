#pragma once

// Shared quadrature plumbing for the FRST and FRWT.

#include <span>
#include <vector>

#include "fracspec/grid.hpp"
#include "fracspec/windows.hpp"

namespace fracspec::detail {

/// out[k] = sum_j coef[j] * h(scale * (pos[j] - centers[k])), h = conj(g) or g.
/// Gaussian-packet windows go through the vector kernels; others are summed directly.
void window_correlate(const Window& g, bool conjugate, double scale, std::span<const cplx> coef,
                      std::span<const double> pos, std::span<const double> centers, std::span<cplx> out);

/// Trapezoid weights on arbitrary increasing nodes.
std::vector<double> trapezoid_weights(std::span<const double> nodes);

/// Per-node weights for d(xi) on a geometric axis: trapezoid in ln|xi| times |xi|,
/// each sign of xi integrated separately.
std::vector<double> log_axis_weights(std::span<const double> xi, double power);

double max_abs(std::span<const double> v) noexcept;
double min_abs(std::span<const double> v) noexcept;
double uniform_step(std::span<const double> axis) noexcept;

/// Maximum local oscillation of exp(i * mod * y) carried by the window, if known.
double window_modulation(const Window& g) noexcept;

}  // namespace fracspec::detail
