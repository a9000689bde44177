#pragma once

#include <complex>
#include <functional>
#include <span>

namespace fracspec {

using RealToComplex = std::function<std::complex<double>(double)>;

struct QuadResult {
  std::complex<double> value{};
  double error = 0.0;  // absolute error estimate
};

/// Adaptive Gauss-Kronrod on each [breaks[i], breaks[i+1]], summed in order.
QuadResult integrate_panels(const RealToComplex& f, std::span<const double> breaks, double tol = 1e-13);

/// Tanh-sinh on [a, b]; tolerates integrable endpoint singularities.
QuadResult integrate_tanh_sinh(const RealToComplex& f, double a, double b, double tol = 1e-12);

/// Exp-sinh on [a, inf).
QuadResult integrate_half_line(const RealToComplex& f, double a, double tol = 1e-12);

}  // namespace fracspec
