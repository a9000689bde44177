#pragma once

#include <span>
#include <string>
#include <vector>

#include "fracspec/distributions.hpp"
#include "fracspec/fraccore.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/windows.hpp"

namespace fracspec {

/// S f(x, xi) = |xi| int f(t) conj(g(xi (t - x))) K_alpha(t, xi) dt.
/// Identity angles give the zero grid; other non-regular angles throw SingularAngle.
TFGrid frst_forward(const FracParam& p, const Window& g, const SampledSignal& f, const AxesSpec& axes);
TFGrid frst_forward(const FracParam& p, const Window& g, const Distribution& f, const AxesSpec& axes);

/// Single-cell evaluations of the same integral.
cplx frst_point(const FracParam& p, const Window& g, const SampledSignal& f, double x, double xi);
cplx frst_point(const FracParam& p, const Window& g, const Distribution& f, double x, double xi);

/// t -> |xi| conj(g(xi (t - x))) K_alpha(t, xi); pairing a distribution with it gives S f(x, xi).
TestFunction frst_test_function(const FracParam& p, const Window& g, double x, double xi);

/// S delta(x, xi) = |xi| c_alpha conj(g(-xi x)) e^{i c1 xi^2 / 2}.
cplx frst_delta(const FracParam& p, const Window& g, double x, double xi);

/// |sin alpha| sum over the grid of F(x, xi) psi(xi (t - x)) K_{-alpha}(t, xi) dx dxi:
/// trapezoid in x, trapezoid in ln|xi| with Jacobian |xi|, signs of xi separately.
std::vector<cplx> frst_synthesis(const FracParam& p, const Window& psi, const TFGrid& F, std::span<const double> t_grid);

/// (1/C_{g,psi,c2}) (S_psi)^* S_g f on the signal's own grid.
ReconstructionReport frst_reconstruct(const FracParam& p, const Window& g, const Window& psi, const SampledSignal& f,
                                      const AxesSpec& axes);

}  // namespace fracspec
