#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracspec/distributions.hpp"
#include "fracspec/fraccore.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/windows.hpp"

namespace fracspec {

enum class WaveletGate { Require, Skip };

/// W f(x, xi) = xi^{-1/2} int f(t) conj(g((t - x)/xi)) e^{i c1 (t^2 - x^2)/2} dt, xi > 0.
TFGrid frwt_forward(const FracParam& p, const Window& g, const SampledSignal& f, const AxesSpec& axes,
                    WaveletGate gate = WaveletGate::Require);
TFGrid frwt_forward(const FracParam& p, const Window& g, const Distribution& f, const AxesSpec& axes,
                    WaveletGate gate = WaveletGate::Require);

cplx frwt_point(const FracParam& p, const Window& g, const SampledSignal& f, double x, double xi);
cplx frwt_point(const FracParam& p, const Window& g, const Distribution& f, double x, double xi);

/// t -> xi^{-1/2} conj(g((t - x)/xi)) e^{i c1 (t^2 - x^2)/2}.
TestFunction frwt_test_function(const FracParam& p, const Window& g, double x, double xi);

/// W delta(x, xi) = xi^{-1/2} conj(g(-x/xi)) e^{-i c1 x^2/2}.
cplx frwt_delta(const FracParam& p, const Window& g, double x, double xi);

/// Which constant multiplies t*xi inside the window transform on the FRFT route.
enum class FreqConstant { C1, C2 };

struct ViaFrftReport {
  TFGrid grid;
  FreqConstant constant = FreqConstant::C1;
  bool conjugate_ft = true;
  double relative_l2 = 0.0;   // against frwt_forward on the same grid
  double max_abs_dev = 0.0;
};

/// sqrt(2 pi xi) int F_alpha f(u) G(c u xi) K_{-alpha}(u, x) du with G = conj(g^) by default.
/// conjugate_ft = false evaluates the window transform without the conjugate.
ViaFrftReport frwt_via_frft(const FracParam& p, const Window& g, const SampledSignal& f, const AxesSpec& axes,
                            FreqConstant constant = FreqConstant::C1, bool conjugate_ft = true);

/// Printed: (1/2pi) sum F(x, xi) g((t - x)/xi) e^{-i c1 (t^2 - x^2)/2} dx dxi/xi^2.
/// Adjoint: the same with the extra xi^{-1/2} of the forward kernel.
enum class SynthesisForm { Printed, Adjoint };

std::vector<cplx> frwt_synthesis(const FracParam& p, const Window& g, const TFGrid& F, std::span<const double> t_grid,
                                 SynthesisForm form = SynthesisForm::Printed);

/// f~ = (2/C_g) * Adjoint synthesis of the forward transform; the printed
/// normalisation (1/(2 pi C_g)) * Printed is reported in diagnostic_relative_l2.
ReconstructionReport frwt_reconstruct(const FracParam& p, const Window& g, const SampledSignal& f, const AxesSpec& axes);

struct BridgePoint {
  double x = 0.0;
  double xi = 1.0;
  cplx lhs{};
  cplx rhs{};
  double rel_dev = 0.0;
};

struct BridgeReport {
  std::vector<BridgePoint> points;
  double max_rel_dev = 0.0;
};

/// e^{-i c1 xi^2/2} S_g f(x, xi) against sqrt(xi) c_alpha e^{i c1 x^2/2 - i c2 x xi} W_{M_{c2} g} f(x, 1/xi).
/// With `range`, every xi and 1/xi must lie inside [range.min, range.max].
BridgeReport frst_frwt_bridge(const FracParam& p, const Window& g, const SampledSignal& f,
                              std::span<const std::pair<double, double>> points,
                              const std::optional<ScaleAxis>& range = std::nullopt);
BridgeReport frst_frwt_bridge(const FracParam& p, const Window& g, const Distribution& f,
                              std::span<const std::pair<double, double>> points,
                              const std::optional<ScaleAxis>& range = std::nullopt);

struct BatteryCheck {
  std::string name;
  cplx direct{};         // <f, phi>
  cplx reconstructed{};  // (2/C_g) <W f, W conj(phi)> with the adjoint normalisation
  double rel_dev = 0.0;
};

/// Inversion tested through pairings: <f~, phi> against <f, phi> over the battery.
/// phi is sampled on [-T, T] with N points to get its transform.
std::vector<BatteryCheck> frwt_distribution_inversion(const FracParam& p, const Window& g, const Distribution& f,
                                                      const AxesSpec& axes, double T = 12.0, std::size_t N = 1024);

struct ContinuityBound {
  int k = 0;
  int n = 0;
  double lhs = 0.0;  // rho_{k,n}(synthesis of F)
  double rhs = 0.0;  // sum binom(n; n1, n2) sigma^{00}_{k, k+n2}(F) rho_{k+n2, n1}(g)
  double constant = 0.0;  // lhs / rhs
};

/// Spot check of the seminorm inequality for the printed synthesis operator,
/// output sampled at N points on [-T, T].
ContinuityBound continuity_bound(const FracParam& p, const Window& g, const TFGrid& F, int k, int n, double T = 12.0,
                                 std::size_t N = 1024);

}  // namespace fracspec
