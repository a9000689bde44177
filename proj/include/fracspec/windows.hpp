#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracspec/fraccore.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/simd/kernels.hpp"

namespace fracspec {

/// g(y) = amp * P(lambda*y) * exp(-(lambda*y)^2/2) * exp(i*mod*y).
struct GaussianPacket {
  cplx amp{1.0, 0.0};
  std::vector<double> poly{1.0};  // ascending, real
  double lambda = 1.0;
  double mod = 0.0;

  cplx eval(double y) const noexcept;
  cplx ft(double omega) const noexcept;
  /// Packet of conj(g).
  GaussianPacket conjugate() const;
  simd::PacketView view() const noexcept { return {amp, poly, lambda, mod}; }
};

struct Window {
  std::string name;
  double decay_scale = 1.0;
  std::function<cplx(double)> eval_fn;
  std::function<cplx(double)> ft_fn;  // empty when no closed form is known
  std::optional<GaussianPacket> packet;

  cplx eval(double x) const { return eval_fn(x); }
  cplx operator()(double x) const { return eval_fn(x); }
  bool has_ft() const noexcept { return static_cast<bool>(ft_fn); }
  /// Closed-form transform; throws MissingClosedFormFT.
  cplx ft(double omega) const;
};

Window window_from_packet(std::string name, GaussianPacket packet);

/// e^{-x^2/2}/sqrt(2pi): unit mass.
Window gauss_unit();
/// e^{-x^2/(2 w^2)}: peak one.
Window gauss(double width = 1.0);
/// (1 - x^2) e^{-x^2/2}.
Window mexican_hat();
/// d/dx e^{-x^2/2} = -x e^{-x^2/2}.
Window hermite1();

/// "gauss-unit", "gauss", "mexican-hat", "hermite1", "modulated:<name>:<a>", "dilated:<name>:<eps>".
Window window_by_name(std::string_view spec);

/// e^{iax} g(x).
Window modulate(const Window& g, double a);
/// g(eps x); throws NonPositiveScale.
Window dilate(const Window& g, double eps);

/// Trapezoid FT (1/sqrt(2pi)) int g(x) e^{-i omega x} dx over [-10d, 10d].
cplx numeric_ft(const Window& g, double omega);

/// ft when present, numeric_ft otherwise.
cplx window_ft(const Window& g, double omega);

struct MomentEstimate {
  cplx value{};
  double error = 0.0;
};

/// int x^k g(x) dx over [-10d, 10d]; k <= 12.
MomentEstimate moment(const Window& g, int k);

struct AdmissibilityConstant {
  cplx value{};
  double quadrature_error_estimate = 0.0;
};

/// C_g = int |g^(w)|^2 dw/|w|.
AdmissibilityConstant admissibility_cg(const Window& g);

/// C_{g,psi,c2} = int psi^(c2(w-1)) conj(g^(c2(w-1))) dw/|w|.
AdmissibilityConstant admissibility_cgpsi(const Window& g, const Window& psi, double c2);

/// sup |x^k g^(p)(x)| over [-10d, 10d] with spacing h (default d/256), central differences.
SeminormEstimate seminorm_rho(const Window& g, int k, int p, double h = 0.0);

/// Same on the samples of a signal; the stencil step is the sample spacing.
SeminormEstimate seminorm_rho(const SampledSignal& f, int k, int p);

}  // namespace fracspec
