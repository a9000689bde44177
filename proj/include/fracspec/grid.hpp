#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace fracspec {

using cplx = std::complex<double>;

/// Smallest admissible |xi| on a time-frequency grid.
inline constexpr double kXiFloor = 1.0 / 64.0;

struct LinearAxis {
  double min = -8.0;
  double max = 8.0;
  std::size_t n = 128;

  std::vector<double> points() const;
};

/// Geometric spacing in |xi|; with both_signs the negative mirror comes first.
struct ScaleAxis {
  double min = 1.0 / 64.0;
  double max = 64.0;
  std::size_t n = 96;  // per sign
  bool both_signs = true;

  std::vector<double> points() const;
};

struct AxesSpec {
  LinearAxis x;
  ScaleAxis xi;

  void validate() const;
};

AxesSpec default_frst_axes();
AxesSpec default_frwt_axes();

struct GridMeta {
  std::string transform;  // "FRST" or "FRWT"
  double alpha = 0.0;
  std::string window;
};

/// Values are stored row-major: x outer, xi inner.
struct TFGrid {
  std::vector<double> x_axis;
  std::vector<double> xi_axis;
  std::vector<cplx> values;
  GridMeta meta;

  TFGrid() = default;
  TFGrid(std::vector<double> x, std::vector<double> xi, GridMeta m);

  std::size_t nx() const noexcept { return x_axis.size(); }
  std::size_t nxi() const noexcept { return xi_axis.size(); }
  cplx& at(std::size_t ix, std::size_t ik) noexcept { return values[ix * xi_axis.size() + ik]; }
  const cplx& at(std::size_t ix, std::size_t ik) const noexcept { return values[ix * xi_axis.size() + ik]; }

  /// Axes strictly increasing, |xi| >= kXiFloor, finite values.
  void validate() const;
};

struct SeminormEstimate {
  std::vector<int> indices;
  double value = 0.0;
  std::string grid_spec;
};

/// sup |xi|^s |x^r d_xi^l d_x^m F| over grid points where the stencil fits.
SeminormEstimate seminorm_sigma(const TFGrid& F, int l, int m, int s, int r);

/// sup (|xi|^s + |xi|^-s) |x^r d_xi^l d_x^m F|, the seminorm on R x R\{0}.
SeminormEstimate seminorm_rho_y(const TFGrid& F, int l, int m, int s, int r);

struct ReconstructionReport {
  std::vector<double> t;
  std::vector<cplx> original;
  std::vector<cplx> reconstructed;
  cplx constant{};
  double constant_error = 0.0;
  double relative_l2 = 0.0;
  double max_error = 0.0;
  // secondary estimate (e.g. an alternative normalisation); NaN when absent
  double diagnostic_relative_l2 = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

}  // namespace fracspec
