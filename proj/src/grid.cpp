#include "fracspec/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracspec/error.hpp"

namespace fracspec {

std::vector<double> LinearAxis::points() const {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = min;
    return out;
  }
  const double h = (max - min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = min + static_cast<double>(i) * h;
  out.back() = max;
  return out;
}

std::vector<double> ScaleAxis::points() const {
  std::vector<double> mag(n);
  const double lo = std::log(min);
  const double step = n > 1 ? (std::log(max) - lo) / static_cast<double>(n - 1) : 0.0;
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::exp(lo + static_cast<double>(i) * step);
  if (n > 1) {
    mag.front() = min;
    mag.back() = max;
  }
  if (!both_signs) return mag;
  std::vector<double> out;
  out.reserve(2 * n);
  for (auto it = mag.rbegin(); it != mag.rend(); ++it) out.push_back(-*it);
  out.insert(out.end(), mag.begin(), mag.end());
  return out;
}

void AxesSpec::validate() const {
  if (x.n < 1 || !(x.max >= x.min)) throw Error(ErrorCode::InvalidArgument, "x axis needs n >= 1 and max >= min");
  if (x.n > 1 && !(x.max > x.min)) throw Error(ErrorCode::InvalidArgument, "x axis is degenerate");
  if (xi.n < 1 || !(xi.min > 0.0) || !(xi.max >= xi.min))
    throw Error(ErrorCode::InvalidArgument, "xi axis needs 0 < min <= max");
  if (xi.min < kXiFloor * (1.0 - 1e-12))
    throw Error(ErrorCode::InvalidArgument, "xi axis reaches below the floor 2^-6");
}

AxesSpec default_frst_axes() { return {{-8.0, 8.0, 128}, {1.0 / 64.0, 64.0, 96, true}}; }

AxesSpec default_frwt_axes() { return {{-8.0, 8.0, 128}, {1.0 / 16.0, 16.0, 96, false}}; }

TFGrid::TFGrid(std::vector<double> x, std::vector<double> xi, GridMeta m)
    : x_axis(std::move(x)), xi_axis(std::move(xi)), values(x_axis.size() * xi_axis.size()), meta(std::move(m)) {}

void TFGrid::validate() const {
  if (values.size() != x_axis.size() * xi_axis.size())
    throw Error(ErrorCode::InvalidArgument, "grid value count does not match axes");
  for (std::size_t i = 1; i < x_axis.size(); ++i)
    if (!(x_axis[i] > x_axis[i - 1])) throw Error(ErrorCode::InvalidArgument, "x axis not strictly increasing");
  for (std::size_t i = 1; i < xi_axis.size(); ++i)
    if (!(xi_axis[i] > xi_axis[i - 1])) throw Error(ErrorCode::InvalidArgument, "xi axis not strictly increasing");
  for (const double xi : xi_axis)
    if (std::abs(xi) < kXiFloor * (1.0 - 1e-12)) throw Error(ErrorCode::InvalidArgument, "xi entry below the floor");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorCode::InvalidArgument, "grid holds non-finite values");
}

namespace {

// Three-point derivative weights on a possibly non-uniform axis at interior index i.
struct Stencil {
  double wm, w0, wp;
};

Stencil first_derivative(const std::vector<double>& a, std::size_t i) {
  const double h1 = a[i] - a[i - 1];
  const double h2 = a[i + 1] - a[i];
  return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
}

Stencil second_derivative(const std::vector<double>& a, std::size_t i) {
  const double h1 = a[i] - a[i - 1];
  const double h2 = a[i + 1] - a[i];
  return {2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2))};
}

Stencil stencil(const std::vector<double>& a, std::size_t i, int order) {
  return order == 1 ? first_derivative(a, i) : second_derivative(a, i);
}

// d_x^m applied to column ik at row ix (requires interior ix when m > 0).
cplx dx(const TFGrid& F, std::size_t ix, std::size_t ik, int m) {
  if (m == 0) return F.at(ix, ik);
  const auto s = stencil(F.x_axis, ix, m);
  return s.wm * F.at(ix - 1, ik) + s.w0 * F.at(ix, ik) + s.wp * F.at(ix + 1, ik);
}

cplx mixed(const TFGrid& F, std::size_t ix, std::size_t ik, int l, int m) {
  if (l == 0) return dx(F, ix, ik, m);
  const auto s = stencil(F.xi_axis, ik, l);
  return s.wm * dx(F, ix, ik - 1, m) + s.w0 * dx(F, ix, ik, m) + s.wp * dx(F, ix, ik + 1, m);
}

template <class Weight>
double sup_over_grid(const TFGrid& F, int l, int m, int r, Weight&& weight) {
  if (l < 0 || m < 0 || r < 0) throw Error(ErrorCode::InvalidArgument, "seminorm indices must be non-negative");
  if (l + m > 2) throw Error(ErrorCode::DerivativeOrderTooHigh, "grid seminorms support l + m <= 2");
  if (F.values.size() != F.nx() * F.nxi()) throw Error(ErrorCode::InvalidArgument, "grid value count mismatch");
  const std::size_t px = m > 0 ? 1 : 0;
  const std::size_t pk = l > 0 ? 1 : 0;
  if (F.nx() < 2 * px + 1 || F.nxi() < 2 * pk + 1)
    throw Error(ErrorCode::GridTooCoarse, "finite-difference stencil exceeds grid");
  double best = 0.0;
  for (std::size_t ix = px; ix + px < F.nx(); ++ix) {
    const double xr = std::pow(std::abs(F.x_axis[ix]), r);
    for (std::size_t ik = pk; ik + pk < F.nxi(); ++ik) {
      // a sign change of xi between neighbours is not a valid stencil
      if (pk && (F.xi_axis[ik - 1] * F.xi_axis[ik + 1] <= 0.0)) continue;
      const double v = weight(F.xi_axis[ik]) * xr * std::abs(mixed(F, ix, ik, l, m));
      best = std::max(best, v);
    }
  }
  return best;
}

std::string describe(const TFGrid& F) {
  std::ostringstream os;
  os << "x:" << F.nx() << " pts, xi:" << F.nxi() << " pts";
  return os.str();
}

}  // namespace

SeminormEstimate seminorm_sigma(const TFGrid& F, int l, int m, int s, int r) {
  const double v = sup_over_grid(F, l, m, r, [s](double xi) { return std::pow(std::abs(xi), s); });
  return {{l, m, s, r}, v, describe(F)};
}

SeminormEstimate seminorm_rho_y(const TFGrid& F, int l, int m, int s, int r) {
  const double v = sup_over_grid(F, l, m, r, [s](double xi) {
    const double a = std::pow(std::abs(xi), s);
    return a + 1.0 / a;
  });
  return {{l, m, s, r}, v, describe(F)};
}

}  // namespace fracspec
