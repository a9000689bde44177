#include <algorithm>
#include <cmath>

#include "fracspec/simd/kernels.hpp"

namespace fracspec::simd {

std::pair<std::size_t, std::size_t> index_range(std::span<const double> pos, double lo, double hi) noexcept {
  auto first = std::lower_bound(pos.begin(), pos.end(), lo);
  auto last = std::upper_bound(first, pos.end(), hi);
  return {static_cast<std::size_t>(first - pos.begin()), static_cast<std::size_t>(last - pos.begin())};
}

namespace scalar {

namespace {

inline double horner(std::span<const double> poly, double t) {
  double acc = 0.0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * t + poly[i];
  return acc;
}

}  // namespace

void packet_correlate(const CorrelateArgs& a) {
  const auto& g = a.packet;
  const double radius = a.cutoff / std::abs(g.lambda * a.scale);
  const double amp_re = g.amp.real();
  const double amp_im = g.amp.imag();
  for (std::size_t k = 0; k < a.centers.size(); ++k) {
    const double c = a.centers[k];
    const auto [j0, j1] = index_range(a.pos, c - radius, c + radius);
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t j = j0; j < j1; ++j) {
      const double y = a.scale * (a.pos[j] - c);
      const double t = g.lambda * y;
      if (!(std::abs(t) <= a.cutoff)) continue;
      const double pe = horner(g.poly, t) * std::exp(-0.5 * (t * t));
      double w_re = amp_re * pe;
      double w_im = amp_im * pe;
      if (g.mod != 0.0) {
        const double ph = g.mod * y;
        const double cs = std::cos(ph);
        const double sn = std::sin(ph);
        w_re = (amp_re * cs - amp_im * sn) * pe;
        w_im = (amp_re * sn + amp_im * cs) * pe;
      }
      const double cr = a.coef[j].real();
      const double ci = a.coef[j].imag();
      acc_re += cr * w_re - ci * w_im;
      acc_im += cr * w_im + ci * w_re;
    }
    a.out[k] = {acc_re, acc_im};
  }
}

void phase_sum(const PhaseSumArgs& a) {
  for (std::size_t k = 0; k < a.freq.size(); ++k) {
    const double f = a.freq[k];
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t j = 0; j < a.pos.size(); ++j) {
      const double ph = f * a.pos[j];
      const double cs = std::cos(ph);
      const double sn = std::sin(ph);
      const double cr = a.coef[j].real();
      const double ci = a.coef[j].imag();
      acc_re += cr * cs - ci * sn;
      acc_im += cr * sn + ci * cs;
    }
    a.out[k] = {acc_re, acc_im};
  }
}

}  // namespace scalar
}  // namespace fracspec::simd
