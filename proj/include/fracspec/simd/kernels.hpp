#pragma once

// Inner loops shared by every transform. Each output cell is accumulated
// left to right over the input index, in both the scalar reference and the
// vector variants; vector variants process four output cells per lane group.

#include <complex>
#include <span>
#include <string_view>

namespace fracspec::simd {

using cplx = std::complex<double>;

/// g(y) = amp * P(lambda*y) * exp(-(lambda*y)^2 / 2) * exp(i*mod*y),
/// P given by ascending coefficients.
struct PacketView {
  cplx amp{1.0, 0.0};
  std::span<const double> poly;
  double lambda = 1.0;
  double mod = 0.0;
};

/// out[k] = sum_j coef[j] * g(scale * (pos[j] - centers[k])), restricted to
/// terms with |lambda * scale * (pos[j] - centers[k])| <= cutoff.
/// `pos` must be ascending.
struct CorrelateArgs {
  PacketView packet;
  double scale = 1.0;
  double cutoff = 12.0;
  std::span<const cplx> coef;
  std::span<const double> pos;
  std::span<const double> centers;
  std::span<cplx> out;
};

/// out[k] = sum_j coef[j] * exp(i * freq[k] * pos[j]).
struct PhaseSumArgs {
  std::span<const cplx> coef;
  std::span<const double> pos;
  std::span<const double> freq;
  std::span<cplx> out;
};

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

/// Selected once per process: FRACSPEC_KERNEL=scalar|avx2 overrides CPU detection.
Isa active_isa() noexcept;

void packet_correlate(const CorrelateArgs& args);
void phase_sum(const PhaseSumArgs& args);

void packet_correlate(Isa isa, const CorrelateArgs& args);
void phase_sum(Isa isa, const PhaseSumArgs& args);

namespace scalar {
void packet_correlate(const CorrelateArgs& args);
void phase_sum(const PhaseSumArgs& args);
}  // namespace scalar

#if defined(FRACSPEC_HAVE_AVX2)
namespace avx2 {
void packet_correlate(const CorrelateArgs& args);
void phase_sum(const PhaseSumArgs& args);
// Elementwise helpers, exposed for accuracy tests. n need not be a multiple of 4.
void exp_batch(std::span<const double> x, std::span<double> out);
void sincos_batch(std::span<const double> x, std::span<double> s, std::span<double> c);
}  // namespace avx2
#endif

/// Index range [first, last) of ascending `pos` inside [lo, hi].
std::pair<std::size_t, std::size_t> index_range(std::span<const double> pos, double lo, double hi) noexcept;

}  // namespace fracspec::simd
