#include <cstdlib>
#include <string>

#include "fracspec/error.hpp"
#include "fracspec/simd/kernels.hpp"

namespace fracspec::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(FRACSPEC_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("FRACSPEC_KERNEL")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

void packet_correlate(Isa isa, const CorrelateArgs& args) {
  if (args.coef.size() != args.pos.size() || args.out.size() != args.centers.size())
    throw Error(ErrorCode::InvalidArgument, "packet_correlate: size mismatch");
#if defined(FRACSPEC_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2::packet_correlate(args);
#endif
  (void)isa;
  scalar::packet_correlate(args);
}

void phase_sum(Isa isa, const PhaseSumArgs& args) {
  if (args.coef.size() != args.pos.size() || args.out.size() != args.freq.size())
    throw Error(ErrorCode::InvalidArgument, "phase_sum: size mismatch");
#if defined(FRACSPEC_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2::phase_sum(args);
#endif
  (void)isa;
  scalar::phase_sum(args);
}

void packet_correlate(const CorrelateArgs& args) { packet_correlate(active_isa(), args); }
void phase_sum(const PhaseSumArgs& args) { phase_sum(active_isa(), args); }

}  // namespace fracspec::simd
