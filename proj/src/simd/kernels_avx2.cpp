// Compiled with -mavx2 -mfma. Four output cells per __m256d; each lane
// accumulates in the same input order as the scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "fracspec/simd/kernels.hpp"

namespace fracspec::simd::avx2 {

namespace {

// Cephes-style exp. Arguments below -708 flush to 0.
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125E-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212E-6);
  const __m256d lo = _mm256_set1_pd(-708.0);
  const __m256d hi = _mm256_set1_pd(709.0);

  const __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, c1, x);
  r = _mm256_fnmadd_pd(n, c2, r);
  const __m256d rr = _mm256_mul_pd(r, r);

  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);

  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000009E0));

  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

  // scale by 2^n through the exponent field
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_slli_epi64(_mm256_cvtepi32_epi64(n32), 52);
  e = _mm256_castsi256_pd(_mm256_add_epi64(_mm256_castpd_si256(e), n64));
  return _mm256_andnot_pd(under, e);
}

// Cephes sin/cos with three-part pi/4 reduction.
inline void sincos_pd(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d sign_x = _mm256_and_pd(x, sign_bit);
  const __m256d ax = _mm256_andnot_pd(sign_bit, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(1.27323954473516268615)));
  // make the octant even
  const __m256d half_y = _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.5)));
  const __m256d odd = _mm256_sub_pd(y, _mm256_add_pd(half_y, half_y));
  y = _mm256_add_pd(y, odd);
  const __m256d oct = _mm256_sub_pd(y, _mm256_mul_pd(_mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.125))),
                                                     _mm256_set1_pd(8.0)));

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(7.85398125648498535156E-1), ax);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(3.77489470793079817668E-8), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(2.69515142907905952645E-15), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  __m256d ps = _mm256_set1_pd(1.58962301576546568060E-10);
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-2.50507477628578072866E-8));
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(2.75573136213857245213E-6));
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-1.98412698295895385996E-4));
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(8.33333333332211858878E-3));
  ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-1.66666666666666307295E-1));
  ps = _mm256_fmadd_pd(_mm256_mul_pd(ps, zz), z, z);

  __m256d pc = _mm256_set1_pd(-1.13585365213876817300E-11);
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(2.08757008419747316778E-9));
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(-2.75573141792967388112E-7));
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(2.48015872888517045348E-5));
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(-1.38888888888730564116E-3));
  pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(4.16666666666665929218E-2));
  pc = _mm256_fmadd_pd(_mm256_mul_pd(pc, zz), zz, _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d six = _mm256_set1_pd(6.0);
  const __m256d is2 = _mm256_cmp_pd(oct, two, _CMP_EQ_OQ);
  const __m256d is4 = _mm256_cmp_pd(oct, four, _CMP_EQ_OQ);
  const __m256d is6 = _mm256_cmp_pd(oct, six, _CMP_EQ_OQ);
  const __m256d swap = _mm256_or_pd(is2, is6);
  const __m256d neg_s = _mm256_and_pd(_mm256_or_pd(is4, is6), sign_bit);
  const __m256d neg_c = _mm256_and_pd(_mm256_or_pd(is2, is4), sign_bit);

  __m256d s = _mm256_blendv_pd(ps, pc, swap);
  __m256d c = _mm256_blendv_pd(pc, ps, swap);
  s = _mm256_xor_pd(_mm256_xor_pd(s, neg_s), sign_x);
  c = _mm256_xor_pd(c, neg_c);
  s_out = s;
  c_out = c;
}

inline __m256d horner_pd(std::span<const double> poly, __m256d t) {
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = poly.size(); i-- > 0;) acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(poly[i]));
  return acc;
}

inline __m256d load_partial(const double* p, std::size_t n, double fill) {
  alignas(32) double buf[4] = {fill, fill, fill, fill};
  for (std::size_t i = 0; i < n; ++i) buf[i] = p[i];
  return _mm256_load_pd(buf);
}

inline void store_cplx(std::span<cplx> out, std::size_t k0, std::size_t n, __m256d re, __m256d im) {
  alignas(32) double r[4];
  alignas(32) double i[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(i, im);
  for (std::size_t l = 0; l < n; ++l) out[k0 + l] = {r[l], i[l]};
}

}  // namespace

void exp_batch(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); i += 4) {
    const std::size_t n = std::min<std::size_t>(4, x.size() - i);
    alignas(32) double buf[4];
    _mm256_store_pd(buf, exp_pd(load_partial(x.data() + i, n, 0.0)));
    std::copy_n(buf, n, out.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

void sincos_batch(std::span<const double> x, std::span<double> s, std::span<double> c) {
  for (std::size_t i = 0; i < x.size(); i += 4) {
    const std::size_t n = std::min<std::size_t>(4, x.size() - i);
    __m256d vs, vc;
    sincos_pd(load_partial(x.data() + i, n, 0.0), vs, vc);
    alignas(32) double bs[4];
    alignas(32) double bc[4];
    _mm256_store_pd(bs, vs);
    _mm256_store_pd(bc, vc);
    std::copy_n(bs, n, s.begin() + static_cast<std::ptrdiff_t>(i));
    std::copy_n(bc, n, c.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

void packet_correlate(const CorrelateArgs& a) {
  const auto& g = a.packet;
  const double radius = a.cutoff / std::abs(g.lambda * a.scale);
  const __m256d amp_re = _mm256_set1_pd(g.amp.real());
  const __m256d amp_im = _mm256_set1_pd(g.amp.imag());
  const __m256d scale = _mm256_set1_pd(a.scale);
  const __m256d lambda = _mm256_set1_pd(g.lambda);
  const __m256d mod = _mm256_set1_pd(g.mod);
  const __m256d cutoff = _mm256_set1_pd(a.cutoff);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d neg_half = _mm256_set1_pd(-0.5);
  const bool modulated = g.mod != 0.0;
  const std::size_t K = a.centers.size();

  for (std::size_t k0 = 0; k0 < K; k0 += 4) {
    const std::size_t n = std::min<std::size_t>(4, K - k0);
    const auto block = a.centers.subspan(k0, n);
    const auto [lo_it, hi_it] = std::minmax_element(block.begin(), block.end());
    const auto [j0, j1] = index_range(a.pos, *lo_it - radius, *hi_it + radius);
    // padded lanes sit far away so every term is masked out
    const __m256d c = load_partial(block.data(), n, HUGE_VAL);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t j = j0; j < j1; ++j) {
      const __m256d y = _mm256_mul_pd(scale, _mm256_sub_pd(_mm256_set1_pd(a.pos[j]), c));
      const __m256d t = _mm256_mul_pd(lambda, y);
      const __m256d keep = _mm256_cmp_pd(_mm256_and_pd(t, abs_mask), cutoff, _CMP_LE_OQ);
      if (_mm256_movemask_pd(keep) == 0) continue;
      const __m256d ts = _mm256_and_pd(t, keep);  // masked lanes evaluate at t = 0
      __m256d pe = _mm256_mul_pd(horner_pd(g.poly, ts), exp_pd(_mm256_mul_pd(neg_half, _mm256_mul_pd(ts, ts))));
      pe = _mm256_and_pd(pe, keep);
      __m256d w_re, w_im;
      if (modulated) {
        __m256d sn, cs;
        sincos_pd(_mm256_and_pd(_mm256_mul_pd(mod, y), keep), sn, cs);
        w_re = _mm256_mul_pd(_mm256_fmsub_pd(amp_re, cs, _mm256_mul_pd(amp_im, sn)), pe);
        w_im = _mm256_mul_pd(_mm256_fmadd_pd(amp_re, sn, _mm256_mul_pd(amp_im, cs)), pe);
      } else {
        w_re = _mm256_mul_pd(amp_re, pe);
        w_im = _mm256_mul_pd(amp_im, pe);
      }
      const __m256d cr = _mm256_set1_pd(a.coef[j].real());
      const __m256d ci = _mm256_set1_pd(a.coef[j].imag());
      acc_re = _mm256_add_pd(acc_re, _mm256_fmsub_pd(cr, w_re, _mm256_mul_pd(ci, w_im)));
      acc_im = _mm256_add_pd(acc_im, _mm256_fmadd_pd(cr, w_im, _mm256_mul_pd(ci, w_re)));
    }
    store_cplx(a.out, k0, n, acc_re, acc_im);
  }
}

void phase_sum(const PhaseSumArgs& a) {
  const std::size_t K = a.freq.size();
  for (std::size_t k0 = 0; k0 < K; k0 += 4) {
    const std::size_t n = std::min<std::size_t>(4, K - k0);
    const __m256d f = load_partial(a.freq.data() + k0, n, 0.0);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t j = 0; j < a.pos.size(); ++j) {
      __m256d sn, cs;
      sincos_pd(_mm256_mul_pd(f, _mm256_set1_pd(a.pos[j])), sn, cs);
      const __m256d cr = _mm256_set1_pd(a.coef[j].real());
      const __m256d ci = _mm256_set1_pd(a.coef[j].imag());
      acc_re = _mm256_add_pd(acc_re, _mm256_fmsub_pd(cr, cs, _mm256_mul_pd(ci, sn)));
      acc_im = _mm256_add_pd(acc_im, _mm256_fmadd_pd(cr, sn, _mm256_mul_pd(ci, cs)));
    }
    store_cplx(a.out, k0, n, acc_re, acc_im);
  }
}

}  // namespace fracspec::simd::avx2
