// AVX2 + FMA variants of the flux kernels. This translation unit is compiled
// with -mavx2 -mfma and must only be entered after a runtime CPU check.

#include <cmath>
#include <cstddef>
#include <immintrin.h>

#include "coaxflux/constants.hpp"
#include "coaxflux/kernels.hpp"

namespace coaxflux::kernels {

namespace {

// exp(x) for x in [-708, 709]: Cody-Waite range reduction x = n ln2 + r,
// degree-13 Taylor kernel on |r| <= ln2/2, 2^n rebuilt through the exponent
// bits. Inputs below -708 flush to 0.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d lo_clamp = _mm256_set1_pd(-708.0);
    const __m256d hi_clamp = _mm256_set1_pd(709.0);

    __m256d xc = _mm256_min_pd(x, hi_clamp);
    xc = _mm256_max_pd(xc, lo_clamp);

    __m256d nf = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(nf, ln2_hi, xc);
    r = _mm256_fnmadd_pd(nf, ln2_lo, r);

    // e^r = 1 + r(1 + r/2 (1 + r/3 (...)))
    __m256d acc = one;
    for (int k = 13; k >= 2; --k) {
        __m256d inv_k = _mm256_set1_pd(1.0 / static_cast<double>(k));
        acc = _mm256_fmadd_pd(_mm256_mul_pd(r, inv_k), acc, one);
    }
    __m256d p = _mm256_fmadd_pd(r, acc, one);

    __m128i n32 = _mm256_cvtpd_epi32(nf);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    __m256i bits =
        _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    __m256d scale = _mm256_castsi256_pd(bits);
    return _mm256_mul_pd(p, scale);
}

// exp with arguments below -708 flushed to exactly 0.
inline __m256d exp_pd_masked(__m256d x) {
    const __m256d underflow = _mm256_set1_pd(-708.0);
    __m256d zero_mask = _mm256_cmp_pd(x, underflow, _CMP_LT_OQ);
    __m256d e = exp_pd(x);
    return _mm256_blendv_pd(e, _mm256_setzero_pd(), zero_mask);
}

// expm1(x) for |x| < 0.5 via the same Taylor kernel with the leading 1
// removed: e^x - 1 = x (1 + x/2 (1 + x/3 (...))).
inline __m256d expm1_small_pd(__m256d x) {
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = one;
    for (int k = 13; k >= 2; --k) {
        __m256d inv_k = _mm256_set1_pd(1.0 / static_cast<double>(k));
        acc = _mm256_fmadd_pd(_mm256_mul_pd(x, inv_k), acc, one);
    }
    return _mm256_mul_pd(x, acc);
}

// n_BE = 1/(e^x - 1) for x > 0: direct expm1 below 0.5, e^-x/(1 - e^-x)
// above (avoids overflow of e^x).
inline __m256d occupation_pd(__m256d x) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);

    __m256d small_mask = _mm256_cmp_pd(x, half, _CMP_LT_OQ);
    __m256d em_small = expm1_small_pd(x);
    __m256d n_small = _mm256_div_pd(one, em_small);

    __m256d t = exp_pd_masked(_mm256_sub_pd(_mm256_setzero_pd(), x));
    __m256d n_big = _mm256_div_pd(t, _mm256_sub_pd(one, t));

    return _mm256_blendv_pd(n_big, n_small, small_mask);
}

void bose_einstein_batch_avx2(const double* f_hz, std::size_t n, double t_k,
                              double* out) {
    const double coef = constants::planck / (constants::boltzmann * t_k);
    const __m256d vcoef = _mm256_set1_pd(coef);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d f = _mm256_loadu_pd(f_hz + i);
        _mm256_storeu_pd(out + i, occupation_pd(_mm256_mul_pd(vcoef, f)));
    }
    for (; i < n; ++i) out[i] = 1.0 / std::expm1(coef * f_hz[i]);
}

void relax_step_batch_avx2(double* n_occ, const double* rate, const double* g0,
                           const double* gh, const double* g1, double h,
                           std::size_t n) {
    const __m256d vh = _mm256_set1_pd(h);
    const __m256d vhalf_h = _mm256_set1_pd(0.5 * h);
    const __m256d vsixth_h = _mm256_set1_pd(h / 6.0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(n_occ + i);
        __m256d r = _mm256_loadu_pd(rate + i);
        __m256d a0 = _mm256_loadu_pd(g0 + i);
        __m256d ah = _mm256_loadu_pd(gh + i);
        __m256d a1 = _mm256_loadu_pd(g1 + i);

        // classical RK4 for dN/dx = r (g - N)
        __m256d k1 = _mm256_mul_pd(r, _mm256_sub_pd(a0, v));
        __m256d t = _mm256_fmadd_pd(vhalf_h, k1, v);
        __m256d k2 = _mm256_mul_pd(r, _mm256_sub_pd(ah, t));
        t = _mm256_fmadd_pd(vhalf_h, k2, v);
        __m256d k3 = _mm256_mul_pd(r, _mm256_sub_pd(ah, t));
        t = _mm256_fmadd_pd(vh, k3, v);
        __m256d k4 = _mm256_mul_pd(r, _mm256_sub_pd(a1, t));
        __m256d sum = _mm256_add_pd(k1, k4);
        sum = _mm256_fmadd_pd(two, _mm256_add_pd(k2, k3), sum);
        __m256d v_rk4 = _mm256_fmadd_pd(vsixth_h, sum, v);

        // exact relaxation toward the linearized g for stiff lanes
        __m256d rh = _mm256_mul_pd(r, vh);
        __m256d em = exp_pd_masked(_mm256_sub_pd(_mm256_setzero_pd(), rh));
        __m256d sor = _mm256_div_pd(_mm256_sub_pd(a1, a0), rh);
        __m256d dev = _mm256_add_pd(_mm256_sub_pd(v, a0), sor);
        __m256d v_exp = _mm256_fmadd_pd(dev, em, _mm256_sub_pd(a1, sor));

        __m256d stiff = _mm256_cmp_pd(rh, one, _CMP_GT_OQ);
        _mm256_storeu_pd(n_occ + i, _mm256_blendv_pd(v_rk4, v_exp, stiff));
    }
    if (i < n)
        scalar_backend().relax_step_batch(n_occ + i, rate + i, g0 + i, gh + i,
                                          g1 + i, h, n - i);
}

void attenuator_jump_batch_avx2(double* n_occ, const double* nbe, double inv_a,
                                std::size_t n) {
    const __m256d va = _mm256_set1_pd(inv_a);
    const __m256d vmix = _mm256_set1_pd(1.0 - inv_a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(n_occ + i);
        __m256d b = _mm256_loadu_pd(nbe + i);
        _mm256_storeu_pd(n_occ + i,
                         _mm256_fmadd_pd(v, va, _mm256_mul_pd(vmix, b)));
    }
    for (; i < n; ++i) n_occ[i] = n_occ[i] * inv_a + (1.0 - inv_a) * nbe[i];
}

double trapezoid_avx2(const double* x, const double* y, std::size_t n) {
    if (n < 2) return 0.0;
    const __m256d half = _mm256_set1_pd(0.5);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 5 <= n; i += 4) {
        __m256d x0 = _mm256_loadu_pd(x + i);
        __m256d x1 = _mm256_loadu_pd(x + i + 1);
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 1);
        __m256d area = _mm256_mul_pd(
            _mm256_mul_pd(half, _mm256_add_pd(y0, y1)), _mm256_sub_pd(x1, x0));
        acc = _mm256_add_pd(acc, area);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i + 1 < n; ++i)
        total += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return total;
}

const Backend avx2_table = {
    "avx2",
    &bose_einstein_batch_avx2,
    &relax_step_batch_avx2,
    &attenuator_jump_batch_avx2,
    &trapezoid_avx2,
};

} // namespace

const Backend* avx2_backend_table() { return &avx2_table; }

} // namespace coaxflux::kernels
