// Compiled with -mavx2 -mfma; only entered after a runtime CPU check.
#include "mixent/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace mixent::kernels::detail {
namespace {

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

// Cephes-style exp: x = n ln2 + r, |r| <= ln2/2, rational approximation on r.
// Inputs below the normal range flush to 0 (including -inf); inputs above
// overflow to +inf.
inline __m256d exp4(__m256d x)
{
    const __m256d hi = _mm256_set1_pd(709.782712893384);
    const __m256d lo = _mm256_set1_pd(-708.3964185322641);
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000009e0);

    const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    const __m256d overflow = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
    x = _mm256_max_pd(_mm256_min_pd(x, hi), lo);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, c1, x);
    r = _mm256_fnmadd_pd(n, c2, r);

    const __m256d rr = _mm256_mul_pd(r, r);
    __m256d p = _mm256_fmadd_pd(p0, rr, p1);
    p = _mm256_fmadd_pd(p, rr, p2);
    p = _mm256_mul_pd(p, r);
    __m256d q = _mm256_fmadd_pd(q0, rr, q1);
    q = _mm256_fmadd_pd(q, rr, q2);
    q = _mm256_fmadd_pd(q, rr, q3);
    __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

    // 2^n through the exponent field; n in [-1022, 1024) after clamping.
    __m128i n32 = _mm256_cvtpd_epi32(n);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    // Split the scale so n = 1024 (x close to hi) stays representable.
    __m256i half = _mm256_srai_epi32(n64, 1);
    __m256i rest = _mm256_sub_epi64(n64, half);
    const __m256i bias = _mm256_set1_epi64x(1023);
    __m256d s1 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(half, bias), 52));
    __m256d s2 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(rest, bias), 52));
    e = _mm256_mul_pd(_mm256_mul_pd(e, s1), s2);

    e = _mm256_blendv_pd(e, _mm256_setzero_pd(), underflow);
    e = _mm256_blendv_pd(e, _mm256_set1_pd(std::numeric_limits<double>::infinity()), overflow);
    return e;
}

inline double exp1(double x)
{
    alignas(32) double buf[4] = {x, 0.0, 0.0, 0.0};
    _mm256_store_pd(buf, exp4(_mm256_load_pd(buf)));
    return buf[0];
}

} // namespace

double dot_avx2(const double* a, const double* b, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
    }
    for (; k + 4 <= n; k += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k)
        acc += a[k] * b[k];
    return acc;
}

double max_avx2(const double* x, std::size_t n)
{
    double m = -std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    if (n >= 4) {
        __m256d vm = _mm256_loadu_pd(x);
        for (k = 4; k + 4 <= n; k += 4)
            vm = _mm256_max_pd(vm, _mm256_loadu_pd(x + k));
        m = hmax(vm);
    }
    for (; k < n; ++k)
        if (x[k] > m)
            m = x[k];
    return m;
}

double sum_exp_shifted_avx2(const double* x, std::size_t n, double shift)
{
    const __m256d vs = _mm256_set1_pd(shift);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        acc = _mm256_add_pd(acc, exp4(_mm256_sub_pd(_mm256_loadu_pd(x + k), vs)));
    double total = hsum(acc);
    for (; k < n; ++k)
        total += exp1(x[k] - shift);
    return total;
}

void exp_inplace_avx2(double* x, std::size_t n)
{
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        _mm256_storeu_pd(x + k, exp4(_mm256_loadu_pd(x + k)));
    for (; k < n; ++k)
        x[k] = exp1(x[k]);
}

} // namespace mixent::kernels::detail
