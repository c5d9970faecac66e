// AVX2+FMA lane of the phase-sum kernels.
//
// Per 4-wide block: reduce the turn value u to r = u - round(u) in [-0.5,0.5],
// split into quadrants k = round(4r), evaluate sin/cos of y = 2*pi*(r - k/4)
// on |y| <= pi/4 by odd/even Taylor polynomials (|error| < 5e-17), then swap
// and negate lanes by quadrant. Accumulation is lane-wise Kahan; the four
// lane totals and the scalar tail are combined in a fixed order so results
// are bit-stable for a given input length.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "revlab/kernel/phase_sum.hpp"

namespace revlab::kernel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// sin coefficients for y, y^3, ..., y^17
constexpr double S1 = 1.0;
constexpr double S3 = -1.6666666666666666666e-1;
constexpr double S5 = 8.3333333333333333333e-3;
constexpr double S7 = -1.9841269841269841270e-4;
constexpr double S9 = 2.7557319223985890653e-6;
constexpr double S11 = -2.5052108385441718775e-8;
constexpr double S13 = 1.6059043836821614599e-10;
constexpr double S15 = -7.6471637318198164759e-13;
constexpr double S17 = 2.8114572543455207632e-15;

// cos coefficients for 1, y^2, ..., y^18
constexpr double C0 = 1.0;
constexpr double C2 = -5.0e-1;
constexpr double C4 = 4.1666666666666666667e-2;
constexpr double C6 = -1.3888888888888888889e-3;
constexpr double C8 = 2.4801587301587301587e-5;
constexpr double C10 = -2.7557319223985890653e-7;
constexpr double C12 = 2.0876756987868098979e-9;
constexpr double C14 = -1.1470745597729724714e-11;
constexpr double C16 = 4.7794773323873852974e-14;
constexpr double C18 = -1.5619206968586226462e-16;

struct KahanV {
    __m256d sum;
    __m256d comp;
};

__attribute__((target("avx2,fma"))) inline void kahan_add(KahanV& k, __m256d x) {
    const __m256d y = _mm256_sub_pd(x, k.comp);
    const __m256d t = _mm256_add_pd(k.sum, y);
    k.comp = _mm256_sub_pd(_mm256_sub_pd(t, k.sum), y);
    k.sum = t;
}

// cos(2*pi*u) -> c, -sin(2*pi*u) -> ms (phase factor exp(-2*pi*i*u))
__attribute__((target("avx2,fma"))) inline void sincos_turn(__m256d u, __m256d& c, __m256d& ms) {
    const __m256d r = _mm256_sub_pd(u, _mm256_round_pd(u, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
    const __m256d kq = _mm256_round_pd(_mm256_mul_pd(r, _mm256_set1_pd(4.0)),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d x = _mm256_fnmadd_pd(kq, _mm256_set1_pd(0.25), r);
    const __m256d y = _mm256_mul_pd(x, _mm256_set1_pd(kTwoPi));
    const __m256d y2 = _mm256_mul_pd(y, y);

    __m256d s = _mm256_set1_pd(S17);
    s = _mm256_fmadd_pd(s, y2, _mm256_set1_pd(S15));
    s = _mm256_fmadd_pd(s, y2, _mm256_set1_pd(S13));
    s = _mm256_fmadd_pd(s, y2, _mm256_set1_pd(S11));
    s = _mm256_fmadd_pd(s, y2, _mm256_set1_pd(S9));
    s = _mm256_fmadd_pd(s, y2, _mm256_set1_pd(S7));
    s = _mm256_fmadd_pd(s, y2, _mm256_set1_pd(S5));
    s = _mm256_fmadd_pd(s, y2, _mm256_set1_pd(S3));
    s = _mm256_fmadd_pd(s, y2, _mm256_set1_pd(S1));
    s = _mm256_mul_pd(s, y);  // sin(y)

    __m256d co = _mm256_set1_pd(C18);
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C16));
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C14));
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C12));
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C10));
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C8));
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C6));
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C4));
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C2));
    co = _mm256_fmadd_pd(co, y2, _mm256_set1_pd(C0));  // cos(y)

    // quadrant k mod 4 as a double in {0,1,2,3}
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d kmod = _mm256_sub_pd(
        kq, _mm256_mul_pd(four, _mm256_floor_pd(_mm256_div_pd(kq, four))));
    const __m256d m1 = _mm256_cmp_pd(kmod, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
    const __m256d m2 = _mm256_cmp_pd(kmod, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
    const __m256d m3 = _mm256_cmp_pd(kmod, _mm256_set1_pd(3.0), _CMP_EQ_OQ);

    const __m256d swap = _mm256_or_pd(m1, m3);
    const __m256d signbit = _mm256_set1_pd(-0.0);
    const __m256d neg_cos = _mm256_and_pd(_mm256_or_pd(m1, m2), signbit);
    const __m256d neg_sin = _mm256_and_pd(_mm256_or_pd(m2, m3), signbit);

    // cos(y + k*pi/2), sin(y + k*pi/2)
    const __m256d cq = _mm256_xor_pd(_mm256_blendv_pd(co, s, swap), neg_cos);
    const __m256d sq = _mm256_xor_pd(_mm256_blendv_pd(s, co, swap), neg_sin);

    c = cq;
    ms = _mm256_xor_pd(sq, signbit);
}

// Combine the 4 lane totals and the scalar tail deterministically.
__attribute__((target("avx2,fma"))) PhaseSum finish(const KahanV& re, const KahanV& im,
                                                    const double* w, const double* u,
                                                    std::size_t tail_begin, std::size_t n) {
    alignas(32) double lr[4], li[4];
    _mm256_store_pd(lr, re.sum);
    _mm256_store_pd(li, im.sum);
    double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;
    auto kadd = [](double& sum, double& comp, double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    for (int l = 0; l < 4; ++l) {
        kadd(sr, cr, lr[l]);
        kadd(si, ci, li[l]);
    }
    for (std::size_t j = tail_begin; j < n; ++j) {
        const double r = u[j] - std::nearbyint(u[j]);
        const double ang = kTwoPi * r;
        kadd(sr, cr, w[j] * std::cos(ang));
        kadd(si, ci, w[j] * -std::sin(ang));
    }
    return {sr, si};
}

}  // namespace

__attribute__((target("avx2,fma"))) PhaseSum phase_sum_avx2(const double* w, const double* u,
                                                            std::size_t n) {
    KahanV re{_mm256_setzero_pd(), _mm256_setzero_pd()};
    KahanV im{_mm256_setzero_pd(), _mm256_setzero_pd()};
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d wv = _mm256_loadu_pd(w + j);
        __m256d c, ms;
        sincos_turn(_mm256_loadu_pd(u + j), c, ms);
        kahan_add(re, _mm256_mul_pd(wv, c));
        kahan_add(im, _mm256_mul_pd(wv, ms));
    }
    return finish(re, im, w, u, j, n);
}

__attribute__((target("avx2,fma"))) PhaseSum scaled_phase_sum_avx2(const double* w, const double* v,
                                                                   double t, std::size_t n) {
    KahanV re{_mm256_setzero_pd(), _mm256_setzero_pd()};
    KahanV im{_mm256_setzero_pd(), _mm256_setzero_pd()};
    const __m256d tv = _mm256_set1_pd(t);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d wv = _mm256_loadu_pd(w + j);
        const __m256d u = _mm256_mul_pd(tv, _mm256_loadu_pd(v + j));
        __m256d c, ms;
        sincos_turn(u, c, ms);
        kahan_add(re, _mm256_mul_pd(wv, c));
        kahan_add(im, _mm256_mul_pd(wv, ms));
    }
    // scalar tail with the same u formation
    alignas(32) double lr[4], li[4];
    _mm256_store_pd(lr, re.sum);
    _mm256_store_pd(li, im.sum);
    double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;
    auto kadd = [](double& sum, double& comp, double x) {
        const double y = x - comp;
        const double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
    };
    for (int l = 0; l < 4; ++l) {
        kadd(sr, cr, lr[l]);
        kadd(si, ci, li[l]);
    }
    for (; j < n; ++j) {
        const double uu = t * v[j];
        const double r = uu - std::nearbyint(uu);
        const double ang = kTwoPi * r;
        kadd(sr, cr, w[j] * std::cos(ang));
        kadd(si, ci, w[j] * -std::sin(ang));
    }
    return {sr, si};
}

__attribute__((target("avx2,fma"))) PhaseSum scaled_phase_sum2_avx2(const double* w, const double* v1,
                                                                    const double* v2, double t1,
                                                                    double t2, std::size_t n) {
    KahanV re{_mm256_setzero_pd(), _mm256_setzero_pd()};
    KahanV im{_mm256_setzero_pd(), _mm256_setzero_pd()};
    const __m256d t1v = _mm256_set1_pd(t1);
    const __m256d t2v = _mm256_set1_pd(t2);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d wv = _mm256_loadu_pd(w + j);
        // mul + add, not fma: u must round exactly like the scalar reference
        const __m256d u = _mm256_add_pd(_mm256_mul_pd(t1v, _mm256_loadu_pd(v1 + j)),
                                        _mm256_mul_pd(t2v, _mm256_loadu_pd(v2 + j)));
        __m256d c, ms;
        sincos_turn(u, c, ms);
        kahan_add(re, _mm256_mul_pd(wv, c));
        kahan_add(im, _mm256_mul_pd(wv, ms));
    }
    alignas(32) double lr[4], li[4];
    _mm256_store_pd(lr, re.sum);
    _mm256_store_pd(li, im.sum);
    double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;
    auto kadd = [](double& sum, double& comp, double x) {
        const double y = x - comp;
        const double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
    };
    for (int l = 0; l < 4; ++l) {
        kadd(sr, cr, lr[l]);
        kadd(si, ci, li[l]);
    }
    for (; j < n; ++j) {
        const double uu = t1 * v1[j] + t2 * v2[j];
        const double r = uu - std::nearbyint(uu);
        const double ang = kTwoPi * r;
        kadd(sr, cr, w[j] * std::cos(ang));
        kadd(si, ci, w[j] * -std::sin(ang));
    }
    return {sr, si};
}

}  // namespace revlab::kernel

#endif  // x86_64
