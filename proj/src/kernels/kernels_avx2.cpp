#include "qcorr/kernels.hpp"

namespace qcorr::kernels::detail {
const Funcs* avx2_impl();
}

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cstddef>

namespace qcorr::kernels {
namespace {

// log2 for positive normal lanes. Exponent is extracted via the 2^52 bias
// trick; the mantissa is folded into [1/sqrt2, sqrt2) and expanded as
// 2*atanh(t)/ln2 with t = (m-1)/(m+1), |t| <= 3 - 2*sqrt2. Eleven odd terms
// keep the truncation error near 1e-19; lanes holding exactly 1.0 return 0.
inline __m256d mm_log2(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i expi = _mm256_srli_epi64(bits, 52);
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52
    const __m256d expd = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(expi, magic)),
                                       _mm256_set1_pd(4503599627370496.0 + 1023.0));
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                        _mm256_set1_epi64x(0x3FF0000000000000LL)));
    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GE_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    const __m256d e = _mm256_add_pd(expd, _mm256_and_pd(big, _mm256_set1_pd(1.0)));
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d t2 = _mm256_mul_pd(t, t);
    const double L = 2.8853900817779268;  // 2/ln2
    __m256d p = _mm256_set1_pd(L / 21.0);
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 19.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 17.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 15.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 13.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 11.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 9.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 7.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 5.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L / 3.0));
    p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(L));
    return _mm256_fmadd_pd(t, p, e);
}

// x*log2(x) with the same tiny-input floor as the scalar path: lanes with
// x <= 1e-300 are sent through log2(1) so the product is exactly 0.
inline __m256d mm_xlog2x(__m256d x) {
    const __m256d tiny = _mm256_cmp_pd(x, _mm256_set1_pd(1e-300), _CMP_LE_OQ);
    const __m256d safe = _mm256_blendv_pd(x, _mm256_set1_pd(1.0), tiny);
    return _mm256_mul_pd(x, mm_log2(safe));
}

double payoff_sum_avx2(const double* x, const double* y, const double* z,
                       const double* w, std::size_t n, const double* e) {
    const __m256d e00 = _mm256_set1_pd(e[0]), e01 = _mm256_set1_pd(e[1]),
                  e02 = _mm256_set1_pd(e[2]), e10 = _mm256_set1_pd(e[3]),
                  e11 = _mm256_set1_pd(e[4]), e12 = _mm256_set1_pd(e[5]),
                  e20 = _mm256_set1_pd(e[6]), e21 = _mm256_set1_pd(e[7]),
                  e22 = _mm256_set1_pd(e[8]);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d sx = _mm256_loadu_pd(x + i);
        const __m256d sy = _mm256_loadu_pd(y + i);
        const __m256d sz = _mm256_loadu_pd(z + i);
        const __m256d v0 = _mm256_fmadd_pd(e02, sz, _mm256_fmadd_pd(e01, sy, _mm256_mul_pd(e00, sx)));
        const __m256d v1 = _mm256_fmadd_pd(e12, sz, _mm256_fmadd_pd(e11, sy, _mm256_mul_pd(e10, sx)));
        const __m256d v2 = _mm256_fmadd_pd(e22, sz, _mm256_fmadd_pd(e21, sy, _mm256_mul_pd(e20, sx)));
        const __m256d r2 = _mm256_fmadd_pd(v2, v2, _mm256_fmadd_pd(v1, v1, _mm256_mul_pd(v0, v0)));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), r2, acc);
    }
    double lane[4];
    _mm256_storeu_pd(lane, acc);
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) {
        const double v0 = e[0] * x[i] + e[1] * y[i] + e[2] * z[i];
        const double v1 = e[3] * x[i] + e[4] * y[i] + e[5] * z[i];
        const double v2 = e[6] * x[i] + e[7] * y[i] + e[8] * z[i];
        total += w[i] * (v0 * v0 + v1 * v1 + v2 * v2);
    }
    return total;
}

void entropy_scan_avx2(const double* x, const double* y, const double* z,
                       std::size_t n, const double* a, const double* b,
                       const double* e, double* out) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d pfloor = _mm256_set1_pd(1e-12);
    const __m256d a0 = _mm256_set1_pd(a[0]), a1 = _mm256_set1_pd(a[1]), a2 = _mm256_set1_pd(a[2]);
    const __m256d b0 = _mm256_set1_pd(b[0]), b1 = _mm256_set1_pd(b[1]), b2 = _mm256_set1_pd(b[2]);
    const __m256d e00 = _mm256_set1_pd(e[0]), e01 = _mm256_set1_pd(e[1]),
                  e02 = _mm256_set1_pd(e[2]), e10 = _mm256_set1_pd(e[3]),
                  e11 = _mm256_set1_pd(e[4]), e12 = _mm256_set1_pd(e[5]),
                  e20 = _mm256_set1_pd(e[6]), e21 = _mm256_set1_pd(e[7]),
                  e22 = _mm256_set1_pd(e[8]);

    // p * S for one outcome branch from (p, |w|); pfloor lanes contribute 0.
    const auto branch = [&](__m256d p, __m256d wn) {
        const __m256d live = _mm256_cmp_pd(p, pfloor, _CMP_GT_OQ);
        __m256d m = _mm256_div_pd(wn, _mm256_mul_pd(_mm256_set1_pd(2.0), p));
        m = _mm256_min_pd(m, one);  // also squashes Inf/NaN lanes from p ~ 0
        const __m256d xp = _mm256_mul_pd(half, _mm256_add_pd(one, m));
        const __m256d xm = _mm256_mul_pd(half, _mm256_sub_pd(one, m));
        const __m256d s = _mm256_sub_pd(_mm256_setzero_pd(),
                                        _mm256_add_pd(mm_xlog2x(xp), mm_xlog2x(xm)));
        return _mm256_and_pd(live, _mm256_mul_pd(p, s));
    };

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d nx = _mm256_loadu_pd(x + i);
        const __m256d ny = _mm256_loadu_pd(y + i);
        const __m256d nz = _mm256_loadu_pd(z + i);
        const __m256d q = _mm256_fmadd_pd(a2, nz, _mm256_fmadd_pd(a1, ny, _mm256_mul_pd(a0, nx)));
        // (E^T n)_j: columns of row-major e.
        const __m256d t0 = _mm256_fmadd_pd(e20, nz, _mm256_fmadd_pd(e10, ny, _mm256_mul_pd(e00, nx)));
        const __m256d t1 = _mm256_fmadd_pd(e21, nz, _mm256_fmadd_pd(e11, ny, _mm256_mul_pd(e01, nx)));
        const __m256d t2 = _mm256_fmadd_pd(e22, nz, _mm256_fmadd_pd(e12, ny, _mm256_mul_pd(e02, nx)));
        const __m256d wp0 = _mm256_add_pd(b0, t0), wp1 = _mm256_add_pd(b1, t1),
                      wp2 = _mm256_add_pd(b2, t2);
        const __m256d wm0 = _mm256_sub_pd(b0, t0), wm1 = _mm256_sub_pd(b1, t1),
                      wm2 = _mm256_sub_pd(b2, t2);
        const __m256d wp = _mm256_sqrt_pd(
            _mm256_fmadd_pd(wp2, wp2, _mm256_fmadd_pd(wp1, wp1, _mm256_mul_pd(wp0, wp0))));
        const __m256d wm = _mm256_sqrt_pd(
            _mm256_fmadd_pd(wm2, wm2, _mm256_fmadd_pd(wm1, wm1, _mm256_mul_pd(wm0, wm0))));
        const __m256d pp = _mm256_mul_pd(half, _mm256_add_pd(one, q));
        const __m256d pm = _mm256_mul_pd(half, _mm256_sub_pd(one, q));
        _mm256_storeu_pd(out + i, _mm256_add_pd(branch(pp, wp), branch(pm, wm)));
    }
    if (i < n) scalar().conditional_entropy_scan(x + i, y + i, z + i, n - i, a, b, e, out + i);
}

// Low 64 bits of a*b from 32x32->64 partial products.
inline __m256i mm_mul64(__m256i a, __m256i b) {
    const __m256i bswap = _mm256_shuffle_epi32(b, 0xB1);
    const __m256i cross = _mm256_mullo_epi32(a, bswap);
    const __m256i crosssum = _mm256_hadd_epi32(cross, _mm256_setzero_si256());
    const __m256i crosshi = _mm256_shuffle_epi32(crosssum, 0x73);
    const __m256i lolo = _mm256_mul_epu32(a, b);
    return _mm256_add_epi64(lolo, crosshi);
}

inline __m256i mm_xorshr(__m256i v, int k) {
    return _mm256_xor_si256(v, _mm256_srli_epi64(v, k));
}

std::uint64_t count_below_avx2(std::uint64_t seed, std::uint64_t counter0,
                               std::uint64_t n, std::uint64_t threshold) {
    const __m256i gold = _mm256_set1_epi64x(static_cast<long long>(0x9E3779B97F4A7C15ULL));
    const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(0xBF58476D1CE4E5B9ULL));
    const __m256i m2 = _mm256_set1_epi64x(static_cast<long long>(0x94D049BB133111EBULL));
    const __m256i seedv = _mm256_set1_epi64x(static_cast<long long>(seed));
    const __m256i thr = _mm256_set1_epi64x(static_cast<long long>(threshold));
    const __m256i laneoff = _mm256_set_epi64x(3, 2, 1, 0);
    __m256i hits = _mm256_setzero_si256();
    std::uint64_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i ctr = _mm256_add_epi64(
            _mm256_set1_epi64x(static_cast<long long>(counter0 + i + 1)), laneoff);
        __m256i zv = _mm256_add_epi64(seedv, mm_mul64(ctr, gold));
        zv = mm_mul64(mm_xorshr(zv, 30), m1);
        zv = mm_mul64(mm_xorshr(zv, 27), m2);
        zv = mm_xorshr(zv, 31);
        const __m256i u = _mm256_srli_epi64(zv, 11);
        // u, threshold < 2^53 so the signed 64-bit compare is order-correct.
        hits = _mm256_sub_epi64(hits, _mm256_cmpgt_epi64(thr, u));
    }
    alignas(32) std::uint64_t lane[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), hits);
    std::uint64_t total = lane[0] + lane[1] + lane[2] + lane[3];
    for (; i < n; ++i) {
        const std::uint64_t u = splitmix(seed, counter0 + i) >> 11;
        total += u < threshold ? 1u : 0u;
    }
    return total;
}

}  // namespace

const Funcs* detail::avx2_impl() {
    static const Funcs f{payoff_sum_avx2, entropy_scan_avx2, count_below_avx2};
    return &f;
}

}  // namespace qcorr::kernels

#else

namespace qcorr::kernels {
const Funcs* detail::avx2_impl() { return nullptr; }
}  // namespace qcorr::kernels

#endif
