// Compiled with -mavx2 only; callers reach it through the dispatch table
// after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "otcnet/kernels/sweep.hpp"

namespace otcnet::kernels {

namespace {

inline __m256d gather4(const double* base, const std::uint32_t* idx) {
    const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
    return _mm256_i32gather_pd(base, vi, 8);
}

void edge_prices_avx2(const double* pi, const std::uint32_t* seller, const std::uint32_t* buyer, const double* v,
                      double* p, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t e = 0;
    for (; e + 4 <= n; e += 4) {
        const __m256d w = _mm256_loadu_pd(pi + e);
        const __m256d vs = gather4(v, seller + e);
        const __m256d vb = gather4(v, buyer + e);
        const __m256d lhs = _mm256_mul_pd(w, vs);
        const __m256d rhs = _mm256_mul_pd(_mm256_sub_pd(one, w), vb);
        _mm256_storeu_pd(p + e, _mm256_add_pd(lhs, rhs));
    }
    for (; e < n; ++e) {
        const double w = pi[e];
        p[e] = w * v[seller[e]] + (1.0 - w) * v[buyer[e]];
    }
}

void value_update_avx2(const double* c, const double* u, const double* best, double* v_out, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d b = _mm256_loadu_pd(best + i);
        const __m256d uu = _mm256_loadu_pd(u + i);
        // max_pd(b, uu) returns uu unless b > uu, matching the scalar select.
        const __m256d m = _mm256_max_pd(b, uu);
        const __m256d neg_c = _mm256_xor_pd(_mm256_loadu_pd(c + i), sign);
        _mm256_storeu_pd(v_out + i, _mm256_add_pd(neg_c, m));
    }
    for (; i < n; ++i) {
        const double m = best[i] > u[i] ? best[i] : u[i];
        v_out[i] = -c[i] + m;
    }
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_max_pd(acc, _mm256_and_pd(d, abs_mask));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = 0.0;
    for (double x : lanes)
        if (x > m) m = x;
    for (; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

void edge_pi_adjoint_avx2(const std::uint32_t* seller, const std::uint32_t* buyer, const double* v,
                          const double* g_p, double* g_pi, std::size_t n) {
    std::size_t e = 0;
    for (; e + 4 <= n; e += 4) {
        const __m256d diff = _mm256_sub_pd(gather4(v, seller + e), gather4(v, buyer + e));
        const __m256d acc = _mm256_add_pd(_mm256_loadu_pd(g_pi + e), _mm256_mul_pd(diff, _mm256_loadu_pd(g_p + e)));
        _mm256_storeu_pd(g_pi + e, acc);
    }
    for (; e < n; ++e) g_pi[e] += (v[seller[e]] - v[buyer[e]]) * g_p[e];
}

}  // namespace

const SweepKernels& avx2_kernel_table() {
    static const SweepKernels k{Isa::Avx2, edge_prices_avx2, value_update_avx2, max_abs_diff_avx2,
                                edge_pi_adjoint_avx2};
    return k;
}

}  // namespace otcnet::kernels
