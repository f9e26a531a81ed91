#include "quadclass/kernels/divisor_scan.hpp"

#include <immintrin.h>

namespace quadclass::kernels {

void divisor_scan_avx2(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                       std::vector<std::uint64_t> & out)
{
    if (lo > hi)
        return;

    __m256d const vn = _mm256_set1_pd(static_cast<double>(n));
    __m256d const step = _mm256_set1_pd(8.0);
    __m256d va0 = _mm256_setr_pd(double(lo), double(lo + 1), double(lo + 2), double(lo + 3));
    __m256d va1 = _mm256_add_pd(va0, _mm256_set1_pd(4.0));

    std::uint64_t a = lo;
    // Two independent division chains per iteration to hide vdivpd latency.
    for (; a + 7 <= hi; a += 8) {
        __m256d const q0 = _mm256_floor_pd(_mm256_div_pd(vn, va0));
        __m256d const q1 = _mm256_floor_pd(_mm256_div_pd(vn, va1));
        __m256d const e0 = _mm256_cmp_pd(_mm256_mul_pd(q0, va0), vn, _CMP_EQ_OQ);
        __m256d const e1 = _mm256_cmp_pd(_mm256_mul_pd(q1, va1), vn, _CMP_EQ_OQ);
        unsigned mask = unsigned(_mm256_movemask_pd(e0)) | (unsigned(_mm256_movemask_pd(e1)) << 4);
        while (mask) {
            unsigned const bit = unsigned(__builtin_ctz(mask));
            out.push_back(a + bit);
            mask &= mask - 1;
        }
        va0 = _mm256_add_pd(va0, step);
        va1 = _mm256_add_pd(va1, step);
    }
    for (; a <= hi; ++a) {
        if (n % a == 0)
            out.push_back(a);
    }
}

} // namespace quadclass::kernels
