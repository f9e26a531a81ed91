#include "quadclass/kernels/divisor_scan.hpp"

#include <arm_neon.h>

namespace quadclass::kernels {

void divisor_scan_neon(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                       std::vector<std::uint64_t> & out)
{
    if (lo > hi)
        return;

    float64x2_t const vn = vdupq_n_f64(static_cast<double>(n));
    float64x2_t const step = vdupq_n_f64(4.0);
    double const init0[2] = {double(lo), double(lo + 1)};
    float64x2_t va0 = vld1q_f64(init0);
    float64x2_t va1 = vaddq_f64(va0, vdupq_n_f64(2.0));

    std::uint64_t a = lo;
    for (; a + 3 <= hi; a += 4) {
        float64x2_t const q0 = vrndmq_f64(vdivq_f64(vn, va0));
        float64x2_t const q1 = vrndmq_f64(vdivq_f64(vn, va1));
        uint64x2_t const e0 = vceqq_f64(vmulq_f64(q0, va0), vn);
        uint64x2_t const e1 = vceqq_f64(vmulq_f64(q1, va1), vn);
        if (vgetq_lane_u64(e0, 0))
            out.push_back(a);
        if (vgetq_lane_u64(e0, 1))
            out.push_back(a + 1);
        if (vgetq_lane_u64(e1, 0))
            out.push_back(a + 2);
        if (vgetq_lane_u64(e1, 1))
            out.push_back(a + 3);
        va0 = vaddq_f64(va0, step);
        va1 = vaddq_f64(va1, step);
    }
    for (; a <= hi; ++a) {
        if (n % a == 0)
            out.push_back(a);
    }
}

} // namespace quadclass::kernels
