#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

#include "int_util.hpp"
#include "quadclass/kernels/divisor_scan.hpp"
#include "quadclass/quadform.hpp"

namespace quadclass {

namespace {

/*
 * Reduced forms with middle coefficient +-b: every divisor a of
 * M = (b^2 + |D|) / 4 with max(b, 1) <= a <= sqrt(M) gives (a, b, M / a).
 * The mirror (a, -b, c) is reduced unless b = 0, b = a or a = c.
 */
void forms_for_b(std::uint64_t absD, std::uint64_t b, kernels::DivisorScanFn scan,
                 std::vector<std::uint64_t> & divisors, std::vector<QuadForm> & out)
{
    std::uint64_t const M = (b * b + absD) / 4;
    std::uint64_t const lo = std::max<std::uint64_t>(b, 1);
    std::uint64_t const hi = detail::isqrt_u64(M);
    if (lo > hi)
        return;

    divisors.clear();
    if (M + hi <= kernels::divisor_scan_max_n)
        scan(M, lo, hi, divisors);
    else
        kernels::divisor_scan_scalar(M, lo, hi, divisors);

    for (std::uint64_t const a : divisors) {
        std::uint64_t const c = M / a;
        if (std::gcd(std::gcd(a, b), c) != 1)
            continue;
        auto const sa = std::int64_t(a), sb = std::int64_t(b), sc = std::int64_t(c);
        out.push_back(QuadForm{sa, sb, sc});
        if (b > 0 && b < a && a < c)
            out.push_back(QuadForm{sa, -sb, sc});
    }
}

} // namespace

ClassGroup enumerate_reduced(std::int64_t D, EnumerationOptions const & options)
{
    require_discriminant(D);
    if (-D > options.disc_cap)
        throw ResourceError("|D| = " + std::to_string(-D) + " exceeds the discriminant cap " +
                            std::to_string(options.disc_cap) + " (QUADCLASS_DISC_CAP)");

    std::uint64_t const absD = std::uint64_t(-D);
    std::uint64_t const b0 = absD % 2;
    std::uint64_t const bmax = detail::isqrt_u64(absD / 3);
    // SIMD kernels need n + hi <= 2^53; M = (b^2 + |D|)/4 stays below |D| here.
    kernels::DivisorScanFn const scan = kernels::divisor_scan_for(
        absD < (std::uint64_t(1) << 51) ? kernels::active_isa() : kernels::Isa::scalar);

    std::uint64_t const nb = bmax >= b0 ? (bmax - b0) / 2 + 1 : 0;
    unsigned const workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(options.workers, 1, std::max<std::uint64_t>(nb / 64, 1)));

    std::vector<std::vector<QuadForm>> parts(workers);
    auto run = [&](unsigned w) {
        std::vector<std::uint64_t> divisors;
        // Interleaved b so that the expensive small-b rows are spread out.
        for (std::uint64_t i = w; i < nb; i += workers)
            forms_for_b(absD, b0 + 2 * i, scan, divisors, parts[w]);
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
    }

    ClassGroup group{D, {}};
    for (auto & part : parts)
        group.reduced_forms.insert(group.reduced_forms.end(), part.begin(), part.end());
    std::sort(group.reduced_forms.begin(), group.reduced_forms.end());
    return group;
}

} // namespace quadclass
