#pragma once

// Divisor scan: the inner loop of reduced-form enumeration.
//
// For every a in [lo, hi] with n % a == 0, append a to out (ascending).
// Preconditions: 1 <= lo, n + hi <= 2^53.
//
// The scalar kernel is the reference. SIMD variants do the test with exact
// double-precision division: for n < 2^53 the quotient n / a is exact when a
// divides n, and floor(n / a) * a != n otherwise.

#include <cstdint>
#include <string_view>
#include <vector>

namespace quadclass::kernels {

inline constexpr std::uint64_t divisor_scan_max_n = std::uint64_t(1) << 53;

using DivisorScanFn = void (*)(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                               std::vector<std::uint64_t> & out);

void divisor_scan_scalar(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                         std::vector<std::uint64_t> & out);

#if defined(QUADCLASS_BUILD_AVX2)
void divisor_scan_avx2(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                       std::vector<std::uint64_t> & out);
#endif

#if defined(QUADCLASS_BUILD_NEON)
void divisor_scan_neon(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                       std::vector<std::uint64_t> & out);
#endif

enum class Isa
{
    scalar,
    avx2,
    neon,
};

std::string_view isa_name(Isa isa);
Isa parse_isa(std::string_view name); // throws std::invalid_argument

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);
std::vector<Isa> available_isas();

/// Best available ISA, unless QUADCLASS_KERNEL names another one.
Isa detect_isa();

/// Kernel currently used by enumerate_reduced. Thread-safe.
Isa active_isa();
void set_active_isa(Isa isa); // throws std::invalid_argument if unavailable

DivisorScanFn divisor_scan_for(Isa isa);

inline void divisor_scan(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                         std::vector<std::uint64_t> & out)
{
    divisor_scan_for(active_isa())(n, lo, hi, out);
}

} // namespace quadclass::kernels
