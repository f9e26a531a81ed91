#include "quadclass/kernels/divisor_scan.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace quadclass::kernels {

namespace {

bool cpu_supports(Isa isa)
{
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(QUADCLASS_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::neon:
#if defined(QUADCLASS_BUILD_NEON)
        return true; // baseline on aarch64
#else
        return false;
#endif
    }
    return false;
}

Isa best_available()
{
    if (cpu_supports(Isa::avx2))
        return Isa::avx2;
    if (cpu_supports(Isa::neon))
        return Isa::neon;
    return Isa::scalar;
}

std::atomic<Isa> & active_slot()
{
    static std::atomic<Isa> slot{detect_isa()};
    return slot;
}

} // namespace

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    }
    return "?";
}

Isa parse_isa(std::string_view name)
{
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (isa_name(isa) == name)
            return isa;
    }
    throw std::invalid_argument("unknown kernel '" + std::string(name) +
                                "' (expected scalar, avx2 or neon)");
}

bool isa_available(Isa isa)
{
    return cpu_supports(isa);
}

std::vector<Isa> available_isas()
{
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (cpu_supports(isa))
            out.push_back(isa);
    }
    return out;
}

Isa detect_isa()
{
    if (char const * env = std::getenv("QUADCLASS_KERNEL"); env && *env) {
        Isa const wanted = parse_isa(env);
        if (cpu_supports(wanted))
            return wanted;
    }
    return best_available();
}

Isa active_isa()
{
    return active_slot().load(std::memory_order_relaxed);
}

void set_active_isa(Isa isa)
{
    if (!cpu_supports(isa))
        throw std::invalid_argument("kernel '" + std::string(isa_name(isa)) +
                                    "' is not available on this build/CPU");
    active_slot().store(isa, std::memory_order_relaxed);
}

DivisorScanFn divisor_scan_for(Isa isa)
{
    switch (isa) {
#if defined(QUADCLASS_BUILD_AVX2)
    case Isa::avx2:
        if (cpu_supports(Isa::avx2))
            return &divisor_scan_avx2;
        break;
#endif
#if defined(QUADCLASS_BUILD_NEON)
    case Isa::neon:
        return &divisor_scan_neon;
#endif
    default:
        break;
    }
    return &divisor_scan_scalar;
}

} // namespace quadclass::kernels
