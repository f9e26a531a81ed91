#include <doctest.h>

#include <algorithm>
#include <random>

#include "quadclass/kernels/divisor_scan.hpp"
#include "quadclass/quadform.hpp"

using namespace quadclass;
using namespace quadclass::kernels;

namespace {

std::vector<std::uint64_t> scan(Isa isa, std::uint64_t n, std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    divisor_scan_for(isa)(n, lo, hi, out);
    return out;
}

struct ActiveIsaGuard
{
    Isa saved = active_isa();
    ~ActiveIsaGuard() { set_active_isa(saved); }
};

} // namespace

TEST_CASE("isa names round-trip")
{
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
        CHECK(parse_isa(isa_name(isa)) == isa);
    CHECK_THROWS_AS(parse_isa("sse9"), std::invalid_argument);
    CHECK(isa_available(Isa::scalar));
    CHECK(isa_available(detect_isa()));
}

TEST_CASE("scalar kernel")
{
    CHECK(scan(Isa::scalar, 12, 1, 12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(scan(Isa::scalar, 53, 1, 7).size() == 1);
    CHECK(scan(Isa::scalar, 53, 8, 7).empty());
}

TEST_CASE("every available kernel matches the scalar kernel")
{
    std::mt19937_64 rng(99);
    for (Isa isa : available_isas()) {
        CAPTURE(isa_name(isa));
        // short ranges exercise the vector tail handling
        for (std::uint64_t n = 1; n < 300; ++n) {
            for (std::uint64_t lo = 1; lo < 12; ++lo) {
                for (std::uint64_t hi = lo; hi < lo + 20; ++hi)
                    REQUIRE(scan(isa, n, lo, hi) == scan(Isa::scalar, n, lo, hi));
            }
        }
        // highly composite values
        for (std::uint64_t n : {720720ULL, 367567200ULL, 963761198400ULL, 4497552259200ULL}) {
            std::uint64_t const hi = std::min<std::uint64_t>(n, 3'000'000);
            REQUIRE(scan(isa, n, 1, hi) == scan(Isa::scalar, n, 1, hi));
        }
        // random n up to the precondition limit
        std::uniform_int_distribution<std::uint64_t> nd(1, divisor_scan_max_n - 100'000);
        std::uniform_int_distribution<std::uint64_t> ld(1, 50'000);
        for (int i = 0; i < 200; ++i) {
            std::uint64_t const n = nd(rng);
            std::uint64_t const lo = ld(rng);
            std::uint64_t const hi = lo + ld(rng);
            REQUIRE(scan(isa, n, lo, hi) == scan(Isa::scalar, n, lo, hi));
        }
        // products of two factors inside the scanned window, near the limit
        std::uniform_int_distribution<std::uint64_t> fd(50'000, 90'000);
        for (int i = 0; i < 200; ++i) {
            std::uint64_t const a = fd(rng), b = (divisor_scan_max_n - 200'000) / a - fd(rng);
            std::uint64_t const n = a * b;
            auto const got = scan(isa, n, 49'000, 91'000);
            REQUIRE(got == scan(Isa::scalar, n, 49'000, 91'000));
            REQUIRE(std::find(got.begin(), got.end(), a) != got.end());
        }
    }
}

TEST_CASE("enumeration is identical across kernels and worker counts")
{
    ActiveIsaGuard guard;
    std::vector<std::int64_t> const Ds{-212, -996, -1940, -17492, -595507, -2382028, -24996, -9999991};
    for (std::int64_t D : Ds) {
        set_active_isa(Isa::scalar);
        ClassGroup const reference = enumerate_reduced(D, {120'000'000, 1});
        for (Isa isa : available_isas()) {
            set_active_isa(isa);
            for (unsigned workers : {1u, 2u, 3u, 8u}) {
                ClassGroup const g = enumerate_reduced(D, {120'000'000, workers});
                REQUIRE(g.reduced_forms == reference.reduced_forms);
            }
        }
    }
}

TEST_CASE("unavailable kernels are rejected")
{
    ActiveIsaGuard guard;
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (!isa_available(isa))
            CHECK_THROWS_AS(set_active_isa(isa), std::invalid_argument);
    }
}
