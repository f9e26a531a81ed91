#include "quadclass/integers.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <random>

namespace quadclass {

namespace detail {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint32_t> const & small_primes()
{
    static std::vector<std::uint32_t> const primes = [] {
        std::vector<bool> composite(trial_division_limit, false);
        std::vector<std::uint32_t> out;
        out.reserve(80000);
        for (std::uint32_t i = 2; i < trial_division_limit; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j < trial_division_limit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

} // namespace detail

namespace {

using detail::mulmod;
using detail::powmod;

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned r)
{
    a %= n;
    if (a == 0)
        return true;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

bool miller_rabin_round(BigInt const & n, BigInt const & a, BigInt const & d, unsigned r)
{
    BigInt const nm1 = n - 1;
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1)
        return true;
    for (unsigned i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == nm1)
            return true;
    }
    return false;
}

// Witnesses proven sufficient for every n < 2^64 (Jim Sinclair's set).
constexpr std::array<std::uint64_t, 7> u64_witnesses = {
    2, 325, 9375, 28178, 450775, 9780504, 1795265022};

constexpr std::uint64_t big_seed = 0x9e3779b97f4a7c15ULL;
constexpr int big_random_rounds = 24;

bool fits_u64(BigInt const & n)
{
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(BigInt const & n)
{
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, n.get_mpz_t());
    return out;
}

BigInt from_u64(std::uint64_t v)
{
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brent's cycle finding on x -> x^2 + c. Returns a nontrivial factor of the
// odd composite n; retries with c = 1, 2, 3, ... so results are reproducible.
std::uint64_t rho_split(std::uint64_t n)
{
    if (n % 2 == 0)
        return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
        std::uint64_t const m = 128;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

BigInt rho_split(BigInt const & n)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    for (unsigned long c = 1;; ++c) {
        auto f = [&](BigInt const & x) -> BigInt { return (x * x + c) % n; };
        BigInt y = 2, x = 2, ys = 2, q = 1, g = 1;
        unsigned long const m = 128;
        for (unsigned long r = 1; g == 1; r <<= 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = f(y);
            for (unsigned long k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    BigInt diff = abs(x - y);
                    q = q * diff % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                BigInt diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void split_u64(std::uint64_t n, std::map<std::uint64_t, unsigned> & out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    std::uint64_t const f = rho_split(n);
    split_u64(f, out);
    split_u64(n / f, out);
}

void split_big(BigInt const & n, std::map<BigInt, unsigned> & out, bool & probabilistic)
{
    if (n == 1)
        return;
    if (fits_u64(n)) {
        std::map<std::uint64_t, unsigned> small;
        split_u64(to_u64(n), small);
        for (auto const & [p, e] : small)
            out[from_u64(p)] += e;
        return;
    }
    Primality const pr = primality(n);
    if (pr != Primality::composite) {
        probabilistic = probabilistic || pr == Primality::probable_prime;
        ++out[n];
        return;
    }
    BigInt const f = rho_split(n);
    split_big(f, out, probabilistic);
    split_big(BigInt(n / f), out, probabilistic);
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    if (n < 37 * 37)
        return true;
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : u64_witnesses) {
        if (!miller_rabin_round(n, a, d, r))
            return false;
    }
    return true;
}

Primality primality(BigInt const & n)
{
    if (n < 2)
        return Primality::composite;
    if (fits_u64(n))
        return is_prime(to_u64(n)) ? Primality::prime : Primality::composite;

    for (std::uint32_t p : detail::small_primes()) {
        if (p > 1000)
            break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return Primality::composite;
    }
    BigInt d = n - 1;
    unsigned r = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++r;
    }
    for (unsigned long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!miller_rabin_round(n, BigInt(a), d, r))
            return Primality::composite;
    }
    std::mt19937_64 rng(big_seed);
    BigInt const span = n - 3;
    for (int i = 0; i < big_random_rounds; ++i) {
        BigInt a = from_u64(rng());
        a = a % span + 2;
        if (!miller_rabin_round(n, a, d, r))
            return Primality::composite;
    }
    return Primality::probable_prime;
}

bool is_prime(BigInt const & n)
{
    return primality(n) != Primality::composite;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize_u64(std::uint64_t n)
{
    if (n == 0)
        throw DomainError("factorize: n must be >= 1");
    std::map<std::uint64_t, unsigned> acc;
    for (std::uint32_t p : detail::small_primes()) {
        if (std::uint64_t(p) * p > n)
            break;
        while (n % p == 0) {
            n /= p;
            ++acc[p];
        }
    }
    if (n > 1) {
        std::uint64_t const lim = detail::trial_division_limit;
        if (n < lim * lim)
            ++acc[n];
        else
            split_u64(n, acc);
    }
    return {acc.begin(), acc.end()};
}

Factorization factorize(BigInt const & n)
{
    if (n < 1)
        throw DomainError("factorize: n must be >= 1, got " + n.get_str());
    Factorization out{n, {}, false};
    if (fits_u64(n)) {
        for (auto const & [p, e] : factorize_u64(to_u64(n)))
            out.factors.push_back({from_u64(p), e});
        return out;
    }

    std::map<BigInt, unsigned> acc;
    BigInt rest = n;
    for (std::uint32_t p : detail::small_primes()) {
        if (fits_u64(rest))
            break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++acc[BigInt(p)];
        }
    }
    if (fits_u64(rest)) {
        for (auto const & [p, e] : factorize_u64(to_u64(rest)))
            acc[from_u64(p)] += e;
    } else {
        split_big(rest, acc, out.probabilistic);
    }
    for (auto const & [p, e] : acc)
        out.factors.push_back({p, e});
    return out;
}

BigInt Factorization::product() const
{
    BigInt r = 1;
    for (auto const & f : factors)
        r *= ipow(f.prime, f.exponent);
    return r;
}

bool is_squarefree(BigInt const & n)
{
    if (n == 0)
        throw DomainError("is_squarefree: n must be nonzero");
    auto const f = factorize(abs(n));
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](PrimePower const & pp) { return pp.exponent == 1; });
}

SquarefreeDecomposition squarefree_decompose(BigInt const & n)
{
    if (n == 0)
        throw DomainError("squarefree_decompose: n must be nonzero");
    SquarefreeDecomposition out{n, 1, 1};
    for (auto const & [p, e] : factorize(abs(n)).factors) {
        out.s *= ipow(p, e / 2);
        if (e % 2)
            out.d0 *= p;
    }
    if (sgn(n) < 0)
        out.d0 = -out.d0;
    return out;
}

std::optional<BigInt> is_perfect_square(BigInt const & n)
{
    if (sgn(n) < 0 || !mpz_perfect_square_p(n.get_mpz_t()))
        return std::nullopt;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

BigInt fibonacci(unsigned i)
{
    BigInt a = 0, b = 1;
    for (unsigned k = 0; k < i; ++k) {
        BigInt next = a + b;
        a = std::move(b);
        b = std::move(next);
    }
    return a;
}

BigInt lucas(unsigned i)
{
    BigInt a = 2, b = 1;
    for (unsigned k = 0; k < i; ++k) {
        BigInt next = a + b;
        a = std::move(b);
        b = std::move(next);
    }
    return a;
}

unsigned omega(BigInt const & m)
{
    if (m < 2)
        throw DomainError("omega: m must be >= 2, got " + m.get_str());
    return static_cast<unsigned>(factorize(m).factors.size());
}

BigInt ipow(BigInt const & base, unsigned long exponent)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

bool fits_i64(BigInt const & n)
{
    return mpz_sizeinbase(n.get_mpz_t(), 2) <= 63;
}

std::int64_t to_i64(BigInt const & n)
{
    if (!fits_i64(n))
        throw DomainError("value does not fit in 64 bits: " + n.get_str());
    std::uint64_t const mag = to_u64(abs(n));
    return sgn(n) < 0 ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
}

} // namespace quadclass
