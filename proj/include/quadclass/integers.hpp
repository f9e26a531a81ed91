#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace quadclass {

using BigInt = mpz_class;

/// Raised when an argument lies outside the mathematical domain of an
/// operation (wrong parity, non-square-free input, inert prime, ...).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Raised when a configured resource bound (discriminant cap, window) is
/// exceeded. The message names the cap.
class ResourceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Primality
{
    composite,
    prime,          // proven: deterministic witness set
    probable_prime, // n >= 2^64, fixed-seed Miller-Rabin
};

struct PrimePower
{
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(PrimePower const &, PrimePower const &) = default;
};

/*
 * value = prod prime^exponent, primes strictly increasing.
 * probabilistic is set when some factor above 2^64 was only shown to be
 * a probable prime.
 */
struct Factorization
{
    BigInt value;
    std::vector<PrimePower> factors;
    bool probabilistic = false;

    BigInt product() const;
};

/// value = s^2 * d0 with d0 square-free and sign(d0) = sign(value).
struct SquarefreeDecomposition
{
    BigInt value;
    BigInt s;
    BigInt d0;
};

Primality primality(BigInt const & n);
bool is_prime(BigInt const & n);
bool is_prime(std::uint64_t n);

Factorization factorize(BigInt const & n);
std::vector<std::pair<std::uint64_t, unsigned>> factorize_u64(std::uint64_t n);

bool is_squarefree(BigInt const & n);
SquarefreeDecomposition squarefree_decompose(BigInt const & n);

std::optional<BigInt> is_perfect_square(BigInt const & n);

BigInt fibonacci(unsigned i);
BigInt lucas(unsigned i);

/// Number of distinct prime divisors. Requires m >= 2.
unsigned omega(BigInt const & m);

BigInt ipow(BigInt const & base, unsigned long exponent);

/// Throws DomainError if n does not fit in a signed 64-bit integer.
std::int64_t to_i64(BigInt const & n);
bool fits_i64(BigInt const & n);

inline std::string to_string(BigInt const & n)
{
    return n.get_str();
}

namespace detail {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Primes below the trial-division limit, ascending.
std::vector<std::uint32_t> const & small_primes();
inline constexpr std::uint32_t trial_division_limit = 1'000'000;

} // namespace detail

} // namespace quadclass
