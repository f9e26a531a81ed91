#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quadclass/integers.hpp"

namespace quadclass {

/*
 * Primitive positive definite binary quadratic form a x^2 + b xy + c y^2.
 * Invariants: a > 0, c > 0, D = b^2 - 4ac < 0, gcd(a, b, c) = 1.
 * Coefficients are 64-bit; |D| is limited to max_abs_discriminant so that
 * composition intermediates fit in 128 bits.
 */
struct QuadForm
{
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 1;

    /// Validating constructor; throws DomainError on a violated invariant.
    static QuadForm make(std::int64_t a, std::int64_t b, std::int64_t c);

    std::int64_t discriminant() const;
    bool is_reduced() const;
    bool is_principal() const; // reduced form is (1, b, c)

    friend auto operator<=>(QuadForm const &, QuadForm const &) = default;
    friend std::ostream & operator<<(std::ostream & o, QuadForm const & f);
};

std::string to_string(QuadForm const & f);

inline constexpr std::int64_t max_abs_discriminant = std::int64_t(1) << 58;

/// All primitive reduced forms of one negative discriminant, sorted by (a, b).
struct ClassGroup
{
    std::int64_t discriminant = 0;
    std::vector<QuadForm> reduced_forms;

    std::size_t h() const { return reduced_forms.size(); }
    QuadForm const & principal() const { return reduced_forms.front(); }
};

struct EnumerationOptions
{
    std::int64_t disc_cap = 120'000'000;
    unsigned workers = 1;
};

/// Checks D < 0, D = 0 or 1 (mod 4), |D| within the supported range.
void require_discriminant(std::int64_t D);

/// d0 if d0 = 1 (mod 4), otherwise 4 d0. Rejects non-square-free or d0 >= 0.
BigInt fundamental_discriminant(BigInt const & d0);

QuadForm principal_form(std::int64_t D);
QuadForm reduce(QuadForm f);

/// Throws ResourceError (naming the cap) when |D| > options.disc_cap.
ClassGroup enumerate_reduced(std::int64_t D, EnumerationOptions const & options = {});

/// Dirichlet composition followed by reduction.
QuadForm compose(QuadForm const & f, QuadForm const & g);

/*
 * Dirichlet composition without the final reduction. b is normalised into
 * (-A, A]. When gcd(a1, a2, (b1+b2)/2) = 1 the first coefficient is a1*a2,
 * i.e. the norm of the product ideal.
 */
QuadForm compose_unreduced(QuadForm const & f, QuadForm const & g);

QuadForm inverse(QuadForm const & f);
QuadForm power(QuadForm const & f, std::uint64_t k);

/// Least k >= 1 with f^k principal (repeated composition).
std::uint64_t order_in_class_group(QuadForm const & f);

/// Kronecker symbol (D / q) for a prime q.
int kronecker(std::int64_t D, std::int64_t q);

/*
 * Form (q, b, (b^2 - D) / 4q) with the least 0 <= b <= q such that
 * b^2 = D (mod 4q). The result is not reduced. Throws DomainError if q is
 * not prime or is inert for D.
 */
QuadForm prime_form(std::int64_t D, std::int64_t q);

} // namespace quadclass
