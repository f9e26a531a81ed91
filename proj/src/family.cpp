#include "quadclass/family.hpp"

#include <set>
#include <stdexcept>

#include "quadclass/pthpower.hpp"

namespace quadclass {

namespace {

void require_odd_at_least_3(std::int64_t v, char const * name)
{
    if (v < 3 || v % 2 == 0)
        throw DomainError(std::string(name) + " must be odd and >= 3, got " + std::to_string(v));
}

unsigned long as_exponent(std::int64_t t)
{
    return static_cast<unsigned long>(t);
}

long mod4(BigInt const & v)
{
    return static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), 4));
}

} // namespace

FieldPoint make_field_point(BigInt const & radicand)
{
    if (sgn(radicand) >= 0)
        throw DomainError("field radicand must be negative, got " + radicand.get_str());
    return make_field_point(squarefree_decompose(radicand));
}

FieldPoint make_field_point(SquarefreeDecomposition sq)
{
    if (sgn(sq.value) >= 0)
        throw DomainError("field radicand must be negative, got " + sq.value.get_str());
    if (sq.s * sq.s * sq.d0 != sq.value)
        throw DomainError("inconsistent square-free decomposition of " + sq.value.get_str());
    BigInt const disc = mod4(sq.d0) == 1 ? sq.d0 : BigInt(4 * sq.d0);
    BigInt const radicand = sq.value;
    return FieldPoint{radicand, std::move(sq), disc};
}

FamilyPoint make_family_point(std::int64_t m, std::int64_t t)
{
    require_odd_at_least_3(m, "m");
    require_odd_at_least_3(t, "t");
    BigInt const d = 1 - 2 * ipow(BigInt(m), as_exponent(t));
    FamilyPoint point{m, t, make_field_point(d), std::nullopt};

    if (mod4(point.d()) != 3 || mod4(point.d0()) != 3 || point.disc() != 4 * point.d0() ||
        point.d0() == -1)
        throw std::logic_error("family point invariant violated for m=" + std::to_string(m) +
                               " t=" + std::to_string(t));
    return point;
}

std::int64_t enumerable_discriminant(FieldPoint const & field, EnumerationOptions const & options)
{
    if (!fits_i64(field.disc) || -field.disc > options.disc_cap)
        throw ResourceError("|D| = " + BigInt(abs(field.disc)).get_str() +
                            " exceeds the discriminant cap " + std::to_string(options.disc_cap) +
                            " (QUADCLASS_DISC_CAP)");
    return to_i64(field.disc);
}

std::uint64_t class_number(FieldPoint const & field, ClassNumberCache & cache,
                           EnumerationOptions const & options)
{
    std::int64_t const D = enumerable_discriminant(field, options);
    if (auto const h = cache.get(D))
        return *h;
    std::uint64_t const h = enumerate_reduced(D, options).h();
    cache.put(D, h);
    return h;
}

std::uint64_t class_number(FamilyPoint & point, ClassNumberCache & cache,
                           EnumerationOptions const & options)
{
    if (!point.h)
        point.h = class_number(point.field, cache, options);
    return *point.h;
}

std::optional<OrderPClass> construct_order_p_class(FamilyPoint const & point)
{
    std::int64_t const p = point.t;
    if (!is_prime(std::uint64_t(p)))
        throw DomainError("construct_order_p_class: t = " + std::to_string(p) + " is not prime");
    if (is_special_pth_power(point.m, p).is_pth_power)
        throw DomainError("construct_order_p_class: the scaled element is a p-th power for m=" +
                          std::to_string(point.m) + ", p=" + std::to_string(p));
    if (!fits_i64(point.disc()) || -point.disc() > max_abs_discriminant)
        throw ResourceError("construct_order_p_class: discriminant out of 64-bit range");

    std::int64_t const D = to_i64(point.disc());
    QuadForm const ramified = prime_form(D, 2); // self-conjugate

    std::vector<std::pair<QuadForm, unsigned>> split;
    for (auto const & [q, e] : factorize(BigInt(point.m)).factors)
        split.emplace_back(prime_form(D, to_i64(q)), e);

    unsigned const n = static_cast<unsigned>(split.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        QuadForm j = ramified;
        for (unsigned i = 0; i < n; ++i) {
            QuadForm q = split[i].first;
            if (mask & (1u << i))
                q.b = -q.b;
            for (unsigned k = 0; k < split[i].second; ++k)
                j = compose_unreduced(j, q);
        }
        if (!power(j, std::uint64_t(p)).is_principal())
            continue;
        if (j.is_principal())
            continue;
        std::uint64_t const order = order_in_class_group(j);
        if (order != std::uint64_t(p))
            continue;
        return OrderPClass{j, reduce(j), order, mask};
    }
    return std::nullopt;
}

IizukaPair iizuka_pair(std::int64_t m, std::int64_t t)
{
    require_odd_at_least_3(m, "m");
    require_odd_at_least_3(t, "t");
    if (!is_squarefree(BigInt(t)))
        throw DomainError("t must be square-free, got " + std::to_string(t));

    auto const et = as_exponent(t);
    BigInt const base = 1 - 2 * ipow(BigInt(m), et); // s^2 d0
    BigInt const d = 4 * ipow(base, et);
    BigInt const U = 2 * ipow(BigInt(m), et) - 1;
    if (d + 1 != 1 - 4 * ipow(U, et))
        throw std::logic_error("Iizuka identity failed for m=" + std::to_string(m));

    // base^t = (s^t d0^((t-1)/2))^2 d0, so d = (2 s^t d0^((t-1)/2))^2 d0.
    auto const sq = squarefree_decompose(base);
    BigInt const root = 2 * ipow(sq.s, et) * ipow(BigInt(abs(sq.d0)), (et - 1) / 2);
    SquarefreeDecomposition const first{d, root, sq.d0};

    return IizukaPair{U, make_field_point(first), make_field_point(BigInt(d + 1))};
}

FieldPoint louboutin_point(BigInt const & U, std::int64_t k)
{
    if (U < 2)
        throw DomainError("U must be >= 2, got " + U.get_str());
    require_odd_at_least_3(k, "k");
    return make_field_point(BigInt(1 - 4 * ipow(U, as_exponent(k))));
}

bool divisibility_holds(std::int64_t t, std::uint64_t h)
{
    if (t < 1)
        throw DomainError("divisor must be positive");
    auto const f = factorize(BigInt(t));
    bool squarefree = true;
    for (auto const & pp : f.factors)
        squarefree = squarefree && pp.exponent == 1;
    if (squarefree)
        return h % std::uint64_t(t) == 0;
    for (auto const & pp : f.factors) {
        if (h % to_i64(pp.prime) != 0)
            return false;
    }
    return true;
}

bool divisibility_check(FamilyPoint & point, ClassNumberCache & cache, EnumerationOptions const & options)
{
    return divisibility_holds(point.t, class_number(point, cache, options));
}

std::size_t distinct_fields_count(std::int64_t m, std::span<std::int64_t const> exponents)
{
    std::set<BigInt> seen;
    for (std::int64_t t : exponents)
        seen.insert(make_family_point(m, t).d0());
    return seen.size();
}

} // namespace quadclass
