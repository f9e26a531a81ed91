#include "quadclass/quadform.hpp"

#include <numeric>
#include <ostream>
#include <sstream>

#include "int_util.hpp"

namespace quadclass {

using detail::floor_div;
using detail::i128;

namespace {

// x -> x + k y with k chosen so that -a < b <= a.
void normalize(i128 & a, i128 & b, i128 & c)
{
    i128 const k = floor_div(a - b, 2 * a);
    c += k * (b + a * k);
    b += 2 * a * k;
}

QuadForm narrow(i128 a, i128 b, i128 c)
{
    if (!detail::fits_i64(a) || !detail::fits_i64(b) || !detail::fits_i64(c))
        throw DomainError("quadratic form coefficient exceeds 64 bits");
    return QuadForm{std::int64_t(a), std::int64_t(b), std::int64_t(c)};
}

// (g, x, y) with x a + y b = g = gcd(a, b) >= 0.
struct Xgcd
{
    i128 g, x, y;
};

Xgcd xgcd(i128 a, i128 b)
{
    i128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i128 const q = old_r / r;
        i128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0)
        return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i128 mod_pos(i128 x, i128 m)
{
    i128 r = x % m;
    return r < 0 ? r + m : r;
}

std::uint64_t sqrt_mod_prime(std::uint64_t n, std::uint64_t p)
{
    using detail::mulmod;
    using detail::powmod;
    n %= p;
    if (n == 0 || p == 2)
        return n;
    if (p % 4 == 3)
        return powmod(n, (p + 1) / 4, p);
    // Tonelli-Shanks
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(n, q, p);
    std::uint64_t r = powmod(n, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j)
            b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

} // namespace

QuadForm QuadForm::make(std::int64_t a, std::int64_t b, std::int64_t c)
{
    if (a <= 0 || c <= 0)
        throw DomainError("form must be positive definite (a > 0, c > 0)");
    QuadForm const f{a, b, c};
    f.discriminant(); // range checks
    if (std::gcd(std::gcd(a, b), c) != 1)
        throw DomainError("form " + to_string(f) + " is not primitive");
    return f;
}

std::int64_t QuadForm::discriminant() const
{
    i128 const D = i128(b) * b - 4 * i128(a) * c;
    if (D >= 0)
        throw DomainError("form " + to_string(*this) + " has non-negative discriminant");
    if (-D > max_abs_discriminant)
        throw DomainError("discriminant of " + to_string(*this) + " is out of range");
    return std::int64_t(D);
}

bool QuadForm::is_reduced() const
{
    std::int64_t const ab = b < 0 ? -b : b;
    if (ab > a || a > c)
        return false;
    if ((ab == a || a == c) && b < 0)
        return false;
    return true;
}

bool QuadForm::is_principal() const
{
    return reduce(*this).a == 1;
}

std::ostream & operator<<(std::ostream & o, QuadForm const & f)
{
    return o << "(" << f.a << "," << f.b << "," << f.c << ")";
}

std::string to_string(QuadForm const & f)
{
    std::ostringstream s;
    s << f;
    return s.str();
}

void require_discriminant(std::int64_t D)
{
    if (D >= 0)
        throw DomainError("discriminant must be negative, got " + std::to_string(D));
    if (-D > max_abs_discriminant)
        throw DomainError("|D| = " + std::to_string(-D) + " is beyond the supported range");
    std::int64_t const r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw DomainError("discriminant must be 0 or 1 mod 4, got " + std::to_string(D));
}

BigInt fundamental_discriminant(BigInt const & d0)
{
    if (sgn(d0) >= 0)
        throw DomainError("fundamental_discriminant: d0 must be negative, got " + d0.get_str());
    if (!is_squarefree(d0))
        throw DomainError("fundamental_discriminant: " + d0.get_str() + " is not square-free");
    if (mpz_fdiv_ui(d0.get_mpz_t(), 4) == 1)
        return d0;
    return 4 * d0;
}

QuadForm principal_form(std::int64_t D)
{
    require_discriminant(D);
    if (D % 4 == 0)
        return QuadForm{1, 0, -D / 4};
    return QuadForm{1, 1, (1 - D) / 4};
}

QuadForm reduce(QuadForm f)
{
    f.discriminant();
    i128 a = f.a, b = f.b, c = f.c;
    normalize(a, b, c);
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize(a, b, c);
    }
    if (a == c && b < 0)
        b = -b;
    return narrow(a, b, c);
}

QuadForm compose_unreduced(QuadForm const & f, QuadForm const & g)
{
    std::int64_t const D = f.discriminant();
    if (g.discriminant() != D)
        throw DomainError("compose: discriminant mismatch " + std::to_string(D) + " vs " +
                          std::to_string(g.discriminant()));

    i128 const a1 = f.a, b1 = f.b, a2 = g.a, b2 = g.b, c2 = g.c;
    i128 const s = (b1 + b2) / 2;

    // u a1 + v a2 + w s = d = gcd(a1, a2, s)
    Xgcd const e1 = xgcd(a1, a2);
    Xgcd const e2 = xgcd(e1.g, s);
    i128 const d = e2.g;
    i128 const v = e2.x * e1.y;
    i128 const w = e2.y;

    i128 const n1 = a1 / d;
    i128 const n2 = a2 / d;
    i128 const A = n1 * n2;

    // Only K mod n1 matters: B is determined modulo 2 A = 2 n2 n1.
    i128 const k = mod_pos(mod_pos(v, n1) * mod_pos(s - b2, n1) - mod_pos(w, n1) * mod_pos(c2, n1), n1);
    i128 B = b2 + 2 * n2 * k;
    B = mod_pos(B + A - 1, 2 * A) - A + 1; // into (-A, A]

    i128 const num = B * B - i128(D);
    if (num % (4 * A) != 0)
        throw DomainError("compose: internal error, non-integral c");
    return narrow(A, B, num / (4 * A));
}

QuadForm compose(QuadForm const & f, QuadForm const & g)
{
    return reduce(compose_unreduced(reduce(f), reduce(g)));
}

QuadForm inverse(QuadForm const & f)
{
    return reduce(QuadForm{f.a, -f.b, f.c});
}

QuadForm power(QuadForm const & f, std::uint64_t k)
{
    QuadForm result = principal_form(f.discriminant());
    QuadForm base = reduce(f);
    while (k) {
        if (k & 1)
            result = compose(result, base);
        base = compose(base, base);
        k >>= 1;
    }
    return result;
}

std::uint64_t order_in_class_group(QuadForm const & f)
{
    QuadForm const base = reduce(f);
    QuadForm cur = base;
    std::uint64_t k = 1;
    std::uint64_t const limit = std::uint64_t(-f.discriminant()) + 1;
    while (cur.a != 1) {
        cur = compose(cur, base);
        if (++k > limit)
            throw DomainError("order_in_class_group: no principal power found");
    }
    return k;
}

int kronecker(std::int64_t D, std::int64_t q)
{
    if (q < 2 || !is_prime(std::uint64_t(q)))
        throw DomainError("kronecker: " + std::to_string(q) + " is not prime");
    if (q == 2) {
        if (D % 2 == 0)
            return 0;
        std::int64_t const r = ((D % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    std::uint64_t const uq = std::uint64_t(q);
    std::uint64_t const r = std::uint64_t(((D % q) + q) % q);
    if (r == 0)
        return 0;
    return detail::powmod(r, (uq - 1) / 2, uq) == 1 ? 1 : -1;
}

QuadForm prime_form(std::int64_t D, std::int64_t q)
{
    require_discriminant(D);
    if (kronecker(D, q) < 0)
        throw DomainError("prime_form: " + std::to_string(q) + " is inert for D = " +
                          std::to_string(D) + " (Kronecker symbol -1)");

    std::int64_t b = -1;
    if (q == 2) {
        for (std::int64_t cand = 0; cand <= 2 && b < 0; ++cand) {
            if (((cand * cand - D) % 8) == 0)
                b = cand;
        }
    } else {
        std::uint64_t const r = sqrt_mod_prime(std::uint64_t(((D % q) + q) % q), std::uint64_t(q));
        std::int64_t const r1 = std::int64_t(r);
        std::int64_t const r2 = r == 0 ? q : q - r1;
        for (std::int64_t cand : {std::min(r1, r2), std::max(r1, r2)}) {
            if (((cand - D) % 2) == 0) {
                b = cand;
                break;
            }
        }
    }
    if (b < 0)
        throw DomainError("prime_form: no square root of D mod 4q");

    i128 const num = i128(b) * b - i128(D);
    return QuadForm::make(q, b, std::int64_t(num / (4 * i128(q))));
}

} // namespace quadclass
