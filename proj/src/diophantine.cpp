#include "quadclass/diophantine.hpp"

#include <algorithm>

namespace quadclass {

namespace {

BigInt gcd(BigInt const & a, BigInt const & b)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// r >= 1 with value = m^r, if any.
std::optional<unsigned> exact_power_of(BigInt value, BigInt const & m)
{
    if (value < m || m < 2)
        return std::nullopt;
    unsigned r = 0;
    while (value > 1) {
        if (!mpz_divisible_p(value.get_mpz_t(), m.get_mpz_t()))
            return std::nullopt;
        value /= m;
        ++r;
    }
    return r;
}

} // namespace

void BSInstance::validate() const
{
    if (lambda_sq != 1 && lambda_sq != 2 && lambda_sq != 4)
        throw DomainError("lambda^2 must be 1, 2 or 4, got " + std::to_string(lambda_sq));
    if (D1 < 1 || D2 < 1)
        throw DomainError("D1 and D2 must be positive");
    if (m < 2)
        throw DomainError("m must be >= 2");
    if (gcd(D1, D2) != 1)
        throw DomainError("gcd(D1, D2) must be 1 for " + describe());
    if (gcd(BigInt(D1 * D2), m) != 1)
        throw DomainError("gcd(D1*D2, m) must be 1 for " + describe());
    if (mpz_even_p(m.get_mpz_t()) && lambda_sq != 4)
        throw DomainError("lambda must be 2 when m is even, for " + describe());
}

std::string BSInstance::describe() const
{
    return "(lambda^2=" + std::to_string(lambda_sq) + ", D1=" + D1.get_str() +
           ", D2=" + D2.get_str() + ", m=" + m.get_str() + ")";
}

BSInstance make_instance(std::int64_t lambda_sq, BigInt D1, BigInt D2, BigInt m)
{
    BSInstance inst{lambda_sq, std::move(D1), std::move(D2), std::move(m)};
    inst.validate();
    return inst;
}

std::string_view family_name(ExceptionalFamily f)
{
    switch (f) {
    case ExceptionalFamily::F:
        return "F";
    case ExceptionalFamily::G:
        return "G";
    case ExceptionalFamily::H:
        return "H";
    case ExceptionalFamily::S:
        return "S";
    }
    return "?";
}

std::vector<ExceptionalFamily> Classification::families() const
{
    std::vector<ExceptionalFamily> out;
    if (f)
        out.push_back(ExceptionalFamily::F);
    if (g)
        out.push_back(ExceptionalFamily::G);
    if (h)
        out.push_back(ExceptionalFamily::H);
    if (s)
        out.push_back(ExceptionalFamily::S);
    return out;
}

SolutionSet solve(BSInstance const & instance, unsigned y_max)
{
    instance.validate();
    if (y_max < 1)
        throw DomainError("y_max must be >= 1");

    SolutionSet out{instance, y_max, {}, classify(instance)};
    BigInt rhs = instance.lambda_sq;
    for (unsigned y = 1; y <= y_max; ++y) {
        rhs *= instance.m;
        BigInt const num = rhs - instance.D2;
        if (sgn(num) <= 0 || !mpz_divisible_p(num.get_mpz_t(), instance.D1.get_mpz_t()))
            continue;
        if (auto const x = is_perfect_square(BigInt(num / instance.D1)); x && *x >= 1)
            out.solutions.push_back({*x, y});
    }
    return out;
}

std::optional<FamilyWitnessF> in_family_F(BigInt const & D1, BigInt const & D2, BigInt const & m)
{
    // F_i is strictly increasing for i >= 2.
    for (unsigned i = 2;; ++i) {
        BigInt const fi = fibonacci(i);
        if (fi > m)
            return std::nullopt;
        if (fi != m)
            continue;
        for (int eps : {1, -1}) {
            unsigned const fi_idx = eps == 1 ? i - 2 : i + 2;
            unsigned const li_idx = eps == 1 ? i + 1 : i - 1;
            if (fibonacci(fi_idx) == D1 && lucas(li_idx) == D2)
                return FamilyWitnessF{i, eps};
        }
    }
}

std::optional<unsigned> in_family_G(BigInt const & D1, BigInt const & D2, BigInt const & m)
{
    if (D1 != 1 || m < 2)
        return std::nullopt;
    BigInt const v = D2 + 1;
    if (!mpz_divisible_ui_p(v.get_mpz_t(), 4))
        return std::nullopt;
    return exact_power_of(BigInt(v / 4), m);
}

std::optional<FamilyWitnessH> in_family_H(BSInstance const & instance)
{
    BigInt const & D1 = instance.D1;
    BigInt const & D2 = instance.D2;
    BigInt const lam = instance.lambda_sq;
    for (int sign : {1, -1}) {
        // 3 D1 s^2 = D2 + sign * lambda^2
        BigInt const rhs = D2 + sign * lam;
        BigInt const three_d1 = 3 * D1;
        if (sgn(rhs) <= 0 || !mpz_divisible_p(rhs.get_mpz_t(), three_d1.get_mpz_t()))
            continue;
        auto const s = is_perfect_square(BigInt(rhs / three_d1));
        if (!s || *s < 1)
            continue;
        BigInt const lhs = D1 * *s * *s + D2;
        if (!mpz_divisible_p(lhs.get_mpz_t(), lam.get_mpz_t()))
            continue;
        if (auto const r = exact_power_of(BigInt(lhs / lam), instance.m))
            return FamilyWitnessH{*r, *s};
    }
    return std::nullopt;
}

std::array<STuple, 9> const & s_table()
{
    static std::array<STuple, 9> const table = {{
        {4, 13, 3, 4},
        {2, 7, 11, 9},
        {2, 1, 1, 5},
        {2, 1, 1, 13},
        {4, 1, 3, 7},
        {1, 1, 19, 55},
        {1, 1, 341, 377},
        {1, 2, 1, 3},
        {4, 7, 1, 2},
    }};
    return table;
}

bool in_set_S(std::int64_t lambda_sq, BigInt const & D1, BigInt const & D2, BigInt const & m)
{
    return std::any_of(s_table().begin(), s_table().end(), [&](STuple const & t) {
        return t.lambda_sq == lambda_sq && D1 == t.D1 && D2 == t.D2 && m == t.m;
    });
}

Classification classify(BSInstance const & instance)
{
    Classification c;
    c.f = in_family_F(instance.D1, instance.D2, instance.m);
    c.g = in_family_G(instance.D1, instance.D2, instance.m);
    c.h = in_family_H(instance);
    c.s = in_set_S(instance.lambda_sq, instance.D1, instance.D2, instance.m);
    return c;
}

BoundAudit audit_bound(BSInstance const & instance, unsigned y_max)
{
    BoundAudit audit;
    audit.solutions = solve(instance, y_max);
    audit.omega_m = omega(instance.m);
    audit.bound = std::uint64_t(1) << (audit.omega_m - 1);
    audit.checked = !audit.solutions.families.exceptional();
    audit.pass = !audit.checked || audit.solutions.solutions.size() <= audit.bound;
    return audit;
}

LebesgueReport lebesgue_check(unsigned n_max, std::uint64_t y_bound)
{
    if (n_max < 3 || y_bound < 3)
        throw DomainError("lebesgue_check: bounds must be >= 3");
    LebesgueReport report{n_max, y_bound, 0, {}};
    for (std::uint64_t y = 3; y <= y_bound; y += 2) {
        BigInt const by = static_cast<unsigned long>(y);
        BigInt const y2 = by * by;
        BigInt yn = by * y2;
        for (unsigned n = 3; n <= n_max; n += 2) {
            ++report.checked;
            if (auto const x = is_perfect_square(BigInt(2 * yn - 1)))
                report.hits.push_back({*x, y, n});
            yn *= y2;
        }
    }
    return report;
}

} // namespace quadclass
