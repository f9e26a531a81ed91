#include "quadclass/pthpower.hpp"

#include <vector>

namespace quadclass {

namespace {

void require_family_params(std::int64_t m, std::int64_t p)
{
    if (m < 3 || m % 2 == 0)
        throw DomainError("m must be odd and >= 3, got " + std::to_string(m));
    if (p < 3 || !is_prime(std::uint64_t(p)))
        throw DomainError("p must be an odd prime, got " + std::to_string(p));
}

std::vector<BigInt> positive_divisors(Factorization const & f)
{
    std::vector<BigInt> out{1};
    for (auto const & [prime, e] : f.factors) {
        std::size_t const n = out.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= prime;
            for (std::size_t i = 0; i < n; ++i)
                out.push_back(out[i] * pk);
        }
    }
    return out;
}

} // namespace

QuadInt operator*(QuadInt const & l, QuadInt const & r)
{
    return {l.x * r.x + l.y * r.y * l.d0, l.x * r.y + l.y * r.x, l.d0};
}

QuadInt pow(QuadInt const & base, unsigned long exponent)
{
    QuadInt result{1, 0, base.d0};
    QuadInt b = base;
    while (exponent) {
        if (exponent & 1)
            result = result * b;
        exponent >>= 1;
        if (exponent)
            b = b * b;
    }
    return result;
}

std::string to_string(QuadInt const & q)
{
    return q.x.get_str() + (sgn(q.y) < 0 ? " - " : " + ") + BigInt(abs(q.y)).get_str() +
           "*sqrt(" + q.d0.get_str() + ")";
}

TargetElement target_element(std::int64_t m, std::int64_t p)
{
    require_family_params(m, p);
    BigInt const d = 1 - 2 * ipow(BigInt(m), static_cast<unsigned long>(p));
    auto const sq = squarefree_decompose(d);
    return {QuadInt{1, sq.s, sq.d0}, ipow(BigInt(2), static_cast<unsigned long>((p - 1) / 2)), sq.s};
}

PthPowerVerdict is_special_pth_power(std::int64_t m, std::int64_t p)
{
    TargetElement const t = target_element(m, p);
    QuadInt const target = t.scaled();
    BigInt const d0 = t.alpha.d0;
    BigInt const norm_root = 2 * BigInt(m);
    auto const up = static_cast<unsigned long>(p);

    std::vector<BigInt> a_values;
    for (BigInt a = 1; a <= t.scale; a *= 2)
        a_values.push_back(a);
    std::vector<BigInt> const b_values = positive_divisors(factorize(BigInt(t.scale * t.s)));

    PthPowerVerdict verdict;
    for (BigInt const & a : a_values) {
        for (BigInt const & b : b_values) {
            // Signs of a and b do not change the norm; test all four.
            verdict.checked_candidates += 4;
            if (a * a - b * b * d0 != norm_root)
                continue;
            for (int sa : {1, -1}) {
                for (int sb : {1, -1}) {
                    QuadInt const root{sa * a, sb * b, d0};
                    QuadInt const power = pow(root, up);
                    if (power == target) {
                        verdict.is_pth_power = true;
                        verdict.witness = root;
                        return verdict;
                    }
                    if (power == -target) {
                        verdict.is_pth_power = true;
                        verdict.witness = -root;
                        return verdict;
                    }
                }
            }
        }
    }
    return verdict;
}

std::optional<QuadInt> exact_root_oracle(QuadInt const & target, unsigned long p)
{
    BigInt const n = target.norm();
    if (sgn(n) <= 0)
        throw DomainError("exact_root_oracle: target norm must be positive");
    BigInt bound;
    mpz_root(bound.get_mpz_t(), n.get_mpz_t(), 2 * p);
    bound += 2; // ceil + 1

    for (BigInt a = -bound; a <= bound; ++a) {
        for (BigInt b = -bound; b <= bound; ++b) {
            QuadInt const root{a, b, target.d0};
            QuadInt const power = pow(root, p);
            if (power == target)
                return root;
        }
    }
    return std::nullopt;
}

TwinVerdict twin_prime_joint_check(std::int64_t m, std::int64_t p)
{
    if (!is_prime(std::uint64_t(p)) || !is_prime(std::uint64_t(p + 2)))
        throw DomainError("twin_prime_joint_check: " + std::to_string(p) + ", " +
                          std::to_string(p + 2) + " is not a twin prime pair");
    return {is_special_pth_power(m, p), is_special_pth_power(m, p + 2)};
}

} // namespace quadclass
