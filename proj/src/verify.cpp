#include "quadclass/verify.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <optional>

#include <fmt/format.h>

#include "quadclass/diophantine.hpp"
#include "quadclass/family.hpp"
#include "quadclass/pthpower.hpp"

namespace quadclass {

namespace {

struct Context
{
    VerifyOptions const & options;
    ClassNumberCache & cache;
    EnumerationOptions enumeration;
};

constexpr std::array<TheoremId, 12> theorem_ids = {
    TheoremId::t2, TheoremId::t3, TheoremId::t4, TheoremId::t5scan, TheoremId::t7, TheoremId::t9,
    TheoremId::cc, TheoremId::c6, TheoremId::c8, TheoremId::T2, TheoremId::lebesgue,
    TheoremId::bound_audit,
};

std::vector<std::int64_t> odd_range(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    for (std::int64_t v = lo | 1; v <= hi; v += 2)
        out.push_back(v);
    return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t t)
{
    std::vector<std::int64_t> out;
    for (auto const & pp : factorize(BigInt(t)).factors)
        out.push_back(to_i64(pp.prime));
    return out;
}

bool is_odd_prime(std::int64_t p)
{
    return p >= 3 && is_prime(std::uint64_t(p));
}

bool is_odd_prime_power(std::int64_t m)
{
    if (m < 3 || m % 2 == 0)
        return false;
    return factorize(BigInt(m)).factors.size() == 1;
}

bool is_odd_squarefree(std::int64_t t)
{
    return t >= 3 && t % 2 == 1 && is_squarefree(BigInt(t));
}

void skip(Case & c, std::string note)
{
    c.status = CaseStatus::skipped;
    c.note = std::move(note);
}

std::string hypothesis(std::string_view what)
{
    return fmt::format("hypothesis not met: {}", what);
}

bool within_factor_cap(Case & c, Context const & ctx, BigInt const & n)
{
    unsigned const bits = ctx.options.caps.factor_bits;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= bits)
        return true;
    skip(c, fmt::format("cap: {}-bit value to factor > {} bits", mpz_sizeinbase(n.get_mpz_t(), 2), bits));
    return false;
}

// Checks the m, prime-exponent and factoring caps; returns false (and marks skipped) if exceeded.
bool within_caps(Case & c, Context const & ctx, std::int64_t m, std::int64_t exponent)
{
    Caps const & caps = ctx.options.caps;
    if (m > caps.m_max) {
        skip(c, fmt::format("cap: m > {}", caps.m_max));
        return false;
    }
    for (std::int64_t p : prime_divisors(exponent)) {
        if (p > caps.p_max) {
            skip(c, fmt::format("cap: prime exponent {} > {}", p, caps.p_max));
            return false;
        }
    }
    return within_factor_cap(c, ctx, 2 * ipow(BigInt(m), static_cast<unsigned long>(exponent)));
}

std::optional<std::uint64_t> try_class_number(Case & c, Context const & ctx, FieldPoint const & field)
{
    try {
        return class_number(field, ctx.cache, ctx.enumeration);
    } catch (ResourceError const &) {
        skip(c, fmt::format("cap: |D_K| = {} > {}", BigInt(abs(field.disc)).get_str(),
                            ctx.enumeration.disc_cap));
        return std::nullopt;
    }
}

std::string describe_h(FieldPoint const & f, std::uint64_t h)
{
    return fmt::format("h={} D_K={}", h, f.disc.get_str());
}

void set_result(Case & c, bool ok)
{
    c.status = ok ? CaseStatus::pass : CaseStatus::fail;
}

std::string describe_class(std::optional<OrderPClass> const & cls)
{
    if (!cls)
        return "no order-p class found";
    return fmt::format("J={} order {}", to_string(cls->form), cls->order);
}

// --- suites -----------------------------------------------------------------

void eval_divisible_by_exponent(Case & c, Context const & ctx, std::int64_t m, std::int64_t t)
{
    if (!within_caps(c, ctx, m, t))
        return;
    FamilyPoint point = make_family_point(m, t);
    auto const h = try_class_number(c, ctx, point.field);
    if (!h)
        return;
    point.h = h;
    c.observed = describe_h(point.field, *h);
    set_result(c, divisibility_holds(t, *h));
}

void eval_t2(Case & c, Context const & ctx, std::int64_t m)
{
    c.params = {{"m", m}};
    c.expected = "3 | h";
    if (m < 3 || m % 2 == 0)
        return skip(c, hypothesis("m odd >= 3"));
    eval_divisible_by_exponent(c, ctx, m, 3);
}

void eval_t3(Case & c, Context const & ctx, std::int64_t m, std::int64_t p)
{
    c.params = {{"m", m}, {"p", p}};
    c.expected = fmt::format("{} | h", p);
    if (!is_odd_prime_power(m))
        return skip(c, hypothesis("m a power of an odd prime"));
    if (!is_odd_prime(p))
        return skip(c, hypothesis("p odd prime"));
    eval_divisible_by_exponent(c, ctx, m, p);
}

void eval_t4(Case & c, Context const & ctx, std::int64_t m, std::int64_t t)
{
    c.params = {{"m", m}, {"t", t}};
    c.expected = fmt::format("{} | h", t);
    if (!is_odd_prime_power(m))
        return skip(c, hypothesis("m a power of an odd prime"));
    if (!is_odd_squarefree(t))
        return skip(c, hypothesis("t odd square-free >= 3"));
    eval_divisible_by_exponent(c, ctx, m, t);
}

// Not a p-th power forces p | h through an explicit class of order p.
void eval_pth_and_class(Case & c, Context const & ctx, std::int64_t m, std::int64_t p,
                        bool power_allowed)
{
    if (!within_caps(c, ctx, m, p))
        return;
    FamilyPoint point = make_family_point(m, p);
    auto const h = try_class_number(c, ctx, point.field);
    if (!h)
        return;
    point.h = h;

    PthPowerVerdict const verdict = is_special_pth_power(m, p);
    if (verdict.is_pth_power) {
        c.observed = fmt::format("p-th power (root {}); {}", to_string(*verdict.witness),
                                 describe_h(point.field, *h));
        c.note = "exceptional prime";
        set_result(c, power_allowed);
        return;
    }
    auto const cls = construct_order_p_class(point);
    bool const divisible = *h % std::uint64_t(p) == 0;
    c.observed = fmt::format("not a p-th power; {}; {}", describe_h(point.field, *h), describe_class(cls));
    set_result(c, divisible && cls && cls->order == std::uint64_t(p));
}

void eval_t5scan(Case & c, Context const & ctx, std::int64_t m, std::int64_t p)
{
    c.params = {{"m", m}, {"p", p}};
    c.expected = "p | h unless p is exceptional";
    if (m < 3 || m % 2 == 0)
        return skip(c, hypothesis("m odd >= 3"));
    if (!is_odd_prime(p))
        return skip(c, hypothesis("p odd prime"));
    eval_pth_and_class(c, ctx, m, p, true);
}

void eval_t7(Case & c, Context const & ctx, std::int64_t m, std::int64_t p)
{
    c.params = {{"m", m}, {"p", p}};
    c.expected = "not a p-th power and p | h";
    if (m < 3 || m % 2 == 0)
        return skip(c, hypothesis("m odd >= 3"));
    if (!is_odd_prime(p))
        return skip(c, hypothesis("p odd prime"));
    if (!within_caps(c, ctx, m, p))
        return;
    if (!is_squarefree(BigInt(2 * ipow(BigInt(m), static_cast<unsigned long>(p)) - 1)))
        return skip(c, hypothesis("2m^p - 1 square-free"));
    eval_pth_and_class(c, ctx, m, p, false);
}

void eval_t9(Case & c, Context const & ctx, std::int64_t m, std::int64_t p, std::int64_t q)
{
    c.params = {{"m", m}, {"p", p}, {"q", q}};
    c.expected = "not both p-th powers; p | h(p) or q | h(q)";
    if (m < 3 || m % 2 == 0)
        return skip(c, hypothesis("m odd >= 3"));
    if (q != p + 2 || !is_odd_prime(p) || !is_odd_prime(q))
        return skip(c, hypothesis("p, p+2 twin primes"));
    if (!within_caps(c, ctx, m, q) || !within_caps(c, ctx, m, p))
        return;

    TwinVerdict const twin = twin_prime_joint_check(m, p);
    std::vector<std::string> parts;
    bool any_divisible = false;
    bool contradiction = false;
    bool any_computed = false;
    for (auto const & [exp, verdict] : {std::pair{p, &twin.lower}, std::pair{q, &twin.upper}}) {
        FamilyPoint point = make_family_point(m, exp);
        std::string const tag = verdict->is_pth_power ? "power" : "not power";
        std::optional<std::uint64_t> h;
        try {
            h = class_number(point.field, ctx.cache, ctx.enumeration);
        } catch (ResourceError const &) {
        }
        if (!h) {
            parts.push_back(fmt::format("{}: {}, h beyond cap", exp, tag));
            continue;
        }
        any_computed = true;
        bool const div = *h % std::uint64_t(exp) == 0;
        any_divisible = any_divisible || div;
        contradiction = contradiction || (!verdict->is_pth_power && !div);
        parts.push_back(fmt::format("{}: {}, h={}", exp, tag, *h));
    }
    c.observed = fmt::format("{}", fmt::join(parts, "; "));
    if (!twin.holds() || contradiction)
        return set_result(c, false);
    if (!any_computed)
        return skip(c, "cap: neither class number within the discriminant cap");
    set_result(c, any_divisible);
}

void eval_cc(Case & c, Context const & ctx, std::int64_t m, std::int64_t t)
{
    c.params = {{"m", m}, {"t", t}};
    c.expected = "t | h(Q(sqrt d)) and t | h(Q(sqrt(d+1)))";
    if (!is_odd_prime_power(m))
        return skip(c, hypothesis("m a power of an odd prime"));
    if (!is_odd_squarefree(t))
        return skip(c, hypothesis("t odd square-free >= 3"));
    if (!within_caps(c, ctx, m, t))
        return;
    BigInt const U = 2 * ipow(BigInt(m), static_cast<unsigned long>(t)) - 1;
    if (!within_factor_cap(c, ctx, 4 * ipow(U, static_cast<unsigned long>(t))))
        return;
    IizukaPair const pair = iizuka_pair(m, t);
    auto const h1 = try_class_number(c, ctx, pair.first);
    if (!h1)
        return;
    auto const h2 = try_class_number(c, ctx, pair.second);
    if (!h2)
        return;
    c.observed = fmt::format("d={}: {}; d+1: {}", pair.first.radicand.get_str(),
                             describe_h(pair.first, *h1), describe_h(pair.second, *h2));
    set_result(c, *h1 % std::uint64_t(t) == 0 && *h2 % std::uint64_t(t) == 0);
}

// Every prime p | t divides h, unless p is exceptional for m^(t/p).
void eval_c6(Case & c, Context const & ctx, std::int64_t m, std::int64_t t)
{
    c.params = {{"m", m}, {"t", t}};
    c.expected = "p | h for every non-exceptional prime p | t";
    if (m < 3 || m % 2 == 0)
        return skip(c, hypothesis("m odd >= 3"));
    if (t < 3 || t % 2 == 0)
        return skip(c, hypothesis("t odd >= 3"));
    if (!within_caps(c, ctx, m, t))
        return;
    FamilyPoint point = make_family_point(m, t);
    auto const h = try_class_number(c, ctx, point.field);
    if (!h)
        return;

    std::vector<std::string> parts;
    bool ok = true;
    for (std::int64_t p : prime_divisors(t)) {
        BigInt const mp = ipow(BigInt(m), static_cast<unsigned long>(t / p));
        if (!fits_i64(mp)) {
            parts.push_back(fmt::format("{}: m^(t/p) too large", p));
            continue;
        }
        bool const exceptional = is_special_pth_power(to_i64(mp), p).is_pth_power;
        bool const div = *h % std::uint64_t(p) == 0;
        ok = ok && (div || exceptional);
        parts.push_back(fmt::format("{}{}{}", p, div ? "|h" : "∤h", exceptional ? " (exceptional)" : ""));
    }
    c.observed = fmt::format("{}; {}", describe_h(point.field, *h), fmt::join(parts, ", "));
    set_result(c, ok);
}

void eval_c8(Case & c, Context const & ctx, std::int64_t m, std::int64_t t)
{
    c.params = {{"m", m}, {"t", t}};
    c.expected = "p | h for every prime p | t (t | h when t square-free)";
    if (m < 3 || m % 2 == 0)
        return skip(c, hypothesis("m odd >= 3"));
    if (t < 3 || t % 2 == 0)
        return skip(c, hypothesis("t odd >= 3"));
    if (!within_caps(c, ctx, m, t))
        return;
    if (!is_squarefree(BigInt(2 * ipow(BigInt(m), static_cast<unsigned long>(t)) - 1)))
        return skip(c, hypothesis("2m^t - 1 square-free"));
    eval_divisible_by_exponent(c, ctx, m, t);
}

void eval_T2(Case & c, Context const & ctx, std::int64_t U, std::int64_t k)
{
    c.params = {{"U", U}, {"k", k}};
    c.expected = "k | h(Q(sqrt(1-4U^k)))";
    if (U < 2)
        return skip(c, hypothesis("U >= 2"));
    if (k < 3 || k % 2 == 0)
        return skip(c, hypothesis("k odd >= 3"));
    if (!within_factor_cap(c, ctx, 4 * ipow(BigInt(U), static_cast<unsigned long>(k))))
        return;
    FieldPoint const field = louboutin_point(BigInt(U), k);
    auto const h = try_class_number(c, ctx, field);
    if (!h)
        return;
    c.observed = describe_h(field, *h);
    set_result(c, *h % std::uint64_t(k) == 0);
}

void eval_lebesgue(Case & c, Grid const & grid)
{
    c.params = {{"n_max", grid.n_max}, {"y_bound", std::int64_t(grid.y_bound)}};
    c.expected = "no x^2 + 1 = 2y^n with odd n, y >= 3";
    LebesgueReport const r = lebesgue_check(grid.n_max, grid.y_bound);
    std::vector<std::string> hits;
    for (auto const & hit : r.hits)
        hits.push_back(fmt::format("(x={},y={},n={})", hit.x.get_str(), hit.y, hit.n));
    c.observed = fmt::format("{} (y,n) pairs checked, {} solutions{}{}", r.checked, r.hits.size(),
                             hits.empty() ? "" : ": ", fmt::join(hits, " "));
    set_result(c, r.hits.empty());
}

std::string describe_solutions(std::vector<Solution> const & sols)
{
    std::vector<std::string> parts;
    for (auto const & s : sols)
        parts.push_back(fmt::format("({},{})", s.x.get_str(), s.y));
    return fmt::format("[{}]", fmt::join(parts, ","));
}

void eval_bound_audit(Case & c, Context const & ctx, std::int64_t m)
{
    unsigned const y_max = ctx.options.caps.y_max;
    c.params = {{"m", m}};
    c.expected = "(2m-1)x^2+1=2m^y: outside F,G,H,S; (1,1) found; N <= 2^(omega(m)-1)";
    if (m < 3 || m % 2 == 0)
        return skip(c, hypothesis("m odd >= 3"));
    if (m > ctx.options.caps.m_max)
        return skip(c, fmt::format("cap: m > {}", ctx.options.caps.m_max));

    BSInstance const inst = make_instance(2, BigInt(2 * m - 1), BigInt(1), BigInt(m));
    BoundAudit const audit = audit_bound(inst, y_max);
    bool const has_trivial = !audit.solutions.solutions.empty() &&
                             audit.solutions.solutions.front() == Solution{BigInt(1), 1};
    c.observed = fmt::format("solutions {} within y<={}; omega(m)={} bound={}; {}",
                             describe_solutions(audit.solutions.solutions), y_max, audit.omega_m,
                             audit.bound, audit.checked ? "outside F,G,H,S" : "exceptional");
    set_result(c, audit.checked && audit.pass && has_trivial);
}

void sort_cases(std::vector<Case> & cases)
{
    auto key = [](Case const & c) {
        std::vector<std::int64_t> k;
        for (auto const & [name, v] : c.params)
            k.push_back(v);
        return k;
    };
    std::stable_sort(cases.begin(), cases.end(),
                     [&](Case const & l, Case const & r) { return key(l) < key(r); });
}

} // namespace

std::string_view theorem_name(TheoremId id)
{
    switch (id) {
    case TheoremId::t2:
        return "t2";
    case TheoremId::t3:
        return "t3";
    case TheoremId::t4:
        return "t4";
    case TheoremId::t5scan:
        return "t5scan";
    case TheoremId::t7:
        return "t7";
    case TheoremId::t9:
        return "t9";
    case TheoremId::cc:
        return "cc";
    case TheoremId::c6:
        return "c6";
    case TheoremId::c8:
        return "c8";
    case TheoremId::T2:
        return "T2";
    case TheoremId::lebesgue:
        return "lebesgue";
    case TheoremId::bound_audit:
        return "bound_audit";
    }
    return "?";
}

TheoremId parse_theorem_id(std::string_view name)
{
    for (TheoremId id : theorem_ids) {
        if (theorem_name(id) == name)
            return id;
    }
    throw UsageError(fmt::format("unknown theorem id '{}'", name));
}

std::vector<TheoremId> all_theorems()
{
    return {theorem_ids.begin(), theorem_ids.end()};
}

std::string_view theorem_claim(TheoremId id)
{
    switch (id) {
    case TheoremId::t2:
        return "3 divides h(Q(sqrt(1-2m^3))) for every odd m >= 3";
    case TheoremId::t3:
        return "p divides h(Q(sqrt(1-2m^p))) for odd primes p and m a power of an odd prime";
    case TheoremId::t4:
        return "t divides h(Q(sqrt(1-2m^t))) for odd square-free t and m a power of an odd prime";
    case TheoremId::t5scan:
        return "for fixed odd m, p divides h(Q(sqrt(1-2m^p))) for all but finitely many primes p";
    case TheoremId::t7:
        return "p divides h(Q(sqrt(1-2m^p))) whenever 2m^p-1 is square-free";
    case TheoremId::t9:
        return "for twin primes p, p+2: p | h(Q(sqrt(1-2m^p))) or (p+2) | h(Q(sqrt(1-2m^(p+2))))";
    case TheoremId::cc:
        return "t divides the class numbers of both Q(sqrt(d)) and Q(sqrt(d+1)), d = 4(1-2m^t)^t";
    case TheoremId::c6:
        return "outside a finite exceptional set of primes, every p | t divides h(Q(sqrt(1-2m^t)))";
    case TheoremId::c8:
        return "every prime p | t divides h(Q(sqrt(1-2m^t))) whenever 2m^t-1 is square-free";
    case TheoremId::T2:
        return "Cl(Q(sqrt(1-4U^k))) has an element of order k (so k | h) for odd k, U >= 2";
    case TheoremId::lebesgue:
        return "x^2 + 1 = 2y^n has no solution with odd n > 1 and odd y > 1";
    case TheoremId::bound_audit:
        return "(2m-1)x^2 + 1 = 2m^y has at most 2^(omega(m)-1) solutions";
    }
    return "";
}

Grid default_grid(TheoremId id)
{
    Grid g;
    switch (id) {
    case TheoremId::t2:
        g.m = odd_range(3, 25);
        g.exponents = {3};
        break;
    case TheoremId::t3:
        g.m = {3, 5, 7, 9, 11, 13, 25, 27};
        g.exponents = {3, 5, 7};
        break;
    case TheoremId::t4:
        g.m = {3, 5, 7};
        g.exponents = {3, 5, 7, 15};
        break;
    case TheoremId::t5scan:
        g.m = {3};
        g.exponents = {3, 5, 7, 11, 13};
        break;
    case TheoremId::t7:
        g.m = odd_range(3, 15);
        g.exponents = {3, 5, 7};
        break;
    case TheoremId::t9:
        g.m = {3, 5, 9};
        g.pairs = {{3, 5}, {5, 7}, {11, 13}};
        break;
    case TheoremId::cc:
        g.m = {3, 5, 7};
        g.exponents = {3};
        break;
    case TheoremId::c6:
    case TheoremId::c8:
        g.m = {3, 5, 7, 9, 15};
        g.exponents = {3, 5, 9, 15};
        break;
    case TheoremId::T2:
        g.m = {2, 3, 4, 5, 53};
        g.exponents = {3, 5, 7};
        break;
    case TheoremId::lebesgue:
        break;
    case TheoremId::bound_audit:
        g.m = odd_range(3, 31);
        break;
    }
    return g;
}

void require_factorable(BigInt const & n, unsigned bits)
{
    std::size_t const width = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (width > bits)
        throw ResourceError(fmt::format("{}-bit value to factor exceeds the factoring cap of {} bits", width, bits));
}

Caps caps_from_env()
{
    Caps caps;
    if (char const * env = std::getenv("QUADCLASS_DISC_CAP"); env && *env) {
        std::string_view const s(env);
        std::int64_t v = 0;
        auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || v <= 0)
            throw UsageError(fmt::format("QUADCLASS_DISC_CAP must be a positive integer, got '{}'", s));
        caps.disc_cap = v;
    }
    return caps;
}

std::string_view status_name(CaseStatus s)
{
    switch (s) {
    case CaseStatus::pass:
        return "pass";
    case CaseStatus::fail:
        return "FAIL";
    case CaseStatus::skipped:
        return "skipped";
    }
    return "?";
}

std::size_t TheoremReport::count(CaseStatus s) const
{
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [s](Case const & c) { return c.status == s; }));
}

std::vector<Case> TheoremReport::counterexamples() const
{
    std::vector<Case> out;
    std::copy_if(cases.begin(), cases.end(), std::back_inserter(out),
                 [](Case const & c) { return c.status == CaseStatus::fail; });
    return out;
}

TheoremReport verify(TheoremId id, Grid const & grid, VerifyOptions const & options, ClassNumberCache & cache)
{
    if (options.caps.disc_cap <= 0 || options.caps.y_max < 1 || options.caps.p_max < 1 ||
        options.caps.m_max < 1 || options.caps.factor_bits < 1)
        throw UsageError("caps must be positive");

    TheoremReport report;
    report.id = id;
    report.grid = grid;
    report.caps = options.caps;

    // (m, exponent) grid shared by most suites
    std::vector<std::pair<std::int64_t, std::int64_t>> points;
    for (std::int64_t m : grid.m) {
        for (std::int64_t e : grid.exponents)
            points.emplace_back(m, e);
    }

    // threads left over after one per grid point go to the enumeration itself
    std::size_t const outer = std::max<std::size_t>({points.size(), grid.m.size(), 1});
    unsigned const inner = std::max(1u, options.workers / static_cast<unsigned>(
                                            std::min<std::size_t>(outer, std::max(options.workers, 1u))));
    Context const ctx{options, cache, EnumerationOptions{options.caps.disc_cap, inner}};

    auto run_points = [&](auto && eval) {
        if (points.empty())
            throw UsageError(fmt::format("{}: grid is empty", theorem_name(id)));
        report.cases.resize(points.size());
        parallel_for(points.size(), options.workers,
                     [&](std::size_t i) { eval(report.cases[i], points[i].first, points[i].second); });
    };

    switch (id) {
    case TheoremId::t2:
        if (grid.m.empty())
            throw UsageError("t2: grid is empty");
        report.cases.resize(grid.m.size());
        parallel_for(grid.m.size(), options.workers,
                     [&](std::size_t i) { eval_t2(report.cases[i], ctx, grid.m[i]); });
        break;
    case TheoremId::t3:
        run_points([&](Case & c, std::int64_t m, std::int64_t p) { eval_t3(c, ctx, m, p); });
        break;
    case TheoremId::t4:
        run_points([&](Case & c, std::int64_t m, std::int64_t t) { eval_t4(c, ctx, m, t); });
        break;
    case TheoremId::t5scan:
        report.windowed = true;
        run_points([&](Case & c, std::int64_t m, std::int64_t p) { eval_t5scan(c, ctx, m, p); });
        break;
    case TheoremId::t7:
        run_points([&](Case & c, std::int64_t m, std::int64_t p) { eval_t7(c, ctx, m, p); });
        break;
    case TheoremId::t9: {
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> triples;
        for (std::int64_t m : grid.m) {
            for (auto const & [p, q] : grid.pairs)
                triples.emplace_back(m, p, q);
        }
        if (triples.empty())
            throw UsageError("t9: grid is empty (need --m and --pairs)");
        report.cases.resize(triples.size());
        parallel_for(triples.size(), options.workers, [&](std::size_t i) {
            auto const [m, p, q] = triples[i];
            eval_t9(report.cases[i], ctx, m, p, q);
        });
        break;
    }
    case TheoremId::cc:
        run_points([&](Case & c, std::int64_t m, std::int64_t t) { eval_cc(c, ctx, m, t); });
        break;
    case TheoremId::c6:
        report.windowed = true;
        run_points([&](Case & c, std::int64_t m, std::int64_t t) { eval_c6(c, ctx, m, t); });
        break;
    case TheoremId::c8:
        run_points([&](Case & c, std::int64_t m, std::int64_t t) { eval_c8(c, ctx, m, t); });
        break;
    case TheoremId::T2:
        run_points([&](Case & c, std::int64_t U, std::int64_t k) { eval_T2(c, ctx, U, k); });
        break;
    case TheoremId::lebesgue:
        report.windowed = true;
        if (grid.n_max < 3 || grid.y_bound < 3)
            throw UsageError("lebesgue: n_max and y_bound must be >= 3");
        report.cases.resize(1);
        eval_lebesgue(report.cases[0], grid);
        break;
    case TheoremId::bound_audit:
        report.windowed = true;
        if (grid.m.empty())
            throw UsageError("bound_audit: grid is empty");
        report.cases.resize(grid.m.size());
        parallel_for(grid.m.size(), options.workers,
                     [&](std::size_t i) { eval_bound_audit(report.cases[i], ctx, grid.m[i]); });
        break;
    }

    sort_cases(report.cases);

    if (id == TheoremId::t5scan) {
        std::vector<std::string> exceptional, divisibility_failures;
        for (Case const & c : report.cases) {
            std::string const tag = fmt::format("(m={},p={})", c.params[0].second, c.params[1].second);
            if (c.note == "exceptional prime")
                exceptional.push_back(tag);
            if (c.status == CaseStatus::fail)
                divisibility_failures.push_back(tag);
        }
        report.notes.push_back(fmt::format("observed exceptional primes: {{{}}}", fmt::join(exceptional, ", ")));
        report.notes.push_back(fmt::format("primes with p not dividing h: {{{}}}",
                                           fmt::join(divisibility_failures, ", ")));
    }
    if (report.windowed)
        report.notes.push_back("windowed evidence: only the listed grid was checked; "
                               "the asymptotic statement is not proven by this run");
    return report;
}

ReportFormat parse_format(std::string_view s)
{
    if (s == "table")
        return ReportFormat::table;
    if (s == "json")
        return ReportFormat::json;
    throw UsageError(fmt::format("unknown format '{}' (expected table or json)", s));
}

std::vector<std::int64_t> parse_int_list(std::string_view text)
{
    auto parse_one = [&](std::string_view s) {
        std::int64_t v = 0;
        auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            throw UsageError(fmt::format("invalid integer '{}' in '{}'", s, text));
        return v;
    };

    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t const comma = text.find(',', start);
        std::string_view const tok =
            text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (auto const dots = tok.find(".."); dots != std::string_view::npos) {
            std::string_view rest = tok.substr(dots + 2);
            std::int64_t step = 1;
            if (auto const colon = rest.find(':'); colon != std::string_view::npos) {
                step = parse_one(rest.substr(colon + 1));
                rest = rest.substr(0, colon);
            }
            std::int64_t const lo = parse_one(tok.substr(0, dots));
            std::int64_t const hi = parse_one(rest);
            if (step <= 0 || hi < lo || (hi - lo) / step > 1'000'000)
                throw UsageError(fmt::format("invalid range '{}'", tok));
            for (std::int64_t v = lo; v <= hi; v += step)
                out.push_back(v);
        } else {
            out.push_back(parse_one(tok));
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::pair<std::int64_t, std::int64_t> parse_pair(std::string_view text)
{
    auto const v = parse_int_list(text);
    if (v.size() != 2)
        throw UsageError(fmt::format("expected a pair like 3,5, got '{}'", text));
    return {v[0], v[1]};
}

} // namespace quadclass
