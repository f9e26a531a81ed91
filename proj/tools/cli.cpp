#include "cli.hpp"

#include <cstdlib>
#include <memory>
#include <ostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "quadclass/diophantine.hpp"
#include "quadclass/family.hpp"
#include "quadclass/kernels/divisor_scan.hpp"
#include "quadclass/pthpower.hpp"
#include "quadclass/verify.hpp"

namespace quadclass {

namespace {

using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_counterexample = 1;
constexpr int exit_error = 2;

struct Globals
{
    std::string format = "table";
    std::int64_t cap = 0;
    std::string cache_path;
    bool no_cache = false;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string kernel;
    double audit_fraction = 0.05;
    unsigned factor_bits = 0;
};

BigInt parse_big(std::string const & text, char const * what)
{
    try {
        return BigInt(text);
    } catch (std::invalid_argument const &) {
        throw UsageError(fmt::format("{}: not an integer: '{}'", what, text));
    }
}

struct Session
{
    Globals const & g;
    std::ostream & out;
    std::ostream & err;
    ReportFormat format = ReportFormat::table;
    Caps caps;
    std::unique_ptr<ClassNumberCache> cache;

    EnumerationOptions enumeration() const { return {caps.disc_cap, g.workers}; }

    void open()
    {
        format = parse_format(g.format);
        caps = caps_from_env();
        if (g.cap != 0) {
            if (g.cap < 0)
                throw UsageError("--cap must be positive");
            caps.disc_cap = g.cap;
        }
        if (g.factor_bits != 0)
            caps.factor_bits = g.factor_bits;
        if (!g.kernel.empty()) {
            try {
                kernels::set_active_isa(kernels::parse_isa(g.kernel));
            } catch (std::invalid_argument const & e) {
                throw UsageError(e.what());
            }
        }

        std::string path = g.cache_path;
        if (path.empty()) {
            if (char const * env = std::getenv("QUADCLASS_CACHE"))
                path = env;
        }
        cache = (path.empty() || g.no_cache) ? std::make_unique<ClassNumberCache>()
                                             : std::make_unique<ClassNumberCache>(path);
        for (auto const & w : cache->warnings())
            err << "warning: " << w << '\n';

        auto const audit = cache->audit_sample(g.audit_fraction, std::random_device{}(), enumeration());
        for (auto const & [record, fresh] : audit.mismatches)
            err << fmt::format("warning: cache entry disc={} h={} disagrees with enumeration (h={}); replaced\n",
                               record.discriminant, record.h, fresh);
    }
};

// --- classnum / classgroup --------------------------------------------------

struct FieldArgs
{
    std::string d0, disc, radicand;
};

void add_field_options(CLI::App * cmd, FieldArgs & a)
{
    auto * g = cmd->add_option_group("field");
    g->add_option("--d0", a.d0, "negative square-free integer");
    g->add_option("--disc", a.disc, "negative discriminant (0 or 1 mod 4)");
    g->add_option("--radicand", a.radicand, "any negative integer d, field Q(sqrt d)");
    g->require_option(1);
}

// Discriminant to enumerate, plus a description prefix.
std::pair<std::int64_t, json> resolve_field(FieldArgs const & a, Session const & s)
{
    json info = json::object();
    BigInt disc;
    if (!a.disc.empty()) {
        disc = parse_big(a.disc, "--disc");
    } else {
        BigInt const value = !a.d0.empty() ? parse_big(a.d0, "--d0") : parse_big(a.radicand, "--radicand");
        if (sgn(value) >= 0)
            throw UsageError("the field radicand must be negative");
        require_factorable(value, s.caps.factor_bits);
        if (!a.d0.empty() && !is_squarefree(value))
            throw UsageError(fmt::format("--d0 {} is not square-free", value.get_str()));
        FieldPoint const f = make_field_point(value);
        if (a.d0.empty()) {
            info["d"] = f.radicand.get_str();
            info["s"] = f.s().get_str();
        }
        info["d0"] = f.d0().get_str();
        disc = f.disc;
    }
    if (!fits_i64(disc) || -disc > s.caps.disc_cap)
        throw ResourceError(fmt::format("|D| = {} exceeds the discriminant cap {} (QUADCLASS_DISC_CAP)",
                                        BigInt(abs(disc)).get_str(), s.caps.disc_cap));
    std::int64_t const D = to_i64(disc);
    require_discriminant(D);
    info[a.disc.empty() ? "D_K" : "D"] = D;
    return {D, info};
}

void print_info(Session & s, json const & info)
{
    if (s.format == ReportFormat::json) {
        s.out << info.dump(2) << '\n';
        return;
    }
    std::vector<std::string> parts;
    for (auto const & [k, v] : info.items()) {
        if (v.is_primitive())
            parts.push_back(fmt::format("{}={}", k, v.is_string() ? v.get<std::string>() : v.dump()));
    }
    s.out << fmt::format("{}", fmt::join(parts, " ")) << '\n';
}

int run_classnum(Session & s, FieldArgs const & a)
{
    auto [D, info] = resolve_field(a, s);
    std::uint64_t h = 0;
    if (auto const cached = s.cache->get(D)) {
        h = *cached;
    } else {
        h = enumerate_reduced(D, s.enumeration()).h();
        s.cache->put(D, h);
    }
    info["h"] = h;
    print_info(s, info);
    return exit_ok;
}

int run_classgroup(Session & s, FieldArgs const & a)
{
    auto [D, info] = resolve_field(a, s);
    ClassGroup const group = enumerate_reduced(D, s.enumeration());
    s.cache->put(D, group.h());
    info["h"] = group.h();

    json forms = json::array();
    for (QuadForm const & f : group.reduced_forms)
        forms.push_back({{"a", f.a}, {"b", f.b}, {"c", f.c}, {"order", order_in_class_group(f)}});
    info["forms"] = forms;

    print_info(s, info);
    if (s.format == ReportFormat::table) {
        for (auto const & f : forms)
            s.out << fmt::format("  ({},{},{})  order {}\n", f["a"].get<std::int64_t>(),
                                 f["b"].get<std::int64_t>(), f["c"].get<std::int64_t>(),
                                 f["order"].get<std::uint64_t>());
    }
    return exit_ok;
}

// --- pth-power --------------------------------------------------------------

int run_pth_power(Session & s, std::int64_t m, std::int64_t p, bool oracle)
{
    if (m >= 2 && p >= 1)
        require_factorable(2 * ipow(BigInt(m), static_cast<unsigned long>(p)), s.caps.factor_bits);
    TargetElement const target = target_element(m, p);
    PthPowerVerdict const v = is_special_pth_power(m, p);

    json info{
        {"m", m},
        {"p", p},
        {"d0", target.alpha.d0.get_str()},
        {"s", target.s.get_str()},
        {"target", to_string(target.scaled())},
        {"verdict", v.is_pth_power ? "PthPower" : "NotPthPower"},
        {"candidates", v.checked_candidates},
    };
    if (v.witness)
        info["root"] = to_string(*v.witness);

    int code = exit_ok;
    if (oracle) {
        QuadInt const t = target.scaled();
        bool const found = exact_root_oracle(t, static_cast<unsigned long>(p)).has_value() ||
                           exact_root_oracle(-t, static_cast<unsigned long>(p)).has_value();
        info["oracle"] = found ? "PthPower" : "NotPthPower";
        info["agree"] = found == v.is_pth_power;
        if (found != v.is_pth_power)
            code = exit_counterexample;
    }
    print_info(s, info);
    return code;
}

// --- dioph ------------------------------------------------------------------

std::string solutions_text(std::vector<Solution> const & sols)
{
    std::vector<std::string> parts;
    for (auto const & x : sols)
        parts.push_back(fmt::format("({},{})", x.x.get_str(), x.y));
    return fmt::format("[{}]", fmt::join(parts, ","));
}

struct DiophArgs
{
    std::int64_t lambda_sq = 1;
    std::string d1, d2, m;
    unsigned y_max = 30;
};

int run_dioph(Session & s, DiophArgs const & a)
{
    BSInstance const inst =
        make_instance(a.lambda_sq, parse_big(a.d1, "--d1"), parse_big(a.d2, "--d2"), parse_big(a.m, "--m"));
    BoundAudit const audit = audit_bound(inst, a.y_max);
    Classification const & cls = audit.solutions.families;

    std::vector<std::string> fams;
    if (cls.f)
        fams.push_back(fmt::format("F(i={},e={:+d})", cls.f->i, cls.f->epsilon));
    if (cls.g)
        fams.push_back(fmt::format("G(r={})", *cls.g));
    if (cls.h)
        fams.push_back(fmt::format("H(r={},s={})", cls.h->r, cls.h->s.get_str()));
    if (cls.s)
        fams.push_back("S");

    std::string const verdict = !audit.checked ? "not applicable" : audit.pass ? "pass" : "FAIL";

    if (s.format == ReportFormat::json) {
        json sols = json::array();
        for (auto const & x : audit.solutions.solutions)
            sols.push_back({{"x", x.x.get_str()}, {"y", x.y}});
        json doc{
            {"instance", inst.describe()},
            {"y_max", a.y_max},
            {"solutions", sols},
            {"families", fams},
            {"omega_m", audit.omega_m},
            {"bound", audit.bound},
            {"bound_audit", verdict},
        };
        s.out << doc.dump(2) << '\n';
    } else {
        s.out << fmt::format("instance: {}\n", inst.describe());
        s.out << fmt::format("solutions (y <= {}): {}\n", a.y_max, solutions_text(audit.solutions.solutions));
        s.out << fmt::format("families: {}\n", fams.empty() ? "none" : fmt::format("{}", fmt::join(fams, " ")));
        s.out << fmt::format("bound audit: N={} omega(m)={} bound={} {}\n", audit.solutions.solutions.size(),
                             audit.omega_m, audit.bound, verdict);
    }
    return audit.checked && !audit.pass ? exit_counterexample : exit_ok;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs
{
    std::vector<std::string> ids;
    std::string m, exponents;
    std::vector<std::string> pairs;
    unsigned n_max = 0;
    std::uint64_t y_bound = 0;
    unsigned y_max = 0;
    std::int64_t p_max = 0, m_max = 0;
};

int run_verify(Session & s, VerifyArgs const & a)
{
    std::vector<TheoremId> ids;
    for (auto const & name : a.ids) {
        if (name == "all") {
            auto const every = all_theorems();
            ids.insert(ids.end(), every.begin(), every.end());
        } else {
            ids.push_back(parse_theorem_id(name));
        }
    }

    VerifyOptions opts{s.caps, s.g.workers};
    if (a.y_max)
        opts.caps.y_max = a.y_max;
    if (a.p_max)
        opts.caps.p_max = a.p_max;
    if (a.m_max)
        opts.caps.m_max = a.m_max;

    bool ok = true;
    json reports = json::array();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        Grid grid = default_grid(ids[i]);
        if (!a.m.empty())
            grid.m = parse_int_list(a.m);
        if (!a.exponents.empty())
            grid.exponents = parse_int_list(a.exponents);
        if (!a.pairs.empty()) {
            grid.pairs.clear();
            for (auto const & p : a.pairs)
                grid.pairs.push_back(parse_pair(p));
        }
        if (a.n_max)
            grid.n_max = a.n_max;
        if (a.y_bound)
            grid.y_bound = a.y_bound;

        TheoremReport const report = verify(ids[i], grid, opts, *s.cache);
        ok = ok && report.ok();
        if (s.format == ReportFormat::json) {
            reports.push_back(json::parse(render_json(report)));
        } else {
            if (i > 0)
                s.out << '\n';
            s.out << render_table(report);
        }
    }
    if (s.format == ReportFormat::json)
        s.out << (reports.size() == 1 ? reports[0] : reports).dump(2) << '\n';
    return ok ? exit_ok : exit_counterexample;
}

// --- iizuka / scan ----------------------------------------------------------

int run_iizuka(Session & s, std::int64_t m, std::int64_t t)
{
    if (m >= 2 && t >= 1) {
        BigInt const U = 2 * ipow(BigInt(m), static_cast<unsigned long>(t)) - 1;
        require_factorable(4 * ipow(U, static_cast<unsigned long>(t)), s.caps.factor_bits);
    }
    IizukaPair const pair = iizuka_pair(m, t);
    auto const opts = s.enumeration();
    std::uint64_t const h1 = class_number(pair.first, *s.cache, opts);
    std::uint64_t const h2 = class_number(pair.second, *s.cache, opts);
    bool const ok = h1 % std::uint64_t(t) == 0 && h2 % std::uint64_t(t) == 0;

    auto side = [](FieldPoint const & f, std::uint64_t h) {
        return json{{"radicand", f.radicand.get_str()}, {"d0", f.d0().get_str()}, {"D_K", f.disc.get_str()}, {"h", h}};
    };
    if (s.format == ReportFormat::json) {
        json doc{{"m", m},   {"t", t}, {"U", pair.U.get_str()}, {"d", side(pair.first, h1)}, {"d+1", side(pair.second, h2)},
                 {"pass", ok}};
        s.out << doc.dump(2) << '\n';
    } else {
        s.out << fmt::format("m={} t={} U={}\n", m, t, pair.U.get_str());
        s.out << fmt::format("d   = {}  d0={} D_K={} h={}\n", pair.first.radicand.get_str(),
                             pair.first.d0().get_str(), pair.first.disc.get_str(), h1);
        s.out << fmt::format("d+1 = {}  d0={} D_K={} h={}\n", pair.second.radicand.get_str(),
                             pair.second.d0().get_str(), pair.second.disc.get_str(), h2);
        s.out << fmt::format("{} divides both: {}\n", t, ok ? "yes" : "NO");
    }
    return ok ? exit_ok : exit_counterexample;
}

int run_scan(Session & s, std::int64_t m, std::string const & exponents_text)
{
    std::vector<std::int64_t> const exponents = parse_int_list(exponents_text);
    bool const prime_power_m = factorize(BigInt(m)).factors.size() == 1;
    bool ok = true;
    json rows = json::array();
    for (std::int64_t t : exponents) {
        if (m >= 2 && t >= 1)
            require_factorable(2 * ipow(BigInt(m), static_cast<unsigned long>(t)), s.caps.factor_bits);
        FamilyPoint point = make_family_point(m, t);
        json row{{"t", t}, {"d", point.d().get_str()}, {"d0", point.d0().get_str()}, {"D_K", point.disc().get_str()}};
        try {
            std::uint64_t const h = class_number(point, *s.cache, s.enumeration());
            bool const div = divisibility_holds(t, h);
            bool const squarefree_t = is_squarefree(BigInt(t));
            bool const claimed = (prime_power_m && squarefree_t) ||
                                 is_squarefree(BigInt(2 * ipow(BigInt(m), static_cast<unsigned long>(t)) - 1));
            row["h"] = h;
            row["divisible"] = div;
            ok = ok && (div || !claimed);
        } catch (ResourceError const &) {
            row["h"] = nullptr;
        }
        rows.push_back(row);
    }
    std::size_t const distinct = distinct_fields_count(m, exponents);

    if (s.format == ReportFormat::json) {
        s.out << json{{"m", m}, {"points", rows}, {"distinct_fields", distinct}}.dump(2) << '\n';
    } else {
        for (auto const & r : rows) {
            std::string const h = r["h"].is_null() ? "beyond cap" : std::to_string(r["h"].get<std::uint64_t>());
            std::string const div = r["h"].is_null() ? "-" : r["divisible"].get<bool>() ? "yes" : "no";
            s.out << fmt::format("t={:<3} d0={:<24} D_K={:<26} h={:<12} t|h: {}\n", r["t"].get<std::int64_t>(),
                                 r["d0"].get<std::string>(), r["D_K"].get<std::string>(), h, div);
        }
        s.out << fmt::format("distinct fields: {} of {}\n", distinct, exponents.size());
    }
    return ok ? exit_ok : exit_counterexample;
}

} // namespace

int cli_main(int argc, char const * const * argv, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Class numbers of imaginary quadratic fields and divisibility checks", "quadclass"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", tool_version());

    Globals g;
    app.add_option("--format", g.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--cap", g.cap, "discriminant cap |D| (default 1.2e8, env QUADCLASS_DISC_CAP)");
    app.add_option("--cache", g.cache_path, "class-number cache file (env QUADCLASS_CACHE)");
    app.add_flag("--no-cache", g.no_cache, "do not read or write the cache file");
    app.add_option("--workers", g.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--kernel", g.kernel, "divisor-scan kernel: scalar, avx2, neon");
    app.add_option("--factor-bits", g.factor_bits, "largest integer width to factor (default 96)")
        ->check(CLI::Range(8u, 4096u));
    app.add_option("--audit-fraction", g.audit_fraction, "fraction of cache entries re-verified per run")
        ->check(CLI::Range(0.0, 1.0));

    FieldArgs classnum_args, classgroup_args;
    auto * classnum = app.add_subcommand("classnum", "class number of an imaginary quadratic field or order");
    add_field_options(classnum, classnum_args);
    auto * classgroup = app.add_subcommand("classgroup", "reduced forms and their orders");
    add_field_options(classgroup, classgroup_args);

    std::int64_t pp_m = 0, pp_p = 0;
    bool pp_oracle = false;
    auto * pth = app.add_subcommand("pth-power", "is 2^((p-1)/2)(1 + sqrt(1-2m^p)) a p-th power?");
    pth->add_option("--m", pp_m)->required();
    pth->add_option("--p", pp_p)->required();
    pth->add_flag("--oracle", pp_oracle, "cross-check with the unpruned root search");

    DiophArgs da;
    auto * dioph = app.add_subcommand("dioph", "solve D1 x^2 + D2 = lambda^2 m^y");
    dioph->add_option("--lambda-sq", da.lambda_sq)->required();
    dioph->add_option("--d1", da.d1)->required();
    dioph->add_option("--d2", da.d2)->required();
    dioph->add_option("--m", da.m)->required();
    dioph->add_option("--ymax", da.y_max)->check(CLI::Range(1u, 100000u));

    VerifyArgs va;
    auto * ver = app.add_subcommand("verify", "run a theorem suite over a parameter grid");
    ver->add_option("theorem", va.ids, "suite id(s) or 'all'")->required();
    ver->add_option("--m,--U", va.m, "list such as 3,5,7 or 3..25:2");
    ver->add_option("--exponents,--p,--t,--k", va.exponents, "list such as 3,5,7");
    ver->add_option("--pairs", va.pairs, "twin prime pairs such as 3,5 5,7")->expected(1, -1);
    ver->add_option("--n-max", va.n_max);
    ver->add_option("--y-bound", va.y_bound);
    ver->add_option("--y-max", va.y_max, "y cap for Diophantine scans (default 30)");
    ver->add_option("--p-max", va.p_max, "largest prime exponent (default 13)");
    ver->add_option("--m-max", va.m_max, "largest m (default 31)");

    std::int64_t iz_m = 0, iz_t = 0;
    auto * iizuka = app.add_subcommand("iizuka", "t | h for both Q(sqrt d) and Q(sqrt(d+1)), d = 4(1-2m^t)^t");
    iizuka->add_option("--m", iz_m)->required();
    iizuka->add_option("--t", iz_t)->required();

    std::int64_t sc_m = 0;
    std::string sc_exponents = "3..13:2";
    auto * scan = app.add_subcommand("scan", "class numbers along Q(sqrt(1-2m^t)) for a range of t");
    scan->add_option("--m", sc_m)->required();
    scan->add_option("--exponents,--t", sc_exponents);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        Session s{g, out, err, ReportFormat::table, {}, nullptr};
        s.open();
        if (*classnum)
            return run_classnum(s, classnum_args);
        if (*classgroup)
            return run_classgroup(s, classgroup_args);
        if (*pth)
            return run_pth_power(s, pp_m, pp_p, pp_oracle);
        if (*dioph)
            return run_dioph(s, da);
        if (*ver)
            return run_verify(s, va);
        if (*iizuka)
            return run_iizuka(s, iz_m, iz_t);
        if (*scan)
            return run_scan(s, sc_m, sc_exponents);
    } catch (std::exception const & e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}

} // namespace quadclass
