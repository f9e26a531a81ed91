#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadclass/cache.hpp"
#include "quadclass/quadform.hpp"

namespace quadclass {

class UsageError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

enum class TheoremId
{
    t2,
    t3,
    t4,
    t5scan,
    t7,
    t9,
    cc,
    c6,
    c8,
    T2,
    lebesgue,
    bound_audit,
};

std::string_view theorem_name(TheoremId id);
TheoremId parse_theorem_id(std::string_view name); // throws UsageError
std::vector<TheoremId> all_theorems();

/// One-line statement of what the suite checks.
std::string_view theorem_claim(TheoremId id);

/*
 * Parameter ranges. `m` holds m (or U for T2), `exponents` holds p, t or k.
 * `pairs` is used by t9 only; n_max / y_bound by lebesgue only.
 */
struct Grid
{
    std::vector<std::int64_t> m;
    std::vector<std::int64_t> exponents;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    unsigned n_max = 9;
    std::uint64_t y_bound = 999;
};

Grid default_grid(TheoremId id);

struct Caps
{
    std::int64_t disc_cap = 120'000'000;
    unsigned y_max = 30;
    std::int64_t p_max = 13;
    std::int64_t m_max = 31;
    unsigned factor_bits = 96; // integers that must be factored are at most this wide
};

/// Throws ResourceError when |n| is wider than `bits`.
void require_factorable(BigInt const & n, unsigned bits);

/// Defaults overridden by QUADCLASS_DISC_CAP when set; throws UsageError on junk.
Caps caps_from_env();

enum class CaseStatus
{
    pass,
    fail,
    skipped,
};

std::string_view status_name(CaseStatus s);

struct Case
{
    std::vector<std::pair<std::string, std::int64_t>> params;
    std::string expected;
    std::string observed;
    CaseStatus status = CaseStatus::pass;
    std::string note;
};

struct TheoremReport
{
    TheoremId id = TheoremId::t2;
    Grid grid;
    Caps caps;
    bool windowed = false;
    std::vector<Case> cases; // sorted lexicographically by parameter values
    std::vector<std::string> notes;

    std::size_t count(CaseStatus s) const;
    std::vector<Case> counterexamples() const;
    bool ok() const { return count(CaseStatus::fail) == 0; }
};

struct VerifyOptions
{
    Caps caps;
    unsigned workers = 1;
};

/// Runs the suite on every grid point; points beyond a cap are "skipped".
TheoremReport verify(TheoremId id, Grid const & grid, VerifyOptions const & options,
                     ClassNumberCache & cache);

enum class ReportFormat
{
    table,
    json,
};

ReportFormat parse_format(std::string_view s); // throws UsageError

inline constexpr std::string_view report_schema = "quadclass.report/1";

std::string render_json(TheoremReport const & report);
std::string render_table(TheoremReport const & report);
std::string render(TheoremReport const & report, ReportFormat format);

/// "3,5,7", "3..25" or "3..25:2" (inclusive, optional step).
std::vector<std::int64_t> parse_int_list(std::string_view text);

/// "3,5" -> (3, 5)
std::pair<std::int64_t, std::int64_t> parse_pair(std::string_view text);

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn && fn);

} // namespace quadclass

#include "quadclass/detail/parallel.hpp"
