#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "quadclass/verify.hpp"

namespace quadclass {

namespace {

using json = nlohmann::ordered_json;

json case_json(Case const & c)
{
    json params = json::object();
    for (auto const & [name, v] : c.params)
        params[name] = v;
    return json{
        {"params", std::move(params)},
        {"expected", c.expected},
        {"observed", c.observed},
        {"status", c.status == CaseStatus::fail ? "fail" : std::string(status_name(c.status))},
        {"note", c.note},
    };
}

std::string params_text(Case const & c)
{
    std::vector<std::string> parts;
    for (auto const & [name, v] : c.params)
        parts.push_back(fmt::format("{}={}", name, v));
    return fmt::format("{}", fmt::join(parts, " "));
}

} // namespace

std::string render_json(TheoremReport const & r)
{
    json pairs = json::array();
    for (auto const & [p, q] : r.grid.pairs)
        pairs.push_back(json::array({p, q}));

    json cases = json::array();
    json counterexamples = json::array();
    for (Case const & c : r.cases) {
        cases.push_back(case_json(c));
        if (c.status == CaseStatus::fail)
            counterexamples.push_back(case_json(c));
    }

    json doc{
        {"schema", report_schema},
        {"theorem", theorem_name(r.id)},
        {"claim", theorem_claim(r.id)},
        {"windowed", r.windowed},
        {"grid",
         {{"m", r.grid.m},
          {"exponents", r.grid.exponents},
          {"pairs", std::move(pairs)},
          {"n_max", r.grid.n_max},
          {"y_bound", r.grid.y_bound}}},
        {"caps",
         {{"disc_cap", r.caps.disc_cap},
          {"y_max", r.caps.y_max},
          {"p_max", r.caps.p_max},
          {"m_max", r.caps.m_max},
          {"factor_bits", r.caps.factor_bits}}},
        {"cases", std::move(cases)},
        {"summary",
         {{"pass", r.count(CaseStatus::pass)},
          {"fail", r.count(CaseStatus::fail)},
          {"skipped", r.count(CaseStatus::skipped)}}},
        {"counterexamples", std::move(counterexamples)},
        {"notes", r.notes},
    };
    return doc.dump(2) + "\n";
}

std::string render_table(TheoremReport const & r)
{
    std::vector<std::array<std::string, 4>> rows;
    rows.push_back({"params", "status", "observed", "note"});
    for (Case const & c : r.cases)
        rows.push_back({params_text(c), std::string(status_name(c.status)), c.observed, c.note});

    std::array<std::size_t, 4> width{};
    for (auto const & row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    }

    std::string out;
    out += fmt::format("{}: {}\n", theorem_name(r.id), theorem_claim(r.id));
    out += fmt::format("caps: |D| <= {}, y <= {}, p <= {}, m <= {}, factoring <= {} bits\n", r.caps.disc_cap,
                       r.caps.y_max, r.caps.p_max, r.caps.m_max, r.caps.factor_bits);
    if (!r.cases.empty())
        out += fmt::format("expected: {}\n", r.cases.front().expected);
    out += "\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        auto const & row = rows[k];
        std::string line = fmt::format("{:<{}}  {:<{}}  {:<{}}  {}", row[0], width[0], row[1], width[1],
                                       row[2], width[2], row[3]);
        line.erase(line.find_last_not_of(' ') + 1);
        out += line + "\n";
        if (k == 0)
            out += std::string(width[0] + width[1] + width[2] + 6 + width[3], '-') + "\n";
    }
    out += fmt::format("\nsummary: {} pass, {} fail, {} skipped\n", r.count(CaseStatus::pass),
                       r.count(CaseStatus::fail), r.count(CaseStatus::skipped));
    auto const bad = r.counterexamples();
    if (bad.empty())
        out += "counterexamples: none\n";
    for (Case const & c : bad)
        out += fmt::format("counterexample: {} ({})\n", params_text(c), c.observed);
    for (auto const & n : r.notes)
        out += fmt::format("note: {}\n", n);
    return out;
}

std::string render(TheoremReport const & report, ReportFormat format)
{
    return format == ReportFormat::json ? render_json(report) : render_table(report);
}

} // namespace quadclass
