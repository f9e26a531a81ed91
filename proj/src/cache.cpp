#include "quadclass/cache.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

namespace quadclass {

namespace {

template <class Int>
bool parse_int(std::string_view s, Int & out)
{
    if (s.empty())
        return false;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

std::string tool_version()
{
#ifdef QUADCLASS_VERSION
    return QUADCLASS_VERSION;
#else
    return "dev";
#endif
}

std::string utc_timestamp()
{
    std::time_t const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_cache_line(CacheRecord const & r)
{
    std::ostringstream s;
    s << "disc=" << r.discriminant << " h=" << r.h << " version=" << r.tool_version
      << " computed_at=" << r.computed_at;
    return s.str();
}

std::optional<CacheRecord> parse_cache_line(std::string const & line)
{
    CacheRecord r;
    bool have_disc = false, have_h = false;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        auto const eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            return std::nullopt;
        std::string_view const key(token.data(), eq);
        std::string_view const value(token.data() + eq + 1, token.size() - eq - 1);
        if (key == "disc") {
            if (!parse_int(value, r.discriminant))
                return std::nullopt;
            have_disc = true;
        } else if (key == "h") {
            if (!parse_int(value, r.h))
                return std::nullopt;
            have_h = true;
        } else if (key == "version") {
            r.tool_version = value;
        } else if (key == "computed_at") {
            r.computed_at = value;
        }
        // unknown keys are ignored so newer writers stay readable
    }
    if (!have_disc || !have_h || r.discriminant >= 0 || r.h < 1 ||
        r.discriminant < -max_abs_discriminant)
        return std::nullopt;
    std::int64_t const mod4 = ((r.discriminant % 4) + 4) % 4;
    if (mod4 != 0 && mod4 != 1)
        return std::nullopt;
    return r;
}

ClassNumberCache::ClassNumberCache(std::filesystem::path file)
    : file_(std::move(file))
{
    std::ifstream in(*file_);
    if (!in)
        return; // created on first put
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#')
            continue;
        if (auto r = parse_cache_line(line))
            records_[r->discriminant] = std::move(*r);
        else
            warnings_.push_back(file_->string() + ":" + std::to_string(lineno) +
                                ": skipping corrupt cache line");
    }
}

std::optional<std::uint64_t> ClassNumberCache::get(std::int64_t discriminant) const
{
    std::shared_lock lock(mutex_);
    auto const it = records_.find(discriminant);
    if (it == records_.end())
        return std::nullopt;
    return it->second.h;
}

void ClassNumberCache::put(CacheRecord record)
{
    if (record.discriminant >= 0 || record.h < 1)
        throw DomainError("cache record needs D < 0 and h >= 1");
    if (record.computed_at.empty())
        record.computed_at = utc_timestamp();
    if (record.tool_version.empty())
        record.tool_version = tool_version();
    {
        std::unique_lock lock(mutex_);
        auto const it = records_.find(record.discriminant);
        if (it != records_.end() && it->second.h == record.h)
            return;
        records_[record.discriminant] = record;
    }
    append_line(record);
}

void ClassNumberCache::put(std::int64_t discriminant, std::uint64_t h)
{
    put(CacheRecord{discriminant, h, {}, {}});
}

void ClassNumberCache::erase(std::int64_t discriminant)
{
    std::unique_lock lock(mutex_);
    records_.erase(discriminant);
}

std::size_t ClassNumberCache::size() const
{
    std::shared_lock lock(mutex_);
    return records_.size();
}

std::vector<CacheRecord> ClassNumberCache::records() const
{
    std::vector<CacheRecord> out;
    {
        std::shared_lock lock(mutex_);
        out.reserve(records_.size());
        for (auto const & [d, r] : records_)
            out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](CacheRecord const & l, CacheRecord const & r) {
        return l.discriminant > r.discriminant;
    });
    return out;
}

void ClassNumberCache::append_line(CacheRecord const & r)
{
    if (!file_)
        return;
    std::lock_guard lock(file_mutex_);
    std::ofstream out(*file_, std::ios::app);
    if (!out)
        throw ResourceError("cannot append to cache file " + file_->string());
    out << format_cache_line(r) << '\n';
}

ClassNumberCache::AuditResult
ClassNumberCache::audit_sample(double fraction, std::uint64_t seed, EnumerationOptions const & options)
{
    AuditResult result;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution pick(std::clamp(fraction, 0.0, 1.0));
    for (CacheRecord const & r : records()) {
        if (-r.discriminant > options.disc_cap || !pick(rng))
            continue;
        ++result.sampled;
        std::uint64_t const fresh = enumerate_reduced(r.discriminant, options).h();
        if (fresh != r.h) {
            result.mismatches.emplace_back(r, fresh);
            erase(r.discriminant);
            put(r.discriminant, fresh);
        }
    }
    return result;
}

} // namespace quadclass
