#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include "quadclass/cache.hpp"

using namespace quadclass;
namespace fs = std::filesystem;

namespace {

struct TempFile
{
    fs::path path;
    explicit TempFile(std::string const & name)
        : path(fs::temp_directory_path() / (name + "-" + std::to_string(::getpid()) + ".cache"))
    {
        fs::remove(path);
    }
    ~TempFile() { fs::remove(path); }
};

std::size_t line_count(fs::path const & p)
{
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
        ++n;
    return n;
}

} // namespace

TEST_CASE("put and get")
{
    ClassNumberCache cache;
    cache.put(-212, 6);
    CHECK(cache.get(-212) == 6u);
    CHECK_FALSE(cache.get(-996).has_value());
    cache.put(-212, 6);
    CHECK(cache.size() == 1);
    CHECK_THROWS_AS(cache.put(-212, 0), DomainError);
    CHECK_THROWS_AS(cache.put(5, 1), DomainError);
}

TEST_CASE("line format round-trip")
{
    CacheRecord const r{.discriminant = -212, .h = 6, .computed_at = "2026-01-01T00:00:00Z", .tool_version = "0.3.0"};
    std::string const line = format_cache_line(r);
    CHECK(line == "disc=-212 h=6 version=0.3.0 computed_at=2026-01-01T00:00:00Z");
    auto const back = parse_cache_line(line);
    REQUIRE(back.has_value());
    CHECK(back->discriminant == -212);
    CHECK(back->h == 6);
    CHECK(back->tool_version == "0.3.0");
    CHECK(back->computed_at == r.computed_at);

    CHECK(parse_cache_line("h=6 disc=-212 extra=1").has_value());
    CHECK_FALSE(parse_cache_line("disc=-212").has_value());
    CHECK_FALSE(parse_cache_line("disc=-212 h=0").has_value());
    CHECK_FALSE(parse_cache_line("disc=212 h=1").has_value());
    CHECK_FALSE(parse_cache_line("disc=-5 h=1").has_value());
    CHECK_FALSE(parse_cache_line("disc=-21x h=1").has_value());
    CHECK_FALSE(parse_cache_line("garbage").has_value());
    CHECK_FALSE(parse_cache_line("").has_value());
}

TEST_CASE("persistence across instances")
{
    TempFile f("persist");
    {
        ClassNumberCache cache(f.path);
        cache.put(-212, 6);
        cache.put(-996, 12);
        cache.put(-212, 6); // idempotent: no extra line
    }
    CHECK(line_count(f.path) == 2);
    ClassNumberCache again(f.path);
    CHECK(again.get(-212) == 6u);
    CHECK(again.get(-996) == 12u);
    CHECK(again.warnings().empty());
    auto const recs = again.records();
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].discriminant == -212);
    CHECK(recs[0].tool_version == tool_version());
}

TEST_CASE("last write wins and corrupt lines are skipped")
{
    TempFile f("corrupt");
    {
        std::ofstream out(f.path);
        out << "disc=-212 h=5 version=x computed_at=t\n"
            << "this is not a record\n"
            << "disc=-212 h=6 version=x computed_at=t\n"
            << "# comment\n"
            << "disc=-996 h=\n"
            << "\n"
            << "disc=-31 h=3 version=x computed_at=t\n";
    }
    ClassNumberCache cache(f.path);
    CHECK(cache.get(-212) == 6u);
    CHECK(cache.get(-31) == 3u);
    CHECK_FALSE(cache.get(-996).has_value());
    CHECK(cache.warnings().size() == 2);
}

TEST_CASE("audit repairs wrong entries")
{
    TempFile f("audit");
    {
        std::ofstream out(f.path);
        out << "disc=-212 h=7 version=x computed_at=t\n"
            << "disc=-996 h=12 version=x computed_at=t\n";
    }
    ClassNumberCache cache(f.path);
    auto const result = cache.audit_sample(1.0, 1, {});
    CHECK(result.sampled == 2);
    REQUIRE(result.mismatches.size() == 1);
    CHECK(result.mismatches[0].second == 6);
    CHECK(cache.get(-212) == 6u);
    ClassNumberCache reloaded(f.path);
    CHECK(reloaded.get(-212) == 6u);

    auto const none = cache.audit_sample(0.0, 1, {});
    CHECK(none.sampled == 0);
}

TEST_CASE("concurrent writers")
{
    TempFile f("threads");
    {
        ClassNumberCache cache(f.path);
        std::vector<std::jthread> pool;
        for (int w = 0; w < 4; ++w) {
            pool.emplace_back([&cache, w] {
                for (std::int64_t k = 1; k <= 200; ++k)
                    cache.put(-4 * (k + 1000 * w), std::uint64_t(k));
            });
        }
    }
    ClassNumberCache reloaded(f.path);
    CHECK(reloaded.size() == 800);
    CHECK(reloaded.warnings().empty());
}
