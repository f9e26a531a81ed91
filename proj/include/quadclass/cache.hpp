#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "quadclass/quadform.hpp"

namespace quadclass {

struct CacheRecord
{
    std::int64_t discriminant = 0;
    std::uint64_t h = 0;
    std::string computed_at;  // UTC, ISO 8601
    std::string tool_version;
};

/// One line of the cache file: "disc=<D> h=<h> version=<v> computed_at=<ts>".
std::string format_cache_line(CacheRecord const & r);
std::optional<CacheRecord> parse_cache_line(std::string const & line);

std::string utc_timestamp();
std::string tool_version();

/*
 * Class numbers keyed by discriminant. Optionally backed by an append-only
 * text file; duplicates in the file resolve last-write-wins on load.
 * Many concurrent readers, one writer at a time.
 */
class ClassNumberCache
{
  public:
    ClassNumberCache() = default;
    explicit ClassNumberCache(std::filesystem::path file);

    ClassNumberCache(ClassNumberCache const &) = delete;
    ClassNumberCache & operator=(ClassNumberCache const &) = delete;

    std::optional<std::uint64_t> get(std::int64_t discriminant) const;

    /// Idempotent for an identical h; a different h replaces the entry.
    void put(CacheRecord record);
    void put(std::int64_t discriminant, std::uint64_t h);

    void erase(std::int64_t discriminant);

    std::size_t size() const;
    std::vector<CacheRecord> records() const; // sorted by |D|
    std::optional<std::filesystem::path> const & file() const { return file_; }

    /// Corrupt lines skipped while loading.
    std::vector<std::string> const & warnings() const { return warnings_; }

    struct AuditResult
    {
        std::size_t sampled = 0;
        std::vector<std::pair<CacheRecord, std::uint64_t>> mismatches; // record, fresh h
    };

    /*
     * Re-enumerates a random fraction of the records within the cap and
     * compares. Mismatching records are evicted (and rewritten with the
     * fresh value when the cache is file-backed).
     */
    AuditResult audit_sample(double fraction, std::uint64_t seed, EnumerationOptions const & options);

  private:
    void append_line(CacheRecord const & r);

    std::optional<std::filesystem::path> file_;
    mutable std::shared_mutex mutex_;
    std::mutex file_mutex_;
    std::unordered_map<std::int64_t, CacheRecord> records_;
    std::vector<std::string> warnings_;
};

} // namespace quadclass
