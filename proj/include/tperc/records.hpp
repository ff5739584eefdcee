// Run records (one JSON object per line, append-only) and RFC-4180 CSV output.
#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tperc/stats.hpp"

namespace tperc {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// 16 hex digits of FNV-1a over the canonical (key-sorted) dump of `params`.
std::string params_fingerprint(const Json& params);

// Build identifier baked in at configure time.
const char* source_id();

// Current UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

// Half-open range [first, last) of trial indices.
struct TrialRange {
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    friend bool operator==(const TrialRange&, const TrialRange&) = default;
};

struct RunRecord {
    int schema_version = kSchemaVersion;
    std::string command;
    Json params = Json::object();
    std::vector<Accumulator> accumulators;
    std::vector<TrialRange> trial_ranges;  // empty for runs without trials
    std::string started;
    std::string finished;
    std::string source = source_id();

    [[nodiscard]] std::string fingerprint() const { return params_fingerprint(params); }
    [[nodiscard]] Json to_json() const;
    // Throws ArgumentError on missing fields or a newer schema version.
    static RunRecord from_json(const Json& j);
};

void append_record(const std::filesystem::path& path, const RunRecord& r);
// Blank lines are skipped; a malformed line throws ArgumentError naming the line.
std::vector<RunRecord> read_records(const std::filesystem::path& path);
// One record per fingerprint, in order of first appearance; accumulators of
// the same observable are merged, new observables appended. A record whose
// trial ranges equal ones already merged is a rerun and is skipped; a partial
// overlap throws ArgumentError.
std::vector<RunRecord> merge_records(std::span<const RunRecord> records);

// Shortest round-trip decimal form.
std::string format_double(double x);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& cells);
    void row(std::initializer_list<std::string> cells) { row(std::vector<std::string>(cells)); }
    // Quotes when the field holds a comma, quote, CR or LF; doubles inner quotes.
    static std::string quote(std::string_view field);

private:
    std::ostream& out_;
};

}  // namespace tperc
