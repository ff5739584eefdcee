#include "tperc/records.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>

#include "tperc/errors.hpp"

#ifndef TPERC_SOURCE_ID
#define TPERC_SOURCE_ID "unknown"
#endif

namespace tperc {

std::string params_fingerprint(const Json& params) {
    const std::string s = params.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 15U];
    return out;
}

const char* source_id() { return TPERC_SOURCE_ID; }

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json RunRecord::to_json() const {
    Json acc = Json::array();
    for (const auto& a : accumulators)
        acc.push_back({{"observable", a.observable()},
                       {"trials", a.trials()},
                       {"sum", a.sum()},
                       {"sum_sq", a.sum_sq()}});
    Json ranges = Json::array();
    for (const auto& t : trial_ranges) ranges.push_back({t.first, t.last});
    return {{"schema_version", schema_version},
            {"command", command},
            {"params", params},
            {"fingerprint", fingerprint()},
            {"accumulators", acc},
            {"trial_ranges", ranges},
            {"started", started},
            {"finished", finished},
            {"source", source}};
}

RunRecord RunRecord::from_json(const Json& j) {
    try {
        RunRecord r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version > kSchemaVersion || r.schema_version < 1)
            throw ArgumentError("unsupported schema_version " + std::to_string(r.schema_version));
        r.command = j.at("command").get<std::string>();
        r.params = j.at("params");
        const std::string fp = r.fingerprint();
        for (const auto& a : j.at("accumulators"))
            r.accumulators.push_back(Accumulator::from_fields(a.at("observable").get<std::string>(), fp,
                                                              a.at("trials").get<std::int64_t>(),
                                                              a.at("sum").get<double>(), a.at("sum_sq").get<double>()));
        if (j.contains("trial_ranges"))
            for (const auto& t : j.at("trial_ranges"))
                r.trial_ranges.push_back({t.at(0).get<std::uint64_t>(), t.at(1).get<std::uint64_t>()});
        r.started = j.value("started", "");
        r.finished = j.value("finished", "");
        r.source = j.value("source", "unknown");
        return r;
    } catch (const Json::exception& e) {
        throw ArgumentError(std::string("run record: ") + e.what());
    }
}

void append_record(const std::filesystem::path& path, const RunRecord& r) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw ArgumentError("cannot open record file " + path.string());
    out << r.to_json().dump() << '\n';
    if (!out) throw ArgumentError("failed writing record file " + path.string());
}

std::vector<RunRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open record file " + path.string());
    std::vector<RunRecord> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(RunRecord::from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<RunRecord> merge_records(std::span<const RunRecord> records) {
    std::vector<RunRecord> out;
    std::map<std::string, std::size_t> slot;
    for (const auto& r : records) {
        const auto [it, fresh] = slot.try_emplace(r.fingerprint(), out.size());
        if (fresh) {
            out.push_back(r);
            continue;
        }
        RunRecord& m = out[it->second];
        bool duplicate = !r.trial_ranges.empty();
        for (const auto& t : r.trial_ranges) {
            bool seen = false;
            for (const auto& u : m.trial_ranges) {
                if (t == u) {
                    seen = true;
                } else if (t.first < u.last && u.first < t.last) {
                    throw ArgumentError("merge_records: overlapping trial ranges for fingerprint " + it->first);
                }
            }
            duplicate = duplicate && seen;
        }
        if (duplicate) continue;
        m.trial_ranges.insert(m.trial_ranges.end(), r.trial_ranges.begin(), r.trial_ranges.end());
        for (const auto& a : r.accumulators) {
            auto same = std::find_if(m.accumulators.begin(), m.accumulators.end(),
                                     [&](const Accumulator& b) { return b.observable() == a.observable(); });
            if (same == m.accumulators.end())
                m.accumulators.push_back(a);
            else
                same->merge(a);
        }
        if (!r.started.empty() && (m.started.empty() || r.started < m.started)) m.started = r.started;
        if (r.finished > m.finished) m.finished = r.finished;
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string CsvWriter::quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote(cells[i]);
    }
    out_ << "\r\n";
}

}  // namespace tperc
