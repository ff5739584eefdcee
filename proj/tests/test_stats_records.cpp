#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tperc/errors.hpp"
#include "tperc/pool.hpp"
#include "tperc/records.hpp"
#include "tperc/stats.hpp"

using namespace tperc;

TEST_CASE("accumulator moments and merge") {
    Accumulator a("x", "fp"), b("x", "fp"), all("x", "fp");
    for (const double v : {1.0, 2.0, 4.0}) a.add(v), all.add(v);
    for (const double v : {8.0, 16.0}) b.add(v), all.add(v);
    CHECK(a.mean() == doctest::Approx(7.0 / 3));
    CHECK(a.variance() == doctest::Approx(7.0 / 3));  // ((1-7/3)^2 + (2-7/3)^2 + (4-7/3)^2) / 2
    a.merge(b);
    CHECK(a.trials() == all.trials());
    CHECK(a.sum() == all.sum());
    CHECK(a.sum_sq() == all.sum_sq());
    CHECK(a.std_error() == doctest::Approx(std::sqrt(all.variance() / 5)));

    Accumulator one("x", "fp");
    one.add(3.0);
    CHECK(one.variance() == 0.0);
    CHECK_THROWS_AS(a.merge(Accumulator("y", "fp")), ArgumentError);
    CHECK_THROWS_AS(a.merge(Accumulator("x", "other")), ArgumentError);
}

TEST_CASE("merge is associative and commutative on integer data") {
    Accumulator p("x", ""), q("x", ""), r("x", "");
    for (int i = 0; i < 50; ++i) (i % 3 == 0 ? p : i % 3 == 1 ? q : r).add(i % 7);
    Accumulator left = p, right = r;
    left.merge(q);
    left.merge(r);
    right.merge(q);
    right.merge(p);
    CHECK(left.sum() == right.sum());
    CHECK(left.sum_sq() == right.sum_sq());
    CHECK(left.trials() == right.trials());
}

TEST_CASE("ratio of means with the delta method") {
    Accumulator x("x", ""), y("y", ""), xy("xy", "");
    // y = x / 2 exactly: ratio 1/2 with zero spread.
    for (int i = 1; i <= 20; ++i) {
        const double xv = i % 2, yv = xv / 2;
        x.add(xv), y.add(yv), xy.add(xv * yv);
    }
    const auto r = ratio_of_means(x, y, xy);
    CHECK(r.ratio == doctest::Approx(0.5));
    CHECK(r.std_error == doctest::Approx(0.0).epsilon(1e-12));
    Accumulator z("z", "");
    for (int i = 0; i < 20; ++i) z.add(0);
    CHECK(std::isnan(ratio_of_means(z, y, xy).ratio));
}

TEST_CASE("pool results do not depend on the worker count") {
    auto body = [](std::uint64_t first, std::uint64_t last) {
        double s = 0;
        for (auto i = first; i < last; ++i) s += 1.0 / static_cast<double>(i + 1);
        return s;
    };
    const auto one = run_chunks<double>(10000, 1, body, 64);
    const auto four = run_chunks<double>(10000, 4, body, 64);
    CHECK(one == four);
    CHECK(one.size() == (10000 + 63) / 64);
    CHECK(run_chunks<double>(0, 3, body).empty());
    CHECK_THROWS_AS(run_chunks<int>(1000, 3,
                                    [](std::uint64_t first, std::uint64_t) -> int {
                                        if (first >= 512) throw ArgumentError("boom");
                                        return 0;
                                    },
                                    64),
                    ArgumentError);
}

TEST_CASE("fingerprints ignore key order") {
    const Json a = Json::parse(R"({"n": 64, "eps": [1, 0.5], "domain": "half"})");
    const Json b = Json::parse(R"({"domain": "half", "n": 64, "eps": [1, 0.5]})");
    CHECK(params_fingerprint(a) == params_fingerprint(b));
    CHECK(params_fingerprint(a).size() == 16);
    CHECK(params_fingerprint(a) != params_fingerprint(Json::parse(R"({"n": 65, "eps": [1, 0.5], "domain": "half"})")));
}

TEST_CASE("CSV quoting") {
    CHECK(CsvWriter::quote("plain") == "plain");
    CHECK(CsvWriter::quote("a,b") == "\"a,b\"");
    CHECK(CsvWriter::quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(CsvWriter::quote("two\nlines") == "\"two\nlines\"");
    std::ostringstream out;
    CsvWriter w(out);
    w.row({"a", "b,c"});
    w.row({"", "1"});
    CHECK(out.str() == "a,\"b,c\"\r\n,1\r\n");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
}

namespace {

RunRecord sample_record(std::uint64_t first, std::uint64_t last, double sum) {
    RunRecord r;
    r.command = "simulate";
    r.params = {{"family", "segment"}, {"n", {4, 8}}};
    r.accumulators.push_back(Accumulator::from_fields("count:n=4", r.fingerprint(), static_cast<std::int64_t>(last - first), sum, sum));
    r.trial_ranges.push_back({first, last});
    r.started = "2026-01-01T00:00:00Z";
    r.finished = "2026-01-01T00:00:01Z";
    return r;
}

}  // namespace

TEST_CASE("run records round-trip and merge") {
    const auto path = std::filesystem::temp_directory_path() / "tperc_records_test.jsonl";
    std::filesystem::remove(path);
    append_record(path, sample_record(0, 10, 4));
    append_record(path, sample_record(10, 30, 9));
    append_record(path, sample_record(0, 10, 4));  // rerun of the first shard
    RunRecord other = sample_record(0, 5, 1);
    other.params["n"] = {16};
    append_record(path, other);

    const auto recs = read_records(path);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].params == sample_record(0, 10, 4).params);
    CHECK(recs[0].accumulators[0].fingerprint() == recs[0].fingerprint());

    const auto merged = merge_records(recs);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].accumulators[0].trials() == 30);
    CHECK(merged[0].accumulators[0].sum() == 13);
    CHECK(merged[0].trial_ranges.size() == 2);
    CHECK(merged[1].accumulators[0].trials() == 5);

    const std::vector<RunRecord> clash{sample_record(0, 10, 4), sample_record(5, 15, 4)};
    CHECK_THROWS_AS(merge_records(clash), ArgumentError);

    {
        std::ofstream bad(path, std::ios::app);
        bad << "{not json\n";
    }
    try {
        (void)read_records(path);
        FAIL("malformed line accepted");
    } catch (const ArgumentError& e) {
        CHECK(std::string(e.what()).find(":5:") != std::string::npos);
    }

    Json newer = sample_record(0, 1, 0).to_json();
    newer["schema_version"] = kSchemaVersion + 1;
    CHECK_THROWS_AS(RunRecord::from_json(newer), ArgumentError);
    std::filesystem::remove(path);
}
