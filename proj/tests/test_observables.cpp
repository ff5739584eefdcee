#include "doctest.h"
#include "oracles.hpp"
#include "tperc/errors.hpp"
#include "tperc/observables.hpp"

using namespace tperc;

TEST_CASE("segment count matches brute force and the decomposition identity") {
    const auto d = DomainSpec::half_plane(40, 30);
    for (std::uint64_t t = 0; t < 300; ++t) {
        const auto c = sample(d, SeedRecord{11, 0, t});
        const auto lab = label(c, Phase::Open);
        const auto s = decompose_segment(lab, 40);
        CHECK(s.count == oracle::segment_count(c, 40));
        CHECK(s.count == 1 + s.not_segment - s.closed);
        CHECK(s.not_segment == s.not_left + s.ray_first);
    }
}

TEST_CASE("per-site and per-cluster window counts agree") {
    const int n = 60;
    const auto d = DomainSpec::half_plane(n, 40);
    const auto p = make_partition(n, 0.25);
    for (std::uint64_t t = 0; t < 300; ++t) {
        const auto lab = label(sample(d, SeedRecord{12, 0, t}), Phase::Open);
        const auto a = window_T(lab, p);
        const auto b = window_T_by_cluster(lab, p);
        CHECK(a.f0 == b.f0);
        CHECK(a.T == b.T);
        CHECK(a.total() == decompose_segment(lab, n).ray_first);
    }
    CHECK_THROWS_AS((void)window_T(label(Configuration::uniform(d, true), Phase::Open), make_partition(50, 0.25)),
                    ArgumentError);
}

TEST_CASE("all-open and all-closed half planes") {
    const int n = 30;
    const auto d = DomainSpec::half_plane(n, 10);
    const auto p = make_partition(n, 0.5);
    const auto open = label(Configuration::uniform(d, true), Phase::Open);
    CHECK(count_segment_clusters(open, n) == 1);
    CHECK(window_T(open, p).total() == 0);
    const auto closed = label(Configuration::uniform(d, false), Phase::Open);
    const auto s = decompose_segment(closed, n);
    CHECK(s.count == 0);
    CHECK(s.closed == n);
}

TEST_CASE("duality holds on every configuration of a 12-site box") {
    const auto d = DomainSpec::half_plane(3, 1);
    int violations = 0;
    oracle::for_each_configuration(d, [&](const Configuration& c) {
        const auto du = duality_check(c, 2, 3);
        violations += du.open_to_far == du.closed_crossing;
    });
    CHECK(violations == 0);
}

TEST_CASE("duality on random samples") {
    const auto d = DomainSpec::half_plane(24, 20);
    int violations = 0;
    for (std::uint64_t t = 0; t < 2000; ++t) {
        const auto c = sample(d, SeedRecord{13, 0, t});
        for (const int k : {2, 5, 12}) {
            const auto du = duality_check(c, k, 2 * k);
            violations += du.open_to_far == du.closed_crossing;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("W from window count equals W from crossing order") {
    // Box [-1, 4] x [0, 1]; the left arc is row 0 up to 1, the left wall and the
    // top row up to one past the midpoint of the box.
    const auto toy = DomainSpec::half_plane(3, 1);
    auto left = oracle::row0(-1, 1);
    for (int m = -1; m <= 2; ++m) left.push_back({m, 1});
    int order = 0, union_ = 0, brute = 0;
    oracle::for_each_configuration(toy, [&](const Configuration& c) {
        const auto a = event_W(c, 2, 0.5);
        const auto b = event_W_by_order(c, 2, 0.5);
        order += a.W != b.W || a.W_tilde != b.W_tilde || a.W_prime != b.W_prime;
        union_ += a.W_prime != (a.W || a.W_tilde);
        const oracle::Components open(c, Phase::Open), closed(c, Phase::Closed);
        const auto right = oracle::row0(2, 3);
        brute += a.W_prime != (oracle::meet(open.of(left), open.of(right)) &&
                               oracle::meet(closed.of(left), closed.of(right)));
    });
    CHECK(order == 0);
    CHECK(union_ == 0);
    CHECK(brute == 0);
    int mismatches = 0;

    const auto d = DomainSpec::half_plane(40, 40);
    for (std::uint64_t t = 0; t < 2000; ++t) {
        const auto c = sample(d, SeedRecord{14, 0, t});
        const auto a = event_W(c, 16, 1.0);
        const auto b = event_W_by_order(c, 16, 1.0);
        mismatches += a.W != b.W || a.W_tilde != b.W_tilde || a.W_prime != b.W_prime;
        mismatches += a.W_prime != (a.W || a.W_tilde);
    }
    CHECK(mismatches == 0);
    CHECK(crossing_window_end(64, 1.0) == 128);
    CHECK(crossing_window_end(4, 0.25) == 5);
}

TEST_CASE("cut plane: closed and open window counts agree") {
    const int n = 80;
    const auto p = make_partition(n, 0.25);
    const int i = p.M;  // window (64, 80]
    REQUIRE(p.lower(i) == 64);
    const auto d = DomainSpec::cut_plane(n, 60, p.upper(i));
    int violations = 0;
    double mean_s = 0;
    for (std::uint64_t t = 0; t < 400; ++t) {
        const auto w = window_S(sample(d, SeedRecord{15, 0, t}), p, i);
        violations += w.T_tilde != w.T_tilde_direct;
        mean_s += w.S;
    }
    CHECK(violations == 0);
    CHECK(mean_s > 0);
    CHECK_THROWS_AS((void)window_S(sample(DomainSpec::cut_plane(n, 60, 70), SeedRecord{}), p, i), ArgumentError);
}

TEST_CASE("B event rules are nested") {
    const int n = 40;
    const auto d = DomainSpec::full_plane(n, 30);
    const auto p = make_partition(n, 0.5);
    int hits = 0, bad = 0;
    for (std::uint64_t t = 0; t < 300; ++t) {
        const auto c = sample(d, SeedRecord{16, 0, t});
        for (int i = 1; i <= p.M; ++i) {
            if (p.degenerate(i)) continue;
            const bool same = event_B(c, p, i, BRule::SameVertex);
            const bool either = event_B(c, p, i, BRule::EitherVertex);
            bad += same && !either;
            hits += either;
        }
    }
    CHECK(bad == 0);
    CHECK(hits > 0);
}
