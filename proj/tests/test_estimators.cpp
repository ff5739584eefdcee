#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tperc/errors.hpp"
#include "tperc/estimators.hpp"
#include "tperc/verify.hpp"

using namespace tperc;

namespace {

RunOptions opts(std::uint64_t trials, std::uint64_t seed = 11, int truncation = 0) {
    RunOptions o;
    o.trials = trials;
    o.master_seed = seed;
    o.truncation = truncation;
    return o;
}

}  // namespace

TEST_CASE("segment expectation of a single site") {
    const std::vector<int> one{1};
    const auto e = estimate_segment_expectation(one, DomainKind::HalfPlane, opts(4000));
    CHECK(std::abs(e.counts[0].mean - 0.5) <= 5 * e.counts[0].std_error);
    CHECK(e.counts[0].truncation == DomainSpec::default_truncation(1));
    CHECK_THROWS_AS(estimate_segment_expectation(one, DomainKind::HalfPlane, opts(1)), ArgumentError);
    const std::vector<int> big{64};
    CHECK_THROWS_AS(estimate_segment_expectation(big, DomainKind::HalfPlane, opts(10, 1, 32)), ArgumentError);
}

TEST_CASE("truncation doubling moves segment means by less than 3 sigma") {
    const std::vector<int> ns{16, 32};
    for (const auto kind : {DomainKind::HalfPlane, DomainKind::FullPlane}) {
        const auto a = estimate_segment_expectation(ns, kind, opts(3000, 3, 64));
        const auto b = estimate_segment_expectation(ns, kind, opts(3000, 4, 128));
        for (std::size_t j = 0; j < ns.size(); ++j) {
            const double tol = 3 * std::hypot(a.counts[j].std_error, b.counts[j].std_error);
            CHECK(std::abs(a.counts[j].mean - b.counts[j].mean) < tol);
        }
    }
}

TEST_CASE("leading constant on a toy domain matches enumeration") {
    for (const auto kind : {DomainKind::HalfPlane, DomainKind::FullPlane}) {
        const auto e = estimate_leading_constant(kind, opts(20000, 5, 1));
        CHECK(e.value.mean > -0.5);
        CHECK(e.value.mean < 0.5);

        const DomainSpec d = kind == DomainKind::HalfPlane ? DomainSpec::half_plane(1, 1) : DomainSpec::full_plane(1, 1);
        const auto ray = ray_arc(d);
        double hits = 0, total = 0;
        oracle::for_each_configuration(d, [&](const Configuration& c) {
            const oracle::Components open(c, Phase::Open);
            const std::vector<SiteCoord> one{{1, 0}};
            hits += oracle::meet(open.of(one), open.of(ray)) ? 0 : 1;
            ++total;
        });
        const double exact = hits / total - 0.5;
        CHECK(std::abs(e.value.mean - exact) <= 5 * e.value.std_error);
    }
}

TEST_CASE("campaigns are bit-identical across workers and shards") {
    const std::vector<double> eps{1.0, 0.5};
    RunOptions o = opts(600, 9);
    const auto single = estimate_window_grid(128, eps, DomainKind::HalfPlane, o);
    o.workers = 3;
    const auto threaded = estimate_window_grid(128, eps, DomainKind::HalfPlane, o);
    o.workers = 1;
    o.trials = 250;
    auto shard = estimate_window_grid(128, eps, DomainKind::HalfPlane, o);
    o.first_trial = 250;
    o.trials = 350;
    const auto rest = estimate_window_grid(128, eps, DomainKind::HalfPlane, o);
    CHECK(single.data.params == rest.data.params);
    for (std::size_t j = 0; j < shard.data.accumulators.size(); ++j) shard.data.accumulators[j].merge(rest.data.accumulators[j]);
    REQUIRE(single.data.accumulators.size() == threaded.data.accumulators.size());
    for (std::size_t j = 0; j < single.data.accumulators.size(); ++j) {
        const auto& a = single.data.accumulators[j];
        for (const Accumulator* b : {&threaded.data.accumulators[j], static_cast<const Accumulator*>(&shard.data.accumulators[j])}) {
            CHECK(a.observable() == b->observable());
            CHECK(a.trials() == b->trials());
            CHECK(a.sum() == b->sum());
            CHECK(a.sum_sq() == b->sum_sq());
        }
    }
    const auto rebuilt = assemble_window_grids(single.data);
    REQUIRE(rebuilt.size() == 2);
    CHECK(rebuilt[1].L_hat.mean == single.grids[1].L_hat.mean);
    CHECK(rebuilt[1].rows.size() == single.grids[1].rows.size());
}

TEST_CASE("full-plane window counts are bounded by the cut-plane pipeline") {
    const std::vector<double> eps{0.5};
    const auto set = estimate_window_grid(64, eps, DomainKind::FullPlane, opts(400, 2), GridOptions{true});
    const auto& g = set.grids.at(0);
    REQUIRE(g.L_bound.has_value());
    for (const auto& w : g.rows) {
        REQUIRE(w.T_tilde_over_eps.has_value());
        const double lhs = w.T_over_eps.mean * 0.5;
        const double rhs = w.T_tilde_over_eps->mean * 0.5 + 2 * w.B->mean;
        const double se = std::hypot(w.T_over_eps.std_error * 0.5, w.T_tilde_over_eps->std_error * 0.5, 2 * w.B->std_error);
        CHECK(lhs <= rhs + 3 * se);
    }
    CHECK(g.L_bound->mean >= g.L_hat.mean - 3 * std::hypot(g.L_bound->std_error, g.L_hat.std_error));
}

TEST_CASE("W' is the union of W and its colour swap") {
    const auto e = estimate_wprime(8, 1.0, opts(2000, 4));
    CHECK(e.K == 16);
    CHECK(e.W_prime.mean == doctest::Approx(e.W.mean + e.W_tilde.mean - e.W_and_W_tilde.mean).epsilon(1e-12));
}

TEST_CASE("one-arm probability decreases in the outer radius") {
    const std::vector<int> outers{2, 4, 8, 16};
    const auto e = estimate_arm(1, outers, ArmKind::One, opts(2000, 6));
    for (std::size_t j = 1; j < outers.size(); ++j)
        CHECK(e.probability[j].mean <= e.probability[j - 1].mean + 2 * e.probability[j].std_error);
    const auto r = estimate_arm_ratio(1, 4, ArmKind::Three, opts(2000, 6));
    CHECK(r.ratio == doctest::Approx(r.at_2k.mean / r.at_k.mean));
    CHECK(r.ratio_std_error > 0);
    CHECK_THROWS_AS(estimate_arm(4, std::vector<int>{4}, ArmKind::One, opts(10)), ArgumentError);
}

TEST_CASE("standard error falls as one over the square root of the trial count") {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::vector<std::uint64_t> counts{100, 1000, 10000, 100000, 1000000};
    for (const auto t : counts) {
        const double x = std::log(static_cast<double>(t));
        const double y = std::log(estimate_leading_constant(DomainKind::HalfPlane, opts(t, 8, 1)).value.std_error);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double k = static_cast<double>(counts.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    CHECK(std::abs(slope + 0.5) <= 0.05);
}

TEST_CASE("self-check suites pass at reduced size") {
    SuiteOptions o;
    o.samples = 300;
    o.mc_trials = 3000;
    for (const auto& r : verify_enumeration(o)) CHECK_MESSAGE(r.pass, r.name << ": " << r.detail);
    for (const auto& r : verify_identities(o)) CHECK_MESSAGE(r.pass, r.name << ": " << r.detail);
}
