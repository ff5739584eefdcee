#include <tuple>

#include "doctest.h"
#include "tperc/errors.hpp"
#include "tperc/explorer.hpp"
#include "tperc/observables.hpp"

using namespace tperc;

TEST_CASE("half-plane tracer equals dense ray-first sites") {
    int mismatches = 0;
    for (const auto [n, L] : {std::pair{1, 1}, std::pair{5, 2}, std::pair{20, 5}, std::pair{30, 60}, std::pair{64, 20}}) {
        const auto d = DomainSpec::half_plane(n, L);
        for (std::uint64_t t = 0; t < 400; ++t) {
            const SeedRecord s{31, static_cast<std::uint64_t>(n), t};
            const auto c = sample(d, s);
            for (const auto ph : {Phase::Open, Phase::Closed}) {
                const auto dense = ray_first_sites(label(c, ph), n);
                const auto lazy = trace_ray_first(d, s, ph);
                mismatches += dense != lazy.first_sites;
            }
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("slit tracer equals dense closed-cluster count") {
    int mismatches = 0;
    for (const auto [n, L, eps] : {std::tuple{20, 3, 0.5}, std::tuple{40, 10, 0.25}, std::tuple{80, 50, 0.25}}) {
        const auto p = make_partition(n, eps);
        for (int i = 1; i <= p.M; ++i) {
            if (p.lower(i) < 1 || p.degenerate(i)) continue;
            const auto d = DomainSpec::cut_plane(n, L, p.upper(i));
            for (std::uint64_t t = 0; t < 60; ++t) {
                const SeedRecord s{32, static_cast<std::uint64_t>(i), t};
                const auto dense = window_S(sample(d, s), p, i);
                mismatches += dense.S != trace_cut_window(d, p.lower(i), s).S;
            }
        }
    }
    CHECK(mismatches == 0);
    CHECK_THROWS_AS((void)trace_cut_window(DomainSpec::full_plane(10, 5), 2, SeedRecord{}), ArgumentError);
}
