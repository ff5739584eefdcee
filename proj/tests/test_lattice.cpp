#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tperc/errors.hpp"
#include "tperc/lattice.hpp"
#include "tperc/partition.hpp"

using namespace tperc;

TEST_CASE("domain boxes and dense indexing") {
    const auto h = DomainSpec::half_plane(3, 1);
    CHECK(h.box() == Box{-1, 4, 0, 1});
    CHECK(h.size() == 6 + 5);
    CHECK(h.row_m_hi(0) == 4);
    CHECK(h.row_m_hi(1) == 3);
    CHECK_FALSE(h.contains({4, 1}));
    CHECK(frame_split(h) == 1);
    CHECK(frame_split(DomainSpec::half_plane(128, 1024)) == (-1024 + 128) / 2);
    const auto c = DomainSpec::cut_plane(4, 2, 1);
    CHECK(c.size() == 9 * 5 - 4);
    CHECK_FALSE(c.contains({1, 0}));
    CHECK(c.contains({2, 0}));
    for (const auto& d : {h, c, DomainSpec::full_plane(5, 3), DomainSpec::centered_half_plane(2)}) {
        const auto sites = enumerate_sites(d);
        REQUIRE(sites.size() == d.size());
        for (std::size_t i = 0; i < sites.size(); ++i) {
            CHECK(d.index_of(sites[i]) == static_cast<std::ptrdiff_t>(i));
            CHECK(d.site_at(i) == sites[i]);
        }
    }
    CHECK(DomainSpec::centered_half_plane(2).size() == 15);
    CHECK_THROWS_AS((void)DomainSpec::cut_plane(4, 2, 6), ArgumentError);
    CHECK(DomainSpec::default_truncation(10) == 256);
    CHECK(DomainSpec::default_truncation(1000) == 4000);
}

TEST_CASE("neighbour offsets are the six unit vectors in both orders") {
    std::set<SiteCoord> a(kNeighborOffsets.begin(), kNeighborOffsets.end());
    std::set<SiteCoord> b(kCcwOffsets.begin(), kCcwOffsets.end());
    CHECK(a == b);
    CHECK(a.size() == 6);
    const auto d = DomainSpec::full_plane(2, 2);
    CHECK(neighbors({0, 0}, d).size() == 6);
    CHECK(neighbors({-2, -2}, d).size() == 2);
    CHECK_THROWS_AS((void)neighbors({9, 9}, d), DomainError);
}

TEST_CASE("interval boundary") {
    const auto d = DomainSpec::full_plane(4, 3);
    const auto b = boundary_of_interval(1, 2, d);
    // (0,0),(3,0), upper (1,1),(2,1),(0,1), lower (1,-1),(2,-1),(3,-1)
    CHECK(b.sites.size() == 8);
    CHECK(b.contains({0, 1}));
    CHECK(b.contains({3, -1}));
    CHECK_FALSE(b.contains({3, 1}));
    CHECK_THROWS_AS((void)boundary_of_interval(3, 1, d), ArgumentError);
    CHECK_THROWS_AS((void)boundary_of_interval(-9, 1, d), ArgumentError);
}

TEST_CASE("scale partition") {
    const auto p = make_partition(10000, 0.5);
    CHECK(p.M == 19);
    CHECK(p.a.back() == 10000);
    CHECK(p.a.size() == 20);
    for (std::size_t j = 1; j < p.a.size(); ++j) CHECK(p.a[j] >= p.a[j - 1]);
    const auto q = make_partition(1250, 0.25);
    CHECK(q.a.back() == 1250);
    CHECK(q.a[q.a.size() - 2] == 1000);
    CHECK_THROWS_AS((void)make_partition(2, 0.5), ArgumentError);
    CHECK_THROWS_AS((void)make_partition(100, 0.0), ArgumentError);
}

TEST_CASE("union-find labeling agrees with BFS components") {
    const auto d = DomainSpec::full_plane(20, 15);
    for (std::uint64_t t = 0; t < 200; ++t) {
        const auto c = sample(d, SeedRecord{7, 1, t});
        for (const auto ph : {Phase::Open, Phase::Closed}) {
            const auto lab = label(c, ph);
            const auto comp = bfs_components(c, ph);
            std::map<std::int32_t, std::int32_t> fwd, back;
            bool ok = true;
            for (std::size_t i = 0; i < d.size(); ++i) {
                const auto r = lab.root(i), q = comp[i];
                if ((r < 0) != (q < 0)) ok = false;
                if (r < 0) continue;
                if (fwd.emplace(r, q).first->second != q || back.emplace(q, r).first->second != r) ok = false;
            }
            CHECK(ok);
            CHECK(lab.cluster_count() == fwd.size());
        }
    }
}

TEST_CASE("dense sampling reads the counter-based bits") {
    const auto d = DomainSpec::half_plane(50, 70);
    const SeedRecord s{123, 4, 5};
    const auto c = sample(d, s);
    const SiteBits bits(s);
    std::size_t open = 0;
    for (const auto site : enumerate_sites(d)) {
        REQUIRE(c.open(site) == bits.open(site.m, site.h));
        open += c.open(site);
    }
    const double frac = static_cast<double>(open) / static_cast<double>(d.size());
    CHECK(frac == doctest::Approx(0.5).epsilon(0.02));
    CHECK(sample(d, s).states().size() == d.size());
    CHECK(std::equal(c.states().begin(), c.states().end(), sample(d, s).states().begin()));
}
