// Brute-force reference implementations.
//
// Everything here works from breadth-first components and literal
// definitions, sharing no code paths with the library's labelings, tracers or
// counting shortcuts. Used by the test suites and by `verify`.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <set>
#include <vector>

#include "tperc/configuration.hpp"

namespace tperc::oracle {

// Calls f on every one of the 2^N configurations of d (N <= 24).
inline void for_each_configuration(const DomainSpec& d, const std::function<void(const Configuration&)>& f) {
    const auto n = d.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::uint8_t> st(n);
        for (std::size_t i = 0; i < n; ++i) st[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
        f(Configuration(d, std::move(st)));
    }
}

struct Components {
    const DomainSpec* d;
    std::vector<std::int32_t> comp;
    Components(const Configuration& c, Phase p) : d(&c.domain()), comp(bfs_components(c, p)) {}
    [[nodiscard]] std::int32_t at(SiteCoord s) const {
        const auto i = d->index_of(s);
        return i < 0 ? -1 : comp[static_cast<std::size_t>(i)];
    }
    [[nodiscard]] std::set<std::int32_t> of(const std::vector<SiteCoord>& sites) const {
        std::set<std::int32_t> out;
        for (const auto s : sites)
            if (at(s) >= 0) out.insert(at(s));
        return out;
    }
};

inline std::vector<SiteCoord> row0(int lo, int hi) {
    std::vector<SiteCoord> v;
    for (int m = lo; m <= hi; ++m) v.push_back({m, 0});
    return v;
}

inline bool meet(const std::set<std::int32_t>& a, const std::set<std::int32_t>& b) {
    for (const auto x : a)
        if (b.contains(x)) return true;
    return false;
}

// Open clusters meeting [1, n] x {0}.
inline int segment_count(const Configuration& c, int n) {
    return static_cast<int>(Components(c, Phase::Open).of(row0(1, n)).size());
}

// Phase path from [lo1,hi1] to [lo2,hi2] on row 0.
inline bool crossing(const Configuration& c, Phase p, int lo1, int hi1, int lo2, int hi2) {
    const Components k(c, p);
    return meet(k.of(row0(lo1, hi1)), k.of(row0(lo2, hi2)));
}

// Phase path from B_inner to the outer layer of B_outer inside B_outer, avoiding `removed`.
inline bool arm_reach(const Configuration& c, int inner, int outer, Phase ph, const SiteCoord* removed = nullptr) {
    auto ok = [&](SiteCoord s) {
        return std::abs(s.m) <= outer && s.h >= 0 && s.h <= outer && (!removed || s != *removed) && c.has(s, ph);
    };
    std::deque<SiteCoord> q;
    std::set<SiteCoord> seen;
    for (int h = 0; h <= inner; ++h)
        for (int m = -inner; m <= inner; ++m)
            if (ok({m, h})) {
                q.push_back({m, h});
                seen.insert({m, h});
            }
    while (!q.empty()) {
        const auto s = q.front();
        q.pop_front();
        if (std::abs(s.m) == outer || s.h == outer) return true;
        for (const auto off : kNeighborOffsets)
            if (ok(s + off) && seen.insert(s + off).second) q.push_back(s + off);
    }
    return false;
}

// Menger: two disjoint closed arms iff closed arms exist and no single closed site blocks them all.
inline bool three_arm(const Configuration& c, int inner, int outer) {
    if (!arm_reach(c, inner, outer, Phase::Open) || !arm_reach(c, inner, outer, Phase::Closed)) return false;
    for (const auto s : enumerate_sites(c.domain()))
        if (c.has(s, Phase::Closed) && !arm_reach(c, inner, outer, Phase::Closed, &s)) return false;
    return true;
}

}  // namespace tperc::oracle
