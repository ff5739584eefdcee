#include "tperc/configuration.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "tperc/errors.hpp"

namespace tperc {

Configuration::Configuration(DomainSpec domain, std::vector<std::uint8_t> states, std::optional<SeedRecord> seed)
    : domain_(std::move(domain)), states_(std::move(states)), seed_(seed) {
    if (states_.size() != domain_.size()) throw ArgumentError("state vector length does not match domain");
}

Configuration Configuration::uniform(DomainSpec domain, bool open) {
    const auto n = domain.size();
    return {std::move(domain), std::vector<std::uint8_t>(n, open ? 1 : 0)};
}

bool Configuration::open(SiteCoord s) const {
    const auto i = domain_.index_of(s);
    if (i == kAbsent)
        throw DomainError("site (" + std::to_string(s.m) + "," + std::to_string(s.h) + ") outside domain");
    return states_[static_cast<std::size_t>(i)] != 0;
}

void Configuration::set(SiteCoord s, bool open) {
    const auto i = domain_.index_of(s);
    if (i == kAbsent) throw DomainError("set: site outside domain");
    states_[static_cast<std::size_t>(i)] = open ? 1 : 0;
    seed_.reset();
}

Configuration sample(const DomainSpec& d, const SeedRecord& seed) {
    const SiteBits bits(seed);
    std::vector<std::uint8_t> st(d.size());
    const Box& bx = d.box();
    std::size_t i = 0;
    for (int h = bx.h_lo; h <= bx.h_hi; ++h) {
        int m = d.row_m_lo(h);
        const int hi = d.row_m_hi(h);
        while (m <= hi) {
            const int block = m >> 6;
            const std::uint64_t w = bits.word(h, block);
            const int block_end = std::min(hi, block * 64 + 63);
            for (; m <= block_end; ++m) st[i++] = static_cast<std::uint8_t>((w >> (static_cast<unsigned>(m) & 63U)) & 1U);
        }
    }
    return {d, std::move(st), seed};
}

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    std::vector<std::uint8_t> rank;

    explicit UnionFind(std::size_t n) : parent(n), rank(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::int32_t>(i);
    }
    std::int32_t find(std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& p = parent[static_cast<std::size_t>(x)];
            p = parent[static_cast<std::size_t>(p)];  // path halving
            x = p;
        }
        return x;
    }
    bool unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)]) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
        if (rank[static_cast<std::size_t>(a)] == rank[static_cast<std::size_t>(b)]) ++rank[static_cast<std::size_t>(a)];
        return true;
    }
};

}  // namespace

ClusterLabeling::ClusterLabeling(const Configuration& c, Phase phase, RowRange rows)
    : domain_(c.domain()), phase_(phase), root_(c.domain().size(), -1) {
    const DomainSpec& d = domain_;
    const Box& bx = d.box();
    const int h0 = std::max(bx.h_lo, rows.h_min);
    const int h1 = std::min(bx.h_hi, rows.h_max);
    const auto want = static_cast<std::uint8_t>(phase);
    const auto st = c.states();
    UnionFind uf(d.size());
    std::size_t members = 0, merges = 0;
    for (int h = h0; h <= h1; ++h) {
        const int lo = d.row_m_lo(h);
        const int hi = d.row_m_hi(h);
        const std::size_t base = d.row_offset(h);
        for (int m = lo; m <= hi; ++m) {
            const std::size_t i = base + static_cast<std::size_t>(m - lo);
            if (st[i] != want) continue;
            ++members;
            const auto si = static_cast<std::int32_t>(i);
            if (m < hi && st[i + 1] == want) merges += uf.unite(si, si + 1);
            if (h < h1) {
                const auto up = d.index_of({m, h + 1});
                if (up != kAbsent && st[static_cast<std::size_t>(up)] == want)
                    merges += uf.unite(si, static_cast<std::int32_t>(up));
                const auto ul = d.index_of({m - 1, h + 1});
                if (ul != kAbsent && st[static_cast<std::size_t>(ul)] == want)
                    merges += uf.unite(si, static_cast<std::int32_t>(ul));
            }
        }
    }
    for (int h = h0; h <= h1; ++h) {
        const int lo = d.row_m_lo(h);
        const std::size_t base = d.row_offset(h);
        for (int m = lo; m <= d.row_m_hi(h); ++m) {
            const std::size_t i = base + static_cast<std::size_t>(m - lo);
            if (st[i] == want) root_[i] = uf.find(static_cast<std::int32_t>(i));
        }
    }
    clusters_ = members - merges;
}

ClusterLabeling label(const Configuration& c, Phase phase, RowRange rows) { return ClusterLabeling(c, phase, rows); }

std::vector<std::int32_t> bfs_components(const Configuration& c, Phase phase) {
    const DomainSpec& d = c.domain();
    const auto want = static_cast<std::uint8_t>(phase);
    const auto st = c.states();
    std::vector<std::int32_t> comp(d.size(), -1);
    std::int32_t next = 0;
    std::deque<std::size_t> queue;
    for (std::size_t s = 0; s < d.size(); ++s) {
        if (st[s] != want || comp[s] >= 0) continue;
        comp[s] = next;
        queue.push_back(s);
        while (!queue.empty()) {
            const auto cur = queue.front();
            queue.pop_front();
            const SiteCoord p = d.site_at(cur);
            for (const auto off : kNeighborOffsets) {
                const auto j = d.index_of(p + off);
                if (j == kAbsent) continue;
                const auto uj = static_cast<std::size_t>(j);
                if (st[uj] == want && comp[uj] < 0) {
                    comp[uj] = next;
                    queue.push_back(uj);
                }
            }
        }
        ++next;
    }
    return comp;
}

}  // namespace tperc
