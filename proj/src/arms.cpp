#include "tperc/arms.hpp"

#include <cstdlib>
#include <deque>
#include <vector>

#include "tperc/errors.hpp"

namespace tperc {

const char* to_string(ArmKind k) { return k == ArmKind::One ? "one" : "three"; }

namespace {

// Sites of B_outer with the requested phase, as a local grid.
struct ArmGrid {
    int r, width;
    std::vector<std::uint8_t> on;  // site has the phase
    std::vector<std::uint8_t> src;  // in B_inner
    std::vector<std::uint8_t> dst;  // on the outer layer

    ArmGrid(const Configuration& c, int inner, int outer, Phase phase)
        : r(outer), width(2 * outer + 1) {
        const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(outer + 1);
        on.assign(n, 0);
        src.assign(n, 0);
        dst.assign(n, 0);
        for (int h = 0; h <= outer; ++h)
            for (int m = -outer; m <= outer; ++m) {
                const auto i = idx(m, h);
                on[i] = c.has({m, h}, phase);
                src[i] = std::abs(m) <= inner && h <= inner;
                dst[i] = std::abs(m) == outer || h == outer;
            }
    }
    [[nodiscard]] std::size_t size() const { return on.size(); }
    [[nodiscard]] std::size_t idx(int m, int h) const {
        return static_cast<std::size_t>(h) * static_cast<std::size_t>(width) + static_cast<std::size_t>(m + r);
    }
    [[nodiscard]] SiteCoord at(std::size_t i) const {
        return {static_cast<int>(i % static_cast<std::size_t>(width)) - r,
                static_cast<int>(i / static_cast<std::size_t>(width))};
    }
    [[nodiscard]] bool inside(SiteCoord s) const { return std::abs(s.m) <= r && s.h >= 0 && s.h <= r; }
};

void check_boxes(const Configuration& c, int inner, int outer) {
    if (inner < 0 || inner >= outer) throw ArgumentError("arm boxes need 0 <= inner < outer");
    const Box& bx = c.domain().box();
    if (bx.m_lo > -outer || bx.m_hi < outer || bx.h_lo > 0 || bx.h_hi < outer)
        throw ArgumentError("outer arm box leaves the domain");
    if (c.domain().kind() != DomainKind::HalfPlane) throw ArgumentError("arm events need a half-plane domain");
}

// Unit vertex capacities via node splitting: node 2v is v's entry, 2v+1 its exit.
// Augments along shortest residual paths until `cap` arms are found or none remain.
int max_disjoint(const ArmGrid& g, int cap) {
    const std::size_t V = g.size();
    const std::size_t S = 2 * V, T = 2 * V + 1;
    struct Edge {
        std::size_t to;
        int cap;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> out(2 * V + 2);
    auto add = [&](std::size_t a, std::size_t b) {
        out[a].push_back(edges.size());
        edges.push_back({b, 1});
        out[b].push_back(edges.size());
        edges.push_back({a, 0});
    };
    for (std::size_t v = 0; v < V; ++v) {
        if (!g.on[v]) continue;
        add(2 * v, 2 * v + 1);
        if (g.src[v]) add(S, 2 * v);
        if (g.dst[v]) add(2 * v + 1, T);
        const SiteCoord p = g.at(v);
        for (const auto off : kNeighborOffsets) {
            const SiteCoord q = p + off;
            if (!g.inside(q)) continue;
            const auto w = g.idx(q.m, q.h);
            if (g.on[w]) add(2 * v + 1, 2 * w);
        }
    }
    int flow = 0;
    std::vector<std::ptrdiff_t> via(2 * V + 2);
    while (flow < cap) {
        std::fill(via.begin(), via.end(), -1);
        std::deque<std::size_t> queue{S};
        via[S] = static_cast<std::ptrdiff_t>(edges.size());
        while (!queue.empty() && via[T] < 0) {
            const auto u = queue.front();
            queue.pop_front();
            for (const auto e : out[u]) {
                const auto w = edges[e].to;
                if (edges[e].cap > 0 && via[w] < 0) {
                    via[w] = static_cast<std::ptrdiff_t>(e);
                    queue.push_back(w);
                }
            }
        }
        if (via[T] < 0) break;
        for (auto w = T; w != S;) {
            const auto e = static_cast<std::size_t>(via[w]);
            --edges[e].cap;
            ++edges[e ^ 1U].cap;
            w = edges[e ^ 1U].to;
        }
        ++flow;
    }
    return flow;
}

bool has_arm(const ArmGrid& g) {
    std::vector<std::uint8_t> seen(g.size(), 0);
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.on[v] && g.src[v]) {
            seen[v] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        if (g.dst[v]) return true;
        const SiteCoord p = g.at(v);
        for (const auto off : kNeighborOffsets) {
            const SiteCoord q = p + off;
            if (!g.inside(q)) continue;
            const auto w = g.idx(q.m, q.h);
            if (g.on[w] && !seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return false;
}

}  // namespace

int disjoint_arms(const Configuration& c, int inner, int outer, Phase phase, int cap) {
    check_boxes(c, inner, outer);
    return max_disjoint(ArmGrid(c, inner, outer, phase), cap);
}

bool arm_indicator(const Configuration& c, int inner, int outer, ArmKind kind) {
    check_boxes(c, inner, outer);
    if (!has_arm(ArmGrid(c, inner, outer, Phase::Open))) return false;
    if (kind == ArmKind::One) return true;
    return max_disjoint(ArmGrid(c, inner, outer, Phase::Closed), 2) >= 2;
}

}  // namespace tperc
