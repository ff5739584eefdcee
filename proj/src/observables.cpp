#include "tperc/observables.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "tperc/errors.hpp"

namespace tperc {

namespace {

using RootSet = std::unordered_set<std::int32_t>;

// Roots of the phase sites on row 0 with m in [lo, hi] (clipped to the box).
RootSet row_roots(const ClusterLabeling& lab, int lo, int hi) {
    RootSet out;
    const Box& bx = lab.domain().box();
    for (int m = std::max(lo, bx.m_lo); m <= std::min(hi, bx.m_hi); ++m) {
        const auto r = lab.root(SiteCoord{m, 0});
        if (r >= 0) out.insert(r);
    }
    return out;
}

RootSet site_roots(const ClusterLabeling& lab, std::span<const SiteCoord> sites) {
    RootSet out;
    for (const auto s : sites) {
        const auto r = lab.root(s);
        if (r >= 0) out.insert(r);
    }
    return out;
}

bool intersects(const RootSet& a, const RootSet& b) {
    const RootSet& small = a.size() < b.size() ? a : b;
    const RootSet& large = a.size() < b.size() ? b : a;
    return std::any_of(small.begin(), small.end(), [&](auto r) { return large.contains(r); });
}

void require_segment_row(const DomainSpec& d, int n) {
    const Box& bx = d.box();
    if (n < 1 || bx.h_lo > 0 || bx.h_hi < 0 || bx.m_lo > 0 || bx.m_hi < n)
        throw ArgumentError("domain does not contain the segment [1, n] and the origin");
}

void require_partition(const DomainSpec& d, const ScalePartition& p) {
    if (p.a.empty() || p.a.back() != p.n || p.n != d.segment_n())
        throw ArgumentError("partition does not match the domain segment");
    require_segment_row(d, p.n);
}

}  // namespace

int WindowCounts::total() const {
    int t = f0;
    for (const int x : T) t += x;
    return t;
}

int count_segment_clusters(const ClusterLabeling& open, int n) {
    require_segment_row(open.domain(), n);
    std::vector<std::int32_t> roots;
    for (int k = 1; k <= n; ++k)
        if (const auto r = open.root(SiteCoord{k, 0}); r >= 0) roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    return static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
}

int count_segment_clusters(const Configuration& c) {
    return count_segment_clusters(label(c, Phase::Open), c.domain().segment_n());
}

SegmentDecomposition decompose_segment(const ClusterLabeling& open, int n) {
    require_segment_row(open.domain(), n);
    SegmentDecomposition out;
    out.count = count_segment_clusters(open, n);
    const RootSet ray = site_roots(open, ray_arc(open.domain()));
    RootSet left = ray;  // roots of [-L, k-1]
    RootSet seg;         // roots of [1, k-1]
    for (int k = 1; k <= n; ++k) {
        const auto r = open.root(SiteCoord{k, 0});
        if (r < 0) ++out.closed;
        if (k == 1) {
            out.one_to_ray = r >= 0 && ray.contains(r);
        } else {
            if (r < 0 || !left.contains(r)) ++out.not_left;
            const bool fresh = r < 0 || !seg.contains(r);
            if (fresh) ++out.not_segment;
            if (r >= 0 && fresh && ray.contains(r)) ++out.ray_first;
        }
        if (r >= 0) {
            left.insert(r);
            seg.insert(r);
        }
    }
    return out;
}

std::vector<int> ray_first_sites(const ClusterLabeling& open, int n) {
    require_segment_row(open.domain(), n);
    const RootSet ray = site_roots(open, ray_arc(open.domain()));
    RootSet seg;
    std::vector<int> out;
    for (int k = 1; k <= n; ++k) {
        const auto r = open.root(SiteCoord{k, 0});
        if (r < 0 || !seg.insert(r).second) continue;
        if (ray.contains(r)) out.push_back(k);
    }
    return out;
}

WindowCounts windows_from_first_sites(std::span<const int> first_sites, const ScalePartition& p) {
    WindowCounts w;
    w.T.assign(static_cast<std::size_t>(p.M), 0);
    for (const int k : first_sites) {
        if (k < 2 || k > p.n) continue;
        if (k <= p.a.front()) {
            ++w.f0;
            continue;
        }
        // Window i with a(i) < k <= a(i+1).
        const auto it = std::lower_bound(p.a.begin(), p.a.end(), k);
        const auto i = static_cast<std::size_t>(it - p.a.begin());  // a[i] >= k > a[i-1]
        ++w.T[i - 1];
    }
    return w;
}

WindowCounts window_T(const ClusterLabeling& open, const ScalePartition& p) {
    require_partition(open.domain(), p);
    const auto first = ray_first_sites(open, p.n);
    return windows_from_first_sites(first, p);
}

WindowCounts window_T(const Configuration& c, const ScalePartition& p) {
    return window_T(label(c, Phase::Open), p);
}

WindowCounts window_T_by_cluster(const ClusterLabeling& open, const ScalePartition& p) {
    require_partition(open.domain(), p);
    std::unordered_map<std::int32_t, int> leftmost;
    for (int k = p.n; k >= 1; --k)
        if (const auto r = open.root(SiteCoord{k, 0}); r >= 0) leftmost[r] = k;
    WindowCounts w;
    w.T.assign(static_cast<std::size_t>(p.M), 0);
    for (const auto r : site_roots(open, ray_arc(open.domain()))) {
        const auto it = leftmost.find(r);
        if (it == leftmost.end()) continue;
        const int k = it->second;
        if (k >= 2 && k <= p.a.front()) ++w.f0;
        for (int i = 1; i <= p.M; ++i)
            if (k > p.lower(i) && k <= p.upper(i)) ++w.T[static_cast<std::size_t>(i - 1)];
    }
    return w;
}

CutArcs cut_arcs(const DomainSpec& d, const ScalePartition& p, int i) {
    if (d.kind() != DomainKind::CutPlane) throw ArgumentError("cut_arcs: domain is not a cut plane");
    if (i < 1 || i > p.M) throw ArgumentError("cut_arcs: window index out of range");
    if (d.cut_end() != p.upper(i)) throw ArgumentError("cut_arcs: cut must end at a(i+1)");
    const int A = p.lower(i);
    const int B = p.upper(i);
    if (A < 1 || A == B) throw ArgumentError("cut_arcs: window must satisfy 1 <= a(i) < a(i+1)");
    CutArcs arcs;
    arcs.window = boundary_of_interval(A + 1, B, d);
    arcs.middle = boundary_of_interval(1, A, d);
    arcs.ray.sites = ray_arc(d);
    return arcs;
}

CutWindowCounts window_S(const Configuration& c, const ScalePartition& p, int i) {
    const DomainSpec& d = c.domain();
    if (d.kind() != DomainKind::CutPlane) throw ArgumentError("window_S: domain is not a cut plane");
    const CutArcs arcs = cut_arcs(d, p, i);
    const ClusterLabeling closed = label(c, Phase::Closed);
    const ClusterLabeling open = label(c, Phase::Open);

    CutWindowCounts out;
    const RootSet cw = site_roots(closed, arcs.window.sites);
    const RootSet cr = site_roots(closed, arcs.ray.sites);
    for (const auto r : cw) out.S += cr.contains(r) ? 1 : 0;
    out.T_tilde = out.S - (out.S >= 1 ? 1 : 0);

    const RootSet ow = site_roots(open, arcs.window.sites);
    const RootSet orr = site_roots(open, arcs.ray.sites);
    const RootSet om = site_roots(open, arcs.middle.sites);
    for (const auto r : ow) out.T_tilde_direct += (orr.contains(r) && !om.contains(r)) ? 1 : 0;
    return out;
}

int crossing_window_end(int k, double eps) {
    return static_cast<int>(std::floor(static_cast<double>(k) * (1.0 + eps) * (1.0 + 1e-14)));
}

namespace {

struct WGeometry {
    int k, K;
};

WGeometry w_geometry(const Configuration& c, int k, double eps) {
    const DomainSpec& d = c.domain();
    if (d.kind() != DomainKind::HalfPlane) throw ArgumentError("event_W: half-plane domain required");
    const int K = crossing_window_end(k, eps);
    if (k < 2 || K <= k || K > d.box().m_hi) throw ArgumentError("event_W: need 2 <= k < k(1+eps) inside the box");
    require_segment_row(d, 1);
    return {k, K};
}

// Sites of the arc (-inf, 1] in order from its far end (the frame split) to (1, 0).
std::vector<SiteCoord> left_arc_in_order(const DomainSpec& d) {
    const Box& bx = d.box();
    std::vector<SiteCoord> arc;
    auto push = [&](SiteCoord s) {
        if (arc.empty() || arc.back() != s) arc.push_back(s);
    };
    for (int m = std::min(frame_split(d) + 1, d.row_m_hi(bx.h_hi)); m >= bx.m_lo; --m) push({m, bx.h_hi});
    for (int h = bx.h_hi; h >= 0; --h) push({bx.m_lo, h});
    for (int m = bx.m_lo; m <= 1; ++m) push({m, 0});
    return arc;
}

std::vector<SiteCoord> left_arc(const DomainSpec& d) {
    auto v = ray_arc(d);
    v.push_back({1, 0});
    return v;
}

// Some cluster of `lab` meets the ray and (k, K] but not [1, k].
bool shielded_crossing(const ClusterLabeling& lab, int k, int K) {
    const RootSet ray = site_roots(lab, ray_arc(lab.domain()));
    const RootSet seg = row_roots(lab, 1, k);
    for (int m = k + 1; m <= K; ++m) {
        const auto r = lab.root(SiteCoord{m, 0});
        if (r >= 0 && ray.contains(r) && !seg.contains(r)) return true;
    }
    return false;
}

// For each cluster meeting both (-inf, 1] and [k, K]: the position of its
// contact with (-inf, 1] that lies closest to (1, 0).
std::vector<int> crossing_left_contacts(const ClusterLabeling& lab, int k, int K) {
    const RootSet right = row_roots(lab, k, K);
    const auto arc = left_arc_in_order(lab.domain());
    std::unordered_map<std::int32_t, int> last;
    for (std::size_t pos = 0; pos < arc.size(); ++pos) {
        const auto r = lab.root(arc[pos]);
        if (r >= 0 && right.contains(r)) last[r] = static_cast<int>(pos);
    }
    std::vector<int> out;
    out.reserve(last.size());
    for (const auto& [r, pos] : last) out.push_back(pos);
    return out;
}

}  // namespace

WEvents event_W(const Configuration& c, int k, double eps) {
    const auto g = w_geometry(c, k, eps);
    const ClusterLabeling open = label(c, Phase::Open);
    const ClusterLabeling closed = label(c, Phase::Closed);
    const auto L = left_arc(c.domain());
    WEvents e;
    e.W = shielded_crossing(open, g.k, g.K);
    e.W_tilde = shielded_crossing(closed, g.k, g.K);
    e.W_prime = intersects(site_roots(open, L), row_roots(open, g.k, g.K)) &&
                intersects(site_roots(closed, L), row_roots(closed, g.k, g.K));
    return e;
}

WEvents event_W_by_order(const Configuration& c, int k, double eps) {
    const auto g = w_geometry(c, k, eps);
    const auto open = crossing_left_contacts(label(c, Phase::Open), g.k, g.K);
    const auto closed = crossing_left_contacts(label(c, Phase::Closed), g.k, g.K);
    WEvents e;
    e.W_prime = !open.empty() && !closed.empty();
    if (e.W_prime) {
        e.W = *std::min_element(open.begin(), open.end()) < *std::max_element(closed.begin(), closed.end());
        e.W_tilde = *std::min_element(closed.begin(), closed.end()) < *std::max_element(open.begin(), open.end());
    }
    return e;
}

Duality duality_check(const Configuration& c, int k, int K) {
    const DomainSpec& d = c.domain();
    if (d.kind() != DomainKind::HalfPlane) throw ArgumentError("duality_check: half-plane domain required");
    if (k < 2 || K <= k || K > d.box().m_hi) throw ArgumentError("duality_check: need 2 <= k < K inside the box");
    const ClusterLabeling open = label(c, Phase::Open);
    const ClusterLabeling closed = label(c, Phase::Closed);
    Duality out;
    out.open_to_far = intersects(row_roots(open, 1, k), site_roots(open, far_arc(d, K)));
    out.closed_crossing = intersects(site_roots(closed, left_arc(d)), row_roots(closed, k, K));
    return out;
}

namespace {

// One half of the full-plane box (side +1: h >= 0, side -1: h <= 0) treated as
// a half plane, with its outer edge split like the half-plane frame.
struct BandArcs {
    std::vector<SiteCoord> left_frame, right_frame;
};

BandArcs band_arcs(const DomainSpec& d, int side) {
    const Box& bx = d.box();
    const int s = frame_split(d);
    const int edge = side > 0 ? bx.h_hi : bx.h_lo;
    const int h0 = side > 0 ? 0 : bx.h_lo, h1 = side > 0 ? bx.h_hi : 0;
    BandArcs a;
    for (int h = h0; h <= h1; ++h) {
        a.left_frame.push_back({bx.m_lo, h});
        a.right_frame.push_back({bx.m_hi, h});
    }
    const int left_end = side > 0 ? s + 1 : s;
    for (int m = bx.m_lo; m <= std::min(left_end, bx.m_hi); ++m) a.left_frame.push_back({m, edge});
    for (int m = std::max(left_end, bx.m_lo); m <= bx.m_hi; ++m) a.right_frame.push_back({m, edge});
    return a;
}

RootSet band_roots(const ClusterLabeling& lab, const std::vector<SiteCoord>& frame, int lo, int hi) {
    RootSet out = site_roots(lab, frame);
    out.merge(row_roots(lab, lo, hi));
    return out;
}

}  // namespace

std::vector<bool> event_B_all(const Configuration& c, const ScalePartition& p, BRule rule) {
    const DomainSpec& d = c.domain();
    if (d.kind() != DomainKind::FullPlane) throw ArgumentError("event_B: full-plane domain required");
    require_partition(d, p);
    const int lo = d.box().m_lo;
    const int hi = d.box().m_hi;
    std::vector<bool> out(static_cast<std::size_t>(p.M), false);

    for (const int side : {+1, -1}) {
        const RowRange band = side > 0 ? RowRange{0, INT_MAX} : RowRange{INT_MIN, 0};
        const ClusterLabeling closed = label(c, Phase::Closed, band);
        const ClusterLabeling open = label(c, Phase::Open, band);
        const BandArcs arcs = band_arcs(d, side);
        const RootSet closed_left = band_roots(closed, arcs.left_frame, lo, 1);
        const RootSet open_left = band_roots(open, arcs.left_frame, lo, 0);
        const RootSet closed_frame = site_roots(closed, arcs.right_frame);
        const RootSet open_frame = site_roots(open, arcs.right_frame);

        // Roots touching [x, inf), built right to left and kept for x in {a(i), a(i)+1}.
        std::map<int, RootSet> closed_right, open_right;
        for (int i = 1; i <= p.M; ++i) {
            closed_right[p.lower(i)];
            open_right[p.lower(i) + 1];
        }
        RootSet cr = closed_frame, orr = open_frame;
        for (int m = hi; m >= 1; --m) {
            if (const auto r = closed.root(SiteCoord{m, 0}); r >= 0) cr.insert(r);
            if (const auto r = open.root(SiteCoord{m, 0}); r >= 0) orr.insert(r);
            if (auto it = closed_right.find(m); it != closed_right.end()) it->second = cr;
            if (auto it = open_right.find(m); it != open_right.end()) it->second = orr;
        }

        for (int i = 1; i <= p.M; ++i) {
            auto&& flag = out[static_cast<std::size_t>(i - 1)];
            if (flag) continue;
            const int A = p.lower(i);
            const RootSet& c_right = closed_right.at(A);
            const RootSet& o_right = open_right.at(A + 1);
            for (int k = 1; k <= A && !flag; ++k) {
                const auto rk = closed.root(SiteCoord{k, 0});
                if (rk < 0 || !closed_left.contains(rk) || !c_right.contains(rk)) continue;
                // Vertices k + j and k - 1 + j, or their mirror images below the axis.
                const SiteCoord v1 = side > 0 ? SiteCoord{k, 1} : SiteCoord{k + 1, -1};
                const SiteCoord v2 = side > 0 ? SiteCoord{k - 1, 1} : SiteCoord{k, -1};
                bool to_left[2], to_right[2];
                int idx = 0;
                for (const auto v : {v1, v2}) {
                    const auto r = open.root(v);
                    to_left[idx] = r >= 0 && open_left.contains(r);
                    to_right[idx] = r >= 0 && o_right.contains(r);
                    ++idx;
                }
                flag = rule == BRule::SameVertex ? (to_left[0] && to_right[0]) || (to_left[1] && to_right[1])
                                                 : (to_left[0] || to_left[1]) && (to_right[0] || to_right[1]);
            }
        }
    }
    return out;
}

bool event_B(const Configuration& c, const ScalePartition& p, int i, BRule rule) {
    if (i < 1 || i > p.M) throw ArgumentError("event_B: window index out of range");
    return event_B_all(c, p, rule)[static_cast<std::size_t>(i - 1)];
}

}  // namespace tperc
