#include "tperc/explorer.hpp"

#include <algorithm>
#include <array>

#include "tperc/errors.hpp"

namespace tperc {

namespace {

constexpr std::array<int, 6> kNext{1, 2, 3, 4, 5, 0};
constexpr std::array<int, 6> kPrev{5, 0, 1, 2, 3, 4};


}  // namespace

// The open (left) side is every real `phase` site plus a virtual row h = -1
// and everything outside the box, except the stretch (1..n+1, -1), which is
// right-coloured. The walk follows the hull of the right cluster grown from
// that stretch, from the edge (0|1) to the edge (n+2|n+1) on the virtual row.
// Outside sites left of the box, or above it up to the frame split, belong to
// the ray. Virtual sites are met in boundary order: ray, then the rest of the
// frame, then the row right of the segment. A segment visit opens a new ray-connected cluster exactly
// when the last virtual site seen since the previous segment visit was a ray
// site, so the walk can stop at its first non-ray virtual site.
// The walk can meet a cluster's segment sites out of order, so each such run
// reports the smallest segment site seen before the next virtual visit.
RayFirstTrace trace_ray_first(const DomainSpec& d, const SeedRecord& seed, Phase phase) {
    if (d.kind() != DomainKind::HalfPlane) throw ArgumentError("trace_ray_first: half-plane domain required");
    const int n = d.segment_n();
    const Box bx = d.box();
    if (n < 1 || bx.m_lo > 0) throw ArgumentError("trace_ray_first: empty segment");
    const SiteBits bits(seed);
    const bool want_open = phase == Phase::Open;
    const int split = frame_split(d);

    auto left = [&](SiteCoord s) {
        if (s.h == -1) return s.m <= 0 || s.m > n + 1;
        if (!d.contains(s)) return true;
        return bits.open(s.m, s.h) == want_open;
    };

    RayFirstTrace out;
    // The right vertex is implied by (L, i) and never needed here.
    SiteCoord L{0, -1};
    int i = 0;
    bool virtual_since = true, in_run = false;
    while (true) {
        const int j = kNext[static_cast<std::size_t>(i)];
        const SiteCoord X = L + kCcwOffsets[static_cast<std::size_t>(j)];
        ++out.steps;
        const bool lf = left(X);
        // Selects rather than branches: the colour is a fair coin.
        i = lf ? kPrev[static_cast<std::size_t>(i)] : j;
        L.m = lf ? X.m : L.m;
        L.h = lf ? X.h : L.h;
        if (lf && (X.h <= 0 || !d.contains(X))) {
            if (X.h == 0 && X.m >= 1 && X.m <= n) {
                if (virtual_since) {
                    out.first_sites.push_back(X.m);
                    in_run = true;
                } else if (in_run) {
                    out.first_sites.back() = std::min(out.first_sites.back(), X.m);
                }
                virtual_since = false;
            } else if (X.h < 0 || !d.contains(X)) {
                const bool ray = X.m < bx.m_lo || (X.h == -1 && X.m <= 0) ||
                                 (X.h > bx.h_hi && X.m <= split);
                if (!ray) break;
                virtual_since = true;
                in_run = false;
            }
        }
    }
    std::sort(out.first_sites.begin(), out.first_sites.end());
    return out;
}

namespace {

// Vertex of the slit graph: row-0 sites left of the tip are split into an
// upper and a lower copy.
struct SlitSite {
    SiteCoord s;
    int side = 0;  // +1 upper copy, -1 lower copy, 0 ordinary site
};

}  // namespace

// Left colour: closed sites, copies of the ray [.., 0] and the outside of the box.
// Right colour: open sites, copies of [1, B-1] and the tip (B, 0). The walk runs
// from (0|1) on the upper copies around the tip to (0|1) on the lower copies.
// S counts runs of window contacts (right side on a copy in [A+1, B]) that are
// separated by left visits to ray copies or to the frame.
SlitTrace trace_cut_window(const DomainSpec& d, int A, const SeedRecord& seed) {
    if (d.kind() != DomainKind::CutPlane) throw ArgumentError("trace_cut_window: cut-plane domain required");
    const int B = d.cut_end();
    const Box bx = d.box();
    if (A < 1 || A >= B || bx.m_lo > 0 || bx.h_lo > -1 || bx.h_hi < 1 || bx.m_hi <= B)
        throw ArgumentError("trace_cut_window: need 1 <= A < B inside the box");
    const SiteBits bits(seed);

    auto on_slit = [&](SiteCoord s) { return s.h == 0 && s.m < B; };
    auto left = [&](const SlitSite& v) {
        if (on_slit(v.s)) return v.s.m <= 0;
        if (v.s.h == 0 && v.s.m == B) return false;
        if (!bx.contains(v.s)) return true;
        return !bits.open(v.s.m, v.s.h);
    };

    SlitTrace out;
    SlitSite L{{0, 0}, +1}, R{{1, 0}, +1};
    int i = 0;
    bool in_block = false;
    while (true) {
        const int j = kNext[static_cast<std::size_t>(i)];
        SlitSite X{L.s + kCcwOffsets[static_cast<std::size_t>(j)], 0};
        if (on_slit(X.s)) {
            // The triangle L, R, X has one vertex off row 0, which fixes the side.
            const SiteCoord off = L.s.h != 0 ? L.s : R.s;
            X.side = off.h > 0 ? +1 : -1;
        }
        ++out.steps;
        const bool lf = left(X);
        i = lf ? kPrev[static_cast<std::size_t>(i)] : j;
        L = lf ? X : L;
        R = lf ? R : X;
        if (X.s.h == 0 || !bx.contains(X.s)) {
            if (lf) {
                if (X.side != 0 && X.s.m <= 0) in_block = false;
                if (!bx.contains(X.s)) in_block = false;
            } else if (X.s.m > A && X.s.m <= B && !in_block) {
                ++out.S;
                in_block = true;
            }
            if (L.side == -1 && R.side == -1) break;
        }
    }
    return out;
}

}  // namespace tperc
