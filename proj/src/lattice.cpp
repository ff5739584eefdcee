#include "tperc/lattice.hpp"

#include <algorithm>
#include <string>

#include "tperc/errors.hpp"

namespace tperc {

const char* to_string(DomainKind k) {
    switch (k) {
        case DomainKind::HalfPlane: return "half";
        case DomainKind::FullPlane: return "full";
        case DomainKind::CutPlane: return "cut";
    }
    return "?";
}

DomainSpec::DomainSpec(DomainKind kind, int segment_n, int truncation, int cut_end, Box box, bool tapered)
    : kind_(kind), segment_n_(segment_n), truncation_(truncation), cut_end_(cut_end), box_(box), tapered_(tapered) {
    if (truncation < 1) throw ArgumentError("truncation must be positive");
    if (segment_n < 0) throw ArgumentError("segment_n must be nonnegative");
    const int rows = box_.h_hi - box_.h_lo + 1;
    row_m_lo_.resize(static_cast<std::size_t>(rows));
    row_m_hi_.resize(static_cast<std::size_t>(rows));
    row_offset_.resize(static_cast<std::size_t>(rows));
    std::size_t off = 0;
    for (int r = 0; r < rows; ++r) {
        const int h = box_.h_lo + r;
        int lo = box_.m_lo;
        if (kind_ == DomainKind::CutPlane && h == 0) lo = std::max(lo, cut_end_ + 1);
        const int hi = tapered_ ? box_.m_hi - r : box_.m_hi;
        row_m_lo_[static_cast<std::size_t>(r)] = lo;
        row_m_hi_[static_cast<std::size_t>(r)] = hi;
        row_offset_[static_cast<std::size_t>(r)] = off;
        if (lo <= hi) off += static_cast<std::size_t>(hi - lo + 1);
    }
    size_ = off;
}

DomainSpec DomainSpec::half_plane(int n, int L) {
    return {DomainKind::HalfPlane, n, L, 0, Box{-L, n + L, 0, L}, true};
}

DomainSpec DomainSpec::full_plane(int n, int L) {
    return {DomainKind::FullPlane, n, L, 0, Box{-L, n + L, -L, L}};
}

DomainSpec DomainSpec::cut_plane(int n, int L, int cut_end) {
    if (cut_end >= n + L) throw ArgumentError("cut must end inside the box");
    return {DomainKind::CutPlane, n, L, cut_end, Box{-L, n + L, -L, L}};
}

DomainSpec DomainSpec::centered_half_plane(int r) {
    return {DomainKind::HalfPlane, 0, r, 0, Box{-r, r, 0, r}};
}

int DomainSpec::default_truncation(int n) { return std::max(4 * n, 256); }

bool DomainSpec::contains(SiteCoord s) const { return index_of(s) != kAbsent; }

SiteCoord DomainSpec::site_at(std::size_t index) const {
    if (index >= size_) throw DomainError("site index out of range");
    const auto it = std::upper_bound(row_offset_.begin(), row_offset_.end(), index);
    // upper_bound lands past any empty rows sharing the same offset.
    const auto r = static_cast<std::size_t>(it - row_offset_.begin()) - 1;
    return {row_m_lo_[r] + static_cast<int>(index - row_offset_[r]), box_.h_lo + static_cast<int>(r)};
}

bool BoundarySet::contains(SiteCoord s) const { return std::binary_search(sites.begin(), sites.end(), s); }

std::vector<SiteCoord> neighbors(SiteCoord s, const DomainSpec& d) {
    if (!d.contains(s))
        throw DomainError("site (" + std::to_string(s.m) + "," + std::to_string(s.h) + ") outside domain");
    std::vector<SiteCoord> out;
    out.reserve(6);
    for (const auto off : kNeighborOffsets)
        if (d.contains(s + off)) out.push_back(s + off);
    return out;
}

BoundarySet boundary_of_interval(int a, int b, const DomainSpec& d) {
    if (a > b) throw ArgumentError("boundary_of_interval: a > b");
    const Box& bx = d.box();
    if (a < bx.m_lo || b > bx.m_hi || bx.h_lo > 0 || bx.h_hi < 0)
        throw ArgumentError("boundary_of_interval: interval outside truncation box");
    BoundarySet out;
    for (int m = a; m <= b; ++m) {
        for (const auto off : kNeighborOffsets) {
            const SiteCoord t = SiteCoord{m, 0} + off;
            if (t.h == 0 && t.m >= a && t.m <= b) continue;
            if (d.contains(t)) out.sites.push_back(t);
        }
    }
    std::sort(out.sites.begin(), out.sites.end());
    out.sites.erase(std::unique(out.sites.begin(), out.sites.end()), out.sites.end());
    return out;
}

int frame_split(const DomainSpec& d) {
    const int sum = d.box().m_lo + d.row_m_hi(d.box().h_hi);
    return sum >= 0 ? sum / 2 : -((1 - sum) / 2);
}

namespace {

void sort_unique(std::vector<SiteCoord>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<SiteCoord> frame_sites(const DomainSpec& d) {
    const Box& bx = d.box();
    std::vector<SiteCoord> out;
    for (int h = bx.h_lo; h <= bx.h_hi; ++h) {
        if (h == bx.h_lo || h == bx.h_hi) {
            for (int m = d.row_m_lo(h); m <= d.row_m_hi(h); ++m) out.push_back({m, h});
        } else {
            if (d.contains({bx.m_lo, h})) out.push_back({bx.m_lo, h});
            out.push_back({d.row_m_hi(h), h});
        }
    }
    sort_unique(out);
    return out;
}

std::vector<SiteCoord> ray_arc(const DomainSpec& d) {
    const Box& bx = d.box();
    std::vector<SiteCoord> out;
    switch (d.kind()) {
        case DomainKind::HalfPlane: {
            const int s = frame_split(d);
            for (int m = bx.m_lo; m <= 0; ++m) out.push_back({m, 0});
            for (int h = bx.h_lo; h <= bx.h_hi; ++h) out.push_back({bx.m_lo, h});
            for (int m = bx.m_lo; m <= std::min(s + 1, d.row_m_hi(bx.h_hi)); ++m) out.push_back({m, bx.h_hi});
            break;
        }
        case DomainKind::FullPlane:
            for (int m = bx.m_lo; m <= 0; ++m) out.push_back({m, 0});
            for (const auto s : frame_sites(d)) out.push_back(s);
            break;
        case DomainKind::CutPlane:
            out = boundary_of_interval(bx.m_lo, 0, d).sites;
            for (const auto s : frame_sites(d)) out.push_back(s);
            break;
    }
    sort_unique(out);
    return out;
}

std::vector<SiteCoord> far_arc(const DomainSpec& d, int from) {
    if (d.kind() != DomainKind::HalfPlane) throw ArgumentError("far_arc: half-plane domain required");
    const Box& bx = d.box();
    const int s = frame_split(d);
    std::vector<SiteCoord> out;
    for (int m = std::max(from, bx.m_lo); m <= d.row_m_hi(0); ++m) out.push_back({m, 0});
    for (int h = bx.h_lo; h <= bx.h_hi; ++h) out.push_back({d.row_m_hi(h), h});
    for (int m = std::max(s + 1, bx.m_lo); m <= d.row_m_hi(bx.h_hi); ++m) out.push_back({m, bx.h_hi});
    sort_unique(out);
    return out;
}

std::vector<SiteCoord> enumerate_sites(const DomainSpec& d) {
    std::vector<SiteCoord> out;
    out.reserve(d.size());
    const Box& bx = d.box();
    for (int h = bx.h_lo; h <= bx.h_hi; ++h)
        for (int m = d.row_m_lo(h); m <= d.row_m_hi(h); ++m) out.push_back({m, h});
    return out;
}

}  // namespace tperc
