// Triangular-lattice geometry in the basis {1, j = e^{i pi/3}}.
//
// A site m + h*j is stored as SiteCoord{m, h}. Domains are finite boxes in
// these coordinates; the cut plane additionally removes the part of row h = 0
// left of (and including) cut_end. Half-plane rows lose one site on the right
// per row, which makes the domain a trapezoid symmetric about the vertical
// line through the middle of row 0.
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tperc {

struct SiteCoord {
    int m = 0;
    int h = 0;
    friend constexpr auto operator<=>(const SiteCoord&, const SiteCoord&) = default;
    friend constexpr SiteCoord operator+(SiteCoord a, SiteCoord b) { return {a.m + b.m, a.h + b.h}; }
};

// Fixed iteration order used by neighbors().
inline constexpr std::array<SiteCoord, 6> kNeighborOffsets{
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}};

// Same six offsets sorted counterclockwise by angle, starting at 1.
inline constexpr std::array<SiteCoord, 6> kCcwOffsets{
    {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

enum class DomainKind : std::uint8_t { HalfPlane, FullPlane, CutPlane };

const char* to_string(DomainKind k);

struct Box {
    int m_lo = 0, m_hi = 0, h_lo = 0, h_hi = 0;
    [[nodiscard]] constexpr bool contains(SiteCoord s) const {
        return s.m >= m_lo && s.m <= m_hi && s.h >= h_lo && s.h <= h_hi;
    }
    friend constexpr bool operator==(const Box&, const Box&) = default;
};

inline constexpr std::ptrdiff_t kAbsent = -1;

class DomainSpec {
public:
    // Rows h = 0..L, row h spanning [-L, n+L-h].
    static DomainSpec half_plane(int segment_n, int truncation);
    // Box [-L, n+L] x [-L, L].
    static DomainSpec full_plane(int segment_n, int truncation);
    // Full-plane box minus {(m, 0) : m <= cut_end}.
    static DomainSpec cut_plane(int segment_n, int truncation, int cut_end);
    // Box [-r, r] x [0, r] (not tapered), used for arm events.
    static DomainSpec centered_half_plane(int radius);

    static int default_truncation(int segment_n);

    [[nodiscard]] DomainKind kind() const { return kind_; }
    [[nodiscard]] int segment_n() const { return segment_n_; }
    [[nodiscard]] int truncation() const { return truncation_; }
    [[nodiscard]] int cut_end() const { return cut_end_; }
    // Bounding box; see row_m_hi() for the right end of each row.
    [[nodiscard]] const Box& box() const { return box_; }

    [[nodiscard]] bool contains(SiteCoord s) const;
    [[nodiscard]] std::size_t size() const { return size_; }

    // Dense index of s, or kAbsent if s is not a site of the domain.
    [[nodiscard]] std::ptrdiff_t index_of(SiteCoord s) const {
        if (s.h < box_.h_lo || s.h > box_.h_hi) return kAbsent;
        const auto r = static_cast<std::size_t>(s.h - box_.h_lo);
        if (s.m < row_m_lo_[r] || s.m > row_m_hi_[r]) return kAbsent;
        return static_cast<std::ptrdiff_t>(row_offset_[r]) + (s.m - row_m_lo_[r]);
    }
    [[nodiscard]] SiteCoord site_at(std::size_t index) const;

    // Row h is the contiguous run [row_m_lo(h), row_m_hi(h)] (possibly empty).
    [[nodiscard]] int row_m_lo(int h) const { return row_m_lo_[static_cast<std::size_t>(h - box_.h_lo)]; }
    [[nodiscard]] int row_m_hi(int h) const { return row_m_hi_[static_cast<std::size_t>(h - box_.h_lo)]; }
    [[nodiscard]] std::size_t row_offset(int h) const {
        return row_offset_[static_cast<std::size_t>(h - box_.h_lo)];
    }

    friend bool operator==(const DomainSpec& a, const DomainSpec& b) {
        return a.kind_ == b.kind_ && a.segment_n_ == b.segment_n_ && a.truncation_ == b.truncation_ &&
               a.cut_end_ == b.cut_end_ && a.box_ == b.box_ && a.tapered_ == b.tapered_;
    }

private:
    DomainSpec(DomainKind kind, int segment_n, int truncation, int cut_end, Box box, bool tapered = false);

    DomainKind kind_;
    int segment_n_;
    int truncation_;
    int cut_end_;
    Box box_;
    bool tapered_ = false;
    std::vector<int> row_m_lo_, row_m_hi_;
    std::vector<std::size_t> row_offset_;
    std::size_t size_ = 0;
};

struct BoundarySet {
    std::vector<SiteCoord> sites;  // sorted, unique
    [[nodiscard]] bool contains(SiteCoord s) const;
};

// Neighbors of s inside d, in kNeighborOffsets order. Throws DomainError if s is not in d.
std::vector<SiteCoord> neighbors(SiteCoord s, const DomainSpec& d);

// Sites of d adjacent (plain triangular adjacency) to some site of [a, b] x {0},
// excluding the interval itself. Throws ArgumentError if a > b or the interval
// leaves the truncation box.
BoundarySet boundary_of_interval(int a, int b, const DomainSpec& d);

// Truncated rays. The domain frame stands in for the point at infinity. In the
// half plane the frame is split at the middle of the top row: the left wall and
// top-left part belong to (-inf, 0], the right wall and top-right part to
// [x, inf). In the full and cut planes infinity touches only the ray, so the
// whole frame belongs to it.
//
// Outside the domain, the virtual site (m, h_hi + 1) belongs to the ray iff m <= frame_split(d).
int frame_split(const DomainSpec& d);

// Sites of d in contact with (-inf, 0], sorted.
std::vector<SiteCoord> ray_arc(const DomainSpec& d);

// Half plane: sites of d in contact with [from, inf), sorted.
std::vector<SiteCoord> far_arc(const DomainSpec& d, int from);

// Sites of d on the border of the domain (first and last rows, row ends), sorted.
std::vector<SiteCoord> frame_sites(const DomainSpec& d);

// All sites of d; position in the vector is the dense index.
std::vector<SiteCoord> enumerate_sites(const DomainSpec& d);

}  // namespace tperc
