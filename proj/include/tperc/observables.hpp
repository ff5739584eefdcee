// Per-sample observables on dense configurations.
//
// Rays are truncated at the box and completed by part of its frame; see
// ray_arc() and far_arc() for the convention. "[-L, 0]" below means ray_arc().
#pragma once

#include <span>
#include <vector>

#include "tperc/configuration.hpp"
#include "tperc/partition.hpp"

namespace tperc {

// Distinct open clusters meeting {1..n} x {0}.
int count_segment_clusters(const Configuration& c);
int count_segment_clusters(const ClusterLabeling& open, int n);

// Pieces of the rewrite count = 1 + sum_k 1{k -/- [1,k-1]} - #closed, with
// 1{k -/- [1,k-1]} = 1{k -/- [-L,k-1]} + 1{k -/- [1,k-1], k <-> [-L,0]}.
struct SegmentDecomposition {
    int count = 0;          // count_segment_clusters
    int closed = 0;         // closed sites in [1, n]
    int not_left = 0;       // sum_{k=2..n} 1{k -/- [-L, k-1]}
    int ray_first = 0;      // sum_{k=2..n} 1{k -/- [1, k-1], k <-> [-L, 0]}
    int not_segment = 0;    // sum_{k=2..n} 1{k -/- [1, k-1]}
    bool one_to_ray = false;  // 1 <-> [-L, 0]
};
SegmentDecomposition decompose_segment(const ClusterLabeling& open, int n);

// Sites k in [1, n] that are open, connected to [-L, 0] and not to [1, k-1]; ascending.
std::vector<int> ray_first_sites(const ClusterLabeling& open, int n);

struct WindowCounts {
    int f0 = 0;                // contributions of k = 2..a(1)
    std::vector<int> T;        // T[i-1] for window i = 1..M
    [[nodiscard]] int total() const;
};

// Bin ray-first sites into the partition windows (sites must lie in [1, n]).
WindowCounts windows_from_first_sites(std::span<const int> first_sites, const ScalePartition& p);

// Per-site definition of T(i).
WindowCounts window_T(const Configuration& c, const ScalePartition& p);
WindowCounts window_T(const ClusterLabeling& open, const ScalePartition& p);
// Cluster definition: open clusters meeting (a(i), a(i+1)], avoiding [1, a(i)] and meeting [-L, 0].
WindowCounts window_T_by_cluster(const ClusterLabeling& open, const ScalePartition& p);

// Cut-plane boundary arcs for window i. The ray arc also holds the sites on the
// truncation frame, standing in for the point at infinity where its upper and
// lower halves meet.
struct CutArcs {
    BoundarySet window;   // boundary of [a(i)+1, a(i+1)]
    BoundarySet ray;      // boundary of [-L, 0] plus frame
    BoundarySet middle;   // boundary of [1, a(i)]
};
CutArcs cut_arcs(const DomainSpec& cut, const ScalePartition& p, int i);

struct CutWindowCounts {
    int S = 0;                 // closed clusters joining window and ray arcs
    int T_tilde = 0;           // S - 1{S >= 1}
    int T_tilde_direct = 0;    // open clusters joining window and ray arcs, avoiding middle arcs
};
// Requires a CutPlane domain with cut_end == a(i+1).
CutWindowCounts window_S(const Configuration& c_cut, const ScalePartition& p, int i);

struct WEvents {
    bool W = false;        // open and closed crossing, closed one below
    bool W_prime = false;  // open and closed crossing
    bool W_tilde = false;  // colour swap of W
};
// Half plane, L = [-Lambda, 1], R = [k, K] with K = floor(k (1+eps)).
// W from the single-window count T(k, K] >= 1 (and its colour swap).
WEvents event_W(const Configuration& c, int k, double eps);
// W from the order of crossing clusters along L: some open crossing cluster has
// its last contact with L strictly left of some closed crossing cluster's.
WEvents event_W_by_order(const Configuration& c, int k, double eps);
int crossing_window_end(int k, double eps);

// Half-plane duality for [1,k], [k,K]: open [1,k] <-> [K, inf) (with the far
// part of the frame counted as infinity) versus closed [-Lambda, 1] <-> [k, K].
struct Duality {
    bool open_to_far = false;
    bool closed_crossing = false;
};
Duality duality_check(const Configuration& c, int k, int K);

enum class BRule : std::uint8_t {
    EitherVertex,  // the two open paths may start at different vertices above k
    SameVertex,    // one vertex carries both open paths
};
// Full plane; true iff B_u(i,k) or B_l(i,k) holds for some k in [1, a(i)].
// Each half of the box is treated as a half plane with its own frame split.
bool event_B(const Configuration& c, const ScalePartition& p, int i, BRule rule = BRule::EitherVertex);
// All windows at once; entry i-1 is window i.
std::vector<bool> event_B_all(const Configuration& c, const ScalePartition& p, BRule rule = BRule::EitherVertex);

}  // namespace tperc
