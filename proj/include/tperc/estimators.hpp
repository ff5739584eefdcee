// Monte Carlo campaigns over independent trials.
//
// Trial t of a campaign reads SeedRecord{master_seed, stream, first_trial + t},
// with one stream per observable family, so campaigns never share samples by
// accident and shards with disjoint trial ranges merge into one estimate.
// Every result is bit-identical for any worker count.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tperc/arms.hpp"
#include "tperc/partition.hpp"
#include "tperc/records.hpp"
#include "tperc/stats.hpp"

namespace tperc {

enum class Stream : std::uint64_t {
    Segment = 1,
    LeadingConstant = 2,
    HalfWindows = 3,
    FullWindows = 4,
    Arms = 5,
    WPrime = 6,
    Verify = 7,
};

struct RunOptions {
    std::uint64_t master_seed = 1;
    std::uint64_t trials = 1000;
    std::uint64_t first_trial = 0;
    unsigned workers = 1;
    int truncation = 0;  // 0 selects DomainSpec::default_truncation(n)
};

// Truncation for segment length n; throws ArgumentError if it is below n.
int resolve_truncation(const RunOptions& o, int n);

// Everything a campaign produced: its parameters and raw accumulators (all
// carrying params_fingerprint(params)). Trial counts and ranges are not part
// of the parameters so that shards merge.
struct CampaignData {
    Json params = Json::object();
    std::vector<Accumulator> accumulators;
};

struct SegmentEstimate {
    CampaignData data;
    std::vector<int> ns;
    std::vector<EstimateReport> counts;  // E[count_segment_clusters] per n
};
// All n are read off the same samples (common random numbers) on a domain
// sized for max(ns). Half or full plane.
SegmentEstimate estimate_segment_expectation(std::span<const int> ns, DomainKind kind, const RunOptions& o);

struct LeadingEstimate {
    CampaignData data;
    EstimateReport value;  // P(1 not connected to the ray) - 1/2
};
LeadingEstimate estimate_leading_constant(DomainKind kind, const RunOptions& o);

struct WindowRow {
    int window = 0;
    int lo = 0, hi = 0;  // window (lo, hi]
    EstimateReport T_over_eps;
    // Full plane, cut pipeline only.
    std::optional<EstimateReport> S;
    std::optional<EstimateReport> T_tilde_over_eps;
    std::optional<EstimateReport> B;
};

struct WindowGrid {
    DomainKind kind = DomainKind::HalfPlane;
    ScalePartition partition;
    int truncation = 0;
    EstimateReport f0;      // contributions of k = 2..a(1)
    EstimateReport ray_first;  // f0 + sum_i T(i): ray-first sites in [2, n]
    EstimateReport window_sum;  // sum_i T(i)
    EstimateReport L_hat;   // (f0 + sum_i T(i)) / log n
    std::optional<EstimateReport> L_bound;  // (f0 + sum_i (T~(i) + 2 B(i))) / log n
    std::vector<WindowRow> rows;
};

struct GridOptions {
    bool cut_pipeline = false;  // full plane: also S(i), T~(i) on the cut planes and B(i)
};

struct WindowGridSet {
    CampaignData data;
    std::vector<WindowGrid> grids;  // one per eps, same samples
};
// Half plane: exact interface tracing. Full plane: dense labeling, and with
// cut_pipeline the slit tracer on each CutPlane(a(i+1)) plus B(i).
WindowGridSet estimate_window_grid(int n, std::span<const double> eps, DomainKind kind, const RunOptions& o,
                                   const GridOptions& g = {});

// Rebuilds the per-eps grids from a window campaign's parameters and accumulators.
std::vector<WindowGrid> assemble_window_grids(const CampaignData& data);

struct CutWindowEstimate {
    CampaignData data;
    int window = 0;
    int lo = 0, hi = 0;
    int truncation = 0;
    EstimateReport S;
    EstimateReport T_tilde_over_eps;
};
// One cut-plane window by the slit tracer.
CutWindowEstimate estimate_cut_window(const ScalePartition& p, int window, const RunOptions& o);

struct ArmEstimate {
    CampaignData data;
    int inner = 0;
    ArmKind kind = ArmKind::One;
    std::vector<int> outers;
    std::vector<EstimateReport> probability;
};
// All outer radii from the same samples on one centered box.
ArmEstimate estimate_arm(int inner, std::span<const int> outers, ArmKind kind, const RunOptions& o);

struct ArmRatio {
    CampaignData data;
    int inner = 0, k = 0;
    ArmKind kind = ArmKind::Three;
    EstimateReport at_k, at_2k;
    double ratio = 0.0;
    double ratio_std_error = 0.0;
};
// pi(inner, 2k) / pi(inner, k) with both events taken on the same samples.
ArmRatio estimate_arm_ratio(int inner, int k, ArmKind kind, const RunOptions& o);

struct WPrimeEstimate {
    CampaignData data;
    int k = 0, K = 0;
    double eps = 0.0;
    int truncation = 0;
    EstimateReport W, W_tilde, W_prime, W_and_W_tilde;
};
// Half plane with segment [1, K], K = floor(k (1 + eps)).
WPrimeEstimate estimate_wprime(int k, double eps, const RunOptions& o);

// Sets each base report's doubled_delta from the matching report at 2*truncation.
void attach_doubling(std::span<EstimateReport> base, std::span<const EstimateReport> doubled);

}  // namespace tperc
