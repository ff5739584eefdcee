#include "tperc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "tperc/configuration.hpp"
#include "tperc/errors.hpp"
#include "tperc/explorer.hpp"
#include "tperc/observables.hpp"
#include "tperc/pool.hpp"

namespace tperc {

int resolve_truncation(const RunOptions& o, int n) {
    const int L = o.truncation > 0 ? o.truncation : DomainSpec::default_truncation(n);
    if (L < n) throw ArgumentError("truncation " + std::to_string(L) + " is below the segment length " + std::to_string(n));
    return L;
}

namespace {

std::string eps_tag(double eps) { return format_double(eps); }

// Named accumulators filled trial by trial, then folded in chunk order.
class Bank {
public:
    Bank() = default;
    Bank(std::vector<std::string> names, std::string fingerprint) {
        acc_.reserve(names.size());
        for (auto& n : names) acc_.emplace_back(std::move(n), fingerprint);
    }
    void add(std::size_t slot, double x) { acc_[slot].add(x); }
    [[nodiscard]] const Accumulator& operator[](std::size_t slot) const { return acc_[slot]; }
    void merge(const Bank& o) {
        for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i].merge(o.acc_[i]);
    }
    [[nodiscard]] std::vector<Accumulator> release() && { return std::move(acc_); }

private:
    std::vector<Accumulator> acc_;
};

// body(const SeedRecord&, Bank&) per trial.
template <class Body>
Bank run_bank(const RunOptions& o, Stream stream, const std::vector<std::string>& names, const std::string& fp,
              Body&& body) {
    if (o.trials < 2) throw ArgumentError("at least two trials are required");
    auto chunks = run_chunks<Bank>(o.trials, std::max(1U, o.workers), [&](std::uint64_t first, std::uint64_t last) {
        Bank b(names, fp);
        for (std::uint64_t t = first; t < last; ++t)
            body(SeedRecord{o.master_seed, static_cast<std::uint64_t>(stream), o.first_trial + t}, b);
        return b;
    });
    Bank total(names, fp);
    for (const auto& c : chunks) total.merge(c);
    return total;
}

void require_plane(DomainKind kind, const char* what) {
    if (kind == DomainKind::CutPlane) throw ArgumentError(std::string(what) + ": half or full plane required");
}

DomainSpec plane(DomainKind kind, int n, int L) {
    return kind == DomainKind::HalfPlane ? DomainSpec::half_plane(n, L) : DomainSpec::full_plane(n, L);
}

}  // namespace

SegmentEstimate estimate_segment_expectation(std::span<const int> ns, DomainKind kind, const RunOptions& o) {
    require_plane(kind, "estimate_segment_expectation");
    if (ns.empty()) throw ArgumentError("estimate_segment_expectation: no segment lengths");
    for (const int n : ns)
        if (n < 1) throw ArgumentError("estimate_segment_expectation: n must be positive");
    const int n_max = *std::max_element(ns.begin(), ns.end());
    const int L = resolve_truncation(o, n_max);
    const DomainSpec d = plane(kind, n_max, L);

    SegmentEstimate out;
    out.ns.assign(ns.begin(), ns.end());
    out.data.params = {{"family", "segment"}, {"domain", to_string(kind)}, {"n", out.ns},
                       {"truncation", L},     {"master_seed", o.master_seed}};
    const std::string fp = params_fingerprint(out.data.params);
    std::vector<std::string> names;
    for (const int n : ns) names.push_back("count:n=" + std::to_string(n));

    Bank b = run_bank(o, Stream::Segment, names, fp, [&](const SeedRecord& s, Bank& bank) {
        const ClusterLabeling open = label(sample(d, s), Phase::Open);
        for (std::size_t j = 0; j < ns.size(); ++j)
            bank.add(j, count_segment_clusters(open, ns[j]));
    });
    for (std::size_t j = 0; j < ns.size(); ++j) out.counts.push_back(make_report(b[j], L));
    out.data.accumulators = std::move(b).release();
    return out;
}

LeadingEstimate estimate_leading_constant(DomainKind kind, const RunOptions& o) {
    require_plane(kind, "estimate_leading_constant");
    const int L = resolve_truncation(o, 1);
    const DomainSpec d = plane(kind, 1, L);
    LeadingEstimate out;
    out.data.params = {{"family", "leading"}, {"domain", to_string(kind)}, {"truncation", L},
                       {"master_seed", o.master_seed}};
    const std::string fp = params_fingerprint(out.data.params);
    const auto ray = ray_arc(d);

    Bank b = run_bank(o, Stream::LeadingConstant, {"not_connected"}, fp, [&](const SeedRecord& s, Bank& bank) {
        bool connected = false;
        if (kind == DomainKind::HalfPlane) {
            connected = !trace_ray_first(d, s).first_sites.empty();
        } else {
            const ClusterLabeling open = label(sample(d, s), Phase::Open);
            const auto r = open.root(SiteCoord{1, 0});
            connected = r >= 0 && std::any_of(ray.begin(), ray.end(), [&](SiteCoord t) { return open.root(t) == r; });
        }
        bank.add(0, connected ? 0.0 : 1.0);
    });
    out.value = make_report(b[0], L);
    out.value.observable = "leading_constant";
    out.value.mean -= 0.5;
    out.data.accumulators = std::move(b).release();
    return out;
}

WindowGridSet estimate_window_grid(int n, std::span<const double> eps, DomainKind kind, const RunOptions& o,
                                   const GridOptions& g) {
    require_plane(kind, "estimate_window_grid");
    if (eps.empty()) throw ArgumentError("estimate_window_grid: empty eps grid");
    const bool cut = g.cut_pipeline;
    if (cut && kind != DomainKind::FullPlane) throw ArgumentError("estimate_window_grid: cut pipeline needs the full plane");
    const int L = resolve_truncation(o, n);
    const DomainSpec d = plane(kind, n, L);

    std::vector<ScalePartition> parts;
    for (const double e : eps) parts.push_back(make_partition(n, e));

    WindowGridSet out;
    out.data.params = {{"family", "windows"}, {"domain", to_string(kind)}, {"n", n},
                       {"eps", std::vector<double>(eps.begin(), eps.end())}, {"truncation", L},
                       {"cut_pipeline", cut}, {"master_seed", o.master_seed}};
    const std::string fp = params_fingerprint(out.data.params);

    // Slots: 0 ray_first, then per eps: f0, T(1..M) [, S(1..M), T~(1..M), B(1..M), bound].
    std::vector<std::string> names{"ray_first"};
    std::vector<std::size_t> base;
    for (std::size_t e = 0; e < parts.size(); ++e) {
        const auto tag = eps_tag(eps[e]);
        const int M = parts[e].M;
        base.push_back(names.size());
        names.push_back("f0:eps=" + tag);
        for (int i = 1; i <= M; ++i) names.push_back("T:eps=" + tag + ":i=" + std::to_string(i));
        names.push_back("Tsum:eps=" + tag);
        if (cut) {
            for (int i = 1; i <= M; ++i) names.push_back("S:eps=" + tag + ":i=" + std::to_string(i));
            for (int i = 1; i <= M; ++i) names.push_back("Ttilde:eps=" + tag + ":i=" + std::to_string(i));
            for (int i = 1; i <= M; ++i) names.push_back("B:eps=" + tag + ":i=" + std::to_string(i));
            names.push_back("bound:eps=" + tag);
        }
    }
    auto slot_T = [&](std::size_t e, int i) { return base[e] + static_cast<std::size_t>(i); };
    auto slot_Tsum = [&](std::size_t e) { return base[e] + static_cast<std::size_t>(parts[e].M + 1); };
    auto slot_S = [&](std::size_t e, int i) { return slot_Tsum(e) + static_cast<std::size_t>(i); };
    auto slot_Tt = [&](std::size_t e, int i) { return slot_Tsum(e) + static_cast<std::size_t>(parts[e].M + i); };
    auto slot_B = [&](std::size_t e, int i) { return slot_Tsum(e) + static_cast<std::size_t>(2 * parts[e].M + i); };
    auto slot_bound = [&](std::size_t e) { return slot_Tsum(e) + static_cast<std::size_t>(3 * parts[e].M + 1); };

    // Cut domains per (eps, window), built once.
    std::vector<std::vector<std::optional<DomainSpec>>> cut_domains(parts.size());
    if (cut) {
        for (std::size_t e = 0; e < parts.size(); ++e)
            for (int i = 1; i <= parts[e].M; ++i)
                cut_domains[e].push_back(parts[e].degenerate(i)
                                             ? std::nullopt
                                             : std::optional<DomainSpec>(DomainSpec::cut_plane(n, L, parts[e].upper(i))));
    }

    const double log_n = std::log(static_cast<double>(n));
    const Stream stream = kind == DomainKind::HalfPlane ? Stream::HalfWindows : Stream::FullWindows;
    Bank b = run_bank(o, stream, names, fp, [&](const SeedRecord& s, Bank& bank) {
        std::vector<int> first;
        std::optional<Configuration> conf;
        if (kind == DomainKind::HalfPlane) {
            first = trace_ray_first(d, s).first_sites;
        } else {
            conf.emplace(sample(d, s));
            first = ray_first_sites(label(*conf, Phase::Open), n);
        }
        bank.add(0, static_cast<double>(std::count_if(first.begin(), first.end(), [](int k) { return k >= 2; })));
        for (std::size_t e = 0; e < parts.size(); ++e) {
            const ScalePartition& p = parts[e];
            const WindowCounts w = windows_from_first_sites(first, p);
            bank.add(base[e], w.f0);
            for (int i = 1; i <= p.M; ++i) bank.add(slot_T(e, i), w.T[static_cast<std::size_t>(i - 1)]);
            bank.add(slot_Tsum(e), w.total());
            if (!cut) continue;
            const std::vector<bool> B = event_B_all(*conf, p);
            double bound = w.f0;
            for (int i = 1; i <= p.M; ++i) {
                int S = 0;
                if (const auto& dc = cut_domains[e][static_cast<std::size_t>(i - 1)]) S = trace_cut_window(*dc, p.lower(i), s).S;
                const int Tt = S - (S >= 1 ? 1 : 0);
                const bool Bi = B[static_cast<std::size_t>(i - 1)];
                bank.add(slot_S(e, i), S);
                bank.add(slot_Tt(e, i), Tt);
                bank.add(slot_B(e, i), Bi ? 1.0 : 0.0);
                bound += Tt + (Bi ? 2.0 : 0.0);
            }
            bank.add(slot_bound(e), bound / log_n);
        }
    });

    out.data.accumulators = std::move(b).release();
    out.grids = assemble_window_grids(out.data);
    return out;
}

std::vector<WindowGrid> assemble_window_grids(const CampaignData& data) {
    const Json& P = data.params;
    if (P.value("family", "") != "windows") throw ArgumentError("assemble_window_grids: not a window campaign");
    std::map<std::string, const Accumulator*> by_name;
    for (const auto& a : data.accumulators) by_name[a.observable()] = &a;
    auto get = [&](const std::string& name) -> const Accumulator& {
        const auto it = by_name.find(name);
        if (it == by_name.end()) throw ArgumentError("window campaign lacks observable " + name);
        return *it->second;
    };
    const int n = P.at("n").get<int>();
    const int L = P.at("truncation").get<int>();
    const bool cut = P.value("cut_pipeline", false);
    const std::string kind_name = P.at("domain").get<std::string>();
    const DomainKind kind = kind_name == "full" ? DomainKind::FullPlane : DomainKind::HalfPlane;
    const double log_n = std::log(static_cast<double>(n));

    std::vector<WindowGrid> grids;
    for (const double e : P.at("eps").get<std::vector<double>>()) {
        const ScalePartition p = make_partition(n, e);
        const auto tag = eps_tag(e);
        WindowGrid grid;
        grid.kind = kind;
        grid.partition = p;
        grid.truncation = L;
        grid.f0 = make_report(get("f0:eps=" + tag), L);
        grid.ray_first = make_report(get("ray_first"), L);
        grid.window_sum = make_report(get("Tsum:eps=" + tag), L);
        grid.L_hat = make_report(get("ray_first"), L, 1.0 / log_n);
        grid.L_hat.observable = "L_hat:eps=" + tag;
        if (cut) grid.L_bound = make_report(get("bound:eps=" + tag), L);
        for (int i = 1; i <= p.M; ++i) {
            const auto it = ":i=" + std::to_string(i);
            WindowRow row;
            row.window = i;
            row.lo = p.lower(i);
            row.hi = p.upper(i);
            row.T_over_eps = make_report(get("T:eps=" + tag + it), L, 1.0 / e);
            if (cut) {
                row.S = make_report(get("S:eps=" + tag + it), L);
                row.T_tilde_over_eps = make_report(get("Ttilde:eps=" + tag + it), L, 1.0 / e);
                row.B = make_report(get("B:eps=" + tag + it), L);
            }
            grid.rows.push_back(std::move(row));
        }
        grids.push_back(std::move(grid));
    }
    return grids;
}

CutWindowEstimate estimate_cut_window(const ScalePartition& p, int window, const RunOptions& o) {
    if (window < 1 || window > p.M) throw ArgumentError("estimate_cut_window: window index out of range");
    if (p.degenerate(window)) throw ArgumentError("estimate_cut_window: degenerate window");
    const int L = resolve_truncation(o, p.n);
    const DomainSpec dc = DomainSpec::cut_plane(p.n, L, p.upper(window));
    CutWindowEstimate out;
    out.window = window;
    out.lo = p.lower(window);
    out.hi = p.upper(window);
    out.truncation = L;
    out.data.params = {{"family", "cut_window"}, {"n", p.n}, {"eps", p.eps}, {"window", window},
                       {"truncation", L},        {"master_seed", o.master_seed}};
    const std::string fp = params_fingerprint(out.data.params);
    Bank b = run_bank(o, Stream::FullWindows, {"S", "Ttilde"}, fp, [&](const SeedRecord& s, Bank& bank) {
        const int S = trace_cut_window(dc, out.lo, s).S;
        bank.add(0, S);
        bank.add(1, S - (S >= 1 ? 1 : 0));
    });
    out.S = make_report(b[0], L);
    out.T_tilde_over_eps = make_report(b[1], L, 1.0 / p.eps);
    out.data.accumulators = std::move(b).release();
    return out;
}

ArmEstimate estimate_arm(int inner, std::span<const int> outers, ArmKind kind, const RunOptions& o) {
    if (outers.empty()) throw ArgumentError("estimate_arm: no outer radii");
    std::vector<int> radii(outers.begin(), outers.end());
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    if (inner < 0 || inner >= radii.front()) throw ArgumentError("estimate_arm: need 0 <= inner < outer");
    const DomainSpec d = DomainSpec::centered_half_plane(radii.back());

    ArmEstimate out;
    out.inner = inner;
    out.kind = kind;
    out.outers = radii;
    out.data.params = {{"family", "arm"}, {"kind", to_string(kind)}, {"inner", inner}, {"outer", radii},
                       {"master_seed", o.master_seed}};
    const std::string fp = params_fingerprint(out.data.params);
    std::vector<std::string> names;
    for (const int r : radii) names.push_back("arm:outer=" + std::to_string(r));

    Bank b = run_bank(o, Stream::Arms, names, fp, [&](const SeedRecord& s, Bank& bank) {
        const Configuration c = sample(d, s);
        // Arm events shrink as the outer radius grows.
        bool alive = true;
        for (std::size_t j = 0; j < radii.size(); ++j) {
            alive = alive && arm_indicator(c, inner, radii[j], kind);
            bank.add(j, alive ? 1.0 : 0.0);
        }
    });
    for (std::size_t j = 0; j < radii.size(); ++j) out.probability.push_back(make_report(b[j], radii.back()));
    out.data.accumulators = std::move(b).release();
    return out;
}

ArmRatio estimate_arm_ratio(int inner, int k, ArmKind kind, const RunOptions& o) {
    if (inner < 0 || inner >= k) throw ArgumentError("estimate_arm_ratio: need 0 <= inner < k");
    const DomainSpec d = DomainSpec::centered_half_plane(2 * k);
    ArmRatio out;
    out.inner = inner;
    out.k = k;
    out.kind = kind;
    out.data.params = {{"family", "arm_ratio"}, {"kind", to_string(kind)}, {"inner", inner}, {"k", k},
                       {"master_seed", o.master_seed}};
    const std::string fp = params_fingerprint(out.data.params);
    Bank b = run_bank(o, Stream::Arms, {"arm:k", "arm:2k", "arm:k*2k"}, fp, [&](const SeedRecord& s, Bank& bank) {
        const Configuration c = sample(d, s);
        const bool near = arm_indicator(c, inner, k, kind);
        const bool far = near && arm_indicator(c, inner, 2 * k, kind);
        bank.add(0, near ? 1.0 : 0.0);
        bank.add(1, far ? 1.0 : 0.0);
        bank.add(2, near && far ? 1.0 : 0.0);
    });
    out.at_k = make_report(b[0], 2 * k);
    out.at_2k = make_report(b[1], 2 * k);
    const auto r = ratio_of_means(b[0], b[1], b[2]);
    out.ratio = r.ratio;
    out.ratio_std_error = r.std_error;
    out.data.accumulators = std::move(b).release();
    return out;
}

WPrimeEstimate estimate_wprime(int k, double eps, const RunOptions& o) {
    const int K = crossing_window_end(k, eps);
    if (k < 2 || K <= k) throw ArgumentError("estimate_wprime: need 2 <= k < k(1+eps)");
    const int L = resolve_truncation(o, K);
    const DomainSpec d = DomainSpec::half_plane(K, L);
    WPrimeEstimate out;
    out.k = k;
    out.K = K;
    out.eps = eps;
    out.truncation = L;
    out.data.params = {{"family", "wprime"}, {"k", k}, {"eps", eps}, {"truncation", L}, {"master_seed", o.master_seed}};
    const std::string fp = params_fingerprint(out.data.params);
    auto crosses = [&](const std::vector<int>& first) {
        return std::any_of(first.begin(), first.end(), [&](int x) { return x > k && x <= K; });
    };
    Bank b = run_bank(o, Stream::WPrime, {"W", "W_tilde", "W_prime", "W_and_W_tilde"}, fp,
                      [&](const SeedRecord& s, Bank& bank) {
                          const bool w = crosses(trace_ray_first(d, s, Phase::Open).first_sites);
                          const bool wt = crosses(trace_ray_first(d, s, Phase::Closed).first_sites);
                          bank.add(0, w);
                          bank.add(1, wt);
                          bank.add(2, w || wt);
                          bank.add(3, w && wt);
                      });
    out.W = make_report(b[0], L);
    out.W_tilde = make_report(b[1], L);
    out.W_prime = make_report(b[2], L);
    out.W_and_W_tilde = make_report(b[3], L);
    out.data.accumulators = std::move(b).release();
    return out;
}

void attach_doubling(std::span<EstimateReport> base, std::span<const EstimateReport> doubled) {
    if (base.size() != doubled.size()) throw ArgumentError("attach_doubling: report lists differ in length");
    for (std::size_t j = 0; j < base.size(); ++j) {
        if (doubled[j].truncation != 2 * base[j].truncation)
            throw ArgumentError("attach_doubling: truncation is not doubled");
        base[j].doubled_delta = doubled[j].mean - base[j].mean;
    }
}

}  // namespace tperc
