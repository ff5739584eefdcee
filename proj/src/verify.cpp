#include "tperc/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "tperc/arms.hpp"
#include "tperc/configuration.hpp"
#include "tperc/estimators.hpp"
#include "tperc/explorer.hpp"
#include "tperc/observables.hpp"
#include "tperc/oracle.hpp"
#include "tperc/pool.hpp"
#include "tperc/records.hpp"

namespace tperc {

namespace {

// Exact expectation from the library and from the oracle, as integer sums over
// all configurations, then a Monte Carlo mean of the library observable.
struct ToyCase {
    std::string name;
    DomainSpec domain;
    std::function<double(const Configuration&)> library;
    std::function<double(const Configuration&)> reference;
};

CheckResult run_toy(const ToyCase& t, const SuiteOptions& o, std::uint64_t stream) {
    double lib_sum = 0.0, ref_sum = 0.0;
    std::uint64_t disagreements = 0, total = 0;
    oracle::for_each_configuration(t.domain, [&](const Configuration& c) {
        const double a = t.library(c), b = t.reference(c);
        lib_sum += a;
        ref_sum += b;
        disagreements += a != b;
        ++total;
    });
    const double exact = ref_sum / static_cast<double>(total);

    auto chunks = run_chunks<Accumulator>(o.mc_trials, std::max(1U, o.workers), [&](std::uint64_t first, std::uint64_t last) {
        Accumulator acc(t.name, "");
        for (std::uint64_t i = first; i < last; ++i)
            acc.add(t.library(sample(t.domain, SeedRecord{o.master_seed, stream, i})));
        return acc;
    });
    Accumulator mc(t.name, "");
    for (const auto& c : chunks) mc.merge(c);
    const double z = mc.std_error() > 0.0 ? (mc.mean() - exact) / mc.std_error() : (mc.mean() == exact ? 0.0 : INFINITY);

    CheckResult r;
    r.name = t.name;
    r.pass = disagreements == 0 && lib_sum == ref_sum && std::abs(z) <= o.mc_sigmas;
    std::ostringstream d;
    d.precision(10);
    d << "sites=" << t.domain.size() << " exact=" << exact << " library_exact=" << lib_sum / static_cast<double>(total)
      << " mismatched_configs=" << disagreements << " mc=" << mc.mean() << "+-" << mc.std_error() << " z=" << z;
    r.detail = d.str();
    return r;
}

}  // namespace

std::vector<CheckResult> verify_enumeration(const SuiteOptions& o) {
    std::vector<ToyCase> cases;
    for (const auto& d : {DomainSpec::half_plane(2, 2), DomainSpec::full_plane(1, 1)}) {
        const int n = d.segment_n();
        cases.push_back({std::string("segment_count:") + to_string(d.kind()), d,
                         [](const Configuration& c) { return static_cast<double>(count_segment_clusters(c)); },
                         [n](const Configuration& c) { return static_cast<double>(oracle::segment_count(c, n)); }});
    }
    for (const auto& [inner, outer] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        const auto d = DomainSpec::centered_half_plane(2);
        const auto tag = "(" + std::to_string(inner) + "," + std::to_string(outer) + ")";
        cases.push_back({"pi1" + tag, d,
                         [=](const Configuration& c) { return arm_indicator(c, inner, outer, ArmKind::One) ? 1.0 : 0.0; },
                         [=](const Configuration& c) { return oracle::arm_reach(c, inner, outer, Phase::Open) ? 1.0 : 0.0; }});
        cases.push_back({"pi3" + tag, d,
                         [=](const Configuration& c) { return arm_indicator(c, inner, outer, ArmKind::Three) ? 1.0 : 0.0; },
                         [=](const Configuration& c) { return oracle::three_arm(c, inner, outer) ? 1.0 : 0.0; }});
    }
    {
        // Rows [-1, 4] and [-1, 3]; left arc = row 0 up to 1, the left wall and
        // the top row up to one past its middle; right stretch [2, 3].
        const auto d = DomainSpec::half_plane(3, 1);
        auto left = oracle::row0(-1, 1);
        for (int m = -1; m <= 2; ++m) left.push_back({m, 1});
        cases.push_back({"W_prime(k=2,eps=0.5)", d,
                         [](const Configuration& c) { return event_W(c, 2, 0.5).W_prime ? 1.0 : 0.0; },
                         [left](const Configuration& c) {
                             const oracle::Components open(c, Phase::Open), closed(c, Phase::Closed);
                             const auto right = oracle::row0(2, 3);
                             return oracle::meet(open.of(left), open.of(right)) &&
                                            oracle::meet(closed.of(left), closed.of(right))
                                        ? 1.0
                                        : 0.0;
                         }});
    }
    std::vector<CheckResult> out;
    std::uint64_t stream = 100;
    for (const auto& c : cases) out.push_back(run_toy(c, o, stream++));
    return out;
}

namespace {

using Violations = std::map<std::string, std::uint64_t>;

CheckResult identity_result(const std::string& name, std::uint64_t violations, std::uint64_t samples) {
    return {name, violations == 0,
            "samples=" + std::to_string(samples) + " violations=" + std::to_string(violations)};
}

template <class Body>
std::uint64_t count_violations(const SuiteOptions& o, std::uint64_t stream, Body&& body) {
    auto chunks = run_chunks<std::uint64_t>(o.samples, std::max(1U, o.workers), [&](std::uint64_t first, std::uint64_t last) {
        std::uint64_t v = 0;
        for (std::uint64_t i = first; i < last; ++i) v += body(SeedRecord{o.master_seed, stream, i});
        return v;
    });
    std::uint64_t total = 0;
    for (const auto c : chunks) total += c;
    return total;
}

}  // namespace

std::vector<CheckResult> verify_identities(const SuiteOptions& o) {
    std::vector<CheckResult> out;

    for (const auto& d : {DomainSpec::half_plane(48, 64), DomainSpec::full_plane(24, 32)}) {
        const int n = d.segment_n();
        const auto p = make_partition(n, 0.5);
        const auto v = count_violations(o, 200, [&](const SeedRecord& s) {
            const Configuration c = sample(d, s);
            const ClusterLabeling open = label(c, Phase::Open);
            const auto dec = decompose_segment(open, n);
            const auto w = window_T(open, p);
            std::uint64_t bad = 0;
            bad += dec.count != 1 + dec.not_segment - dec.closed;
            bad += dec.not_segment != dec.not_left + dec.ray_first;
            bad += dec.count != oracle::segment_count(c, n);
            bad += w.total() != dec.ray_first;
            return bad;
        });
        out.push_back(identity_result(std::string("decomposition:") + to_string(d.kind()), v, o.samples));
    }

    {
        const auto d = DomainSpec::half_plane(40, 40);
        const auto v = count_violations(o, 201, [&](const SeedRecord& s) {
            const Configuration c = sample(d, s);
            std::uint64_t bad = 0;
            for (const auto& [k, K] : {std::pair{8, 16}, std::pair{5, 12}, std::pair{16, 40}}) {
                const auto du = duality_check(c, k, K);
                bad += du.open_to_far == du.closed_crossing;
            }
            return bad;
        });
        out.push_back(identity_result("duality", v, o.samples));
    }

    {
        const int n = 80;
        const auto p = make_partition(n, 0.25);
        const int i = p.M;
        const auto dc = DomainSpec::cut_plane(n, n, p.upper(i));
        const auto v = count_violations(o, 202, [&](const SeedRecord& s) {
            const auto w = window_S(sample(dc, s), p, i);
            std::uint64_t bad = 0;
            bad += w.T_tilde != w.S - (w.S >= 1 ? 1 : 0);
            bad += w.T_tilde_direct != w.T_tilde;
            bad += trace_cut_window(dc, p.lower(i), s).S != w.S;
            return bad;
        });
        out.push_back(identity_result("cut_window:T_tilde=S-1{S>=1}", v, o.samples));
    }

    {
        const auto d = DomainSpec::half_plane(64, 64);
        const auto v = count_violations(o, 203, [&](const SeedRecord& s) {
            const ClusterLabeling open = label(sample(d, s), Phase::Open);
            return static_cast<std::uint64_t>(trace_ray_first(d, s).first_sites != ray_first_sites(open, 64));
        });
        out.push_back(identity_result("tracer=dense", v, o.samples));
    }

    {
        const auto d = DomainSpec::full_plane(16, 16);
        const auto v = count_violations(o, 204, [&](const SeedRecord& s) {
            const Configuration c = sample(d, s);
            std::uint64_t bad = 0;
            for (const Phase ph : {Phase::Open, Phase::Closed}) {
                const ClusterLabeling lab = label(c, ph);
                const auto bfs = bfs_components(c, ph);
                // Root <-> component must be a bijection.
                std::map<std::int32_t, std::int32_t> fwd, back;
                for (std::size_t j = 0; j < d.size(); ++j) {
                    const auto r = lab.root(j);
                    const auto b = bfs[j];
                    if ((r < 0) != (b < 0)) {
                        ++bad;
                        continue;
                    }
                    if (r < 0) continue;
                    const auto [f, fresh_f] = fwd.try_emplace(r, b);
                    const auto [g, fresh_g] = back.try_emplace(b, r);
                    bad += f->second != b || g->second != r;
                }
                bad += fwd.size() != lab.cluster_count();
            }
            return bad;
        });
        out.push_back(identity_result("union_find=bfs", v, o.samples));
    }
    return out;
}

}  // namespace tperc
