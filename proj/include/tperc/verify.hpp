// Self-checks against brute-force oracles: exhaustive enumeration on toy
// domains, and exact per-sample identities on random samples.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tperc {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t master_seed = 1;
    std::uint64_t samples = 10000;      // identity suite, per identity
    std::uint64_t mc_trials = 100000;   // enumeration suite, Monte Carlo leg
    double mc_sigmas = 5.0;
    unsigned workers = 1;
};

// Exact expectations of the segment count, one- and three-arm events and W'
// from the library versus the oracles over all 2^V configurations (V <= 20),
// plus Monte Carlo means within mc_sigmas standard errors of the exact values.
std::vector<CheckResult> verify_enumeration(const SuiteOptions& o);

// Decomposition, duality, T~ = S - 1{S >= 1} (dense and traced), tracer
// versus dense ray-first sites, and union-find versus BFS; zero violations.
std::vector<CheckResult> verify_identities(const SuiteOptions& o);

}  // namespace tperc
