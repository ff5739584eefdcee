// Site configurations and union-find cluster labeling.
#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tperc/lattice.hpp"
#include "tperc/rng.hpp"

namespace tperc {

enum class Phase : std::uint8_t { Closed = 0, Open = 1 };

constexpr Phase opposite(Phase p) { return p == Phase::Open ? Phase::Closed : Phase::Open; }

class Configuration {
public:
    // states[i] is 1 for open, 0 for closed, indexed by the domain's dense index.
    Configuration(DomainSpec domain, std::vector<std::uint8_t> states, std::optional<SeedRecord> seed = {});

    static Configuration uniform(DomainSpec domain, bool open);

    [[nodiscard]] const DomainSpec& domain() const { return domain_; }
    [[nodiscard]] const std::optional<SeedRecord>& seed_record() const { return seed_; }
    [[nodiscard]] std::span<const std::uint8_t> states() const { return states_; }

    [[nodiscard]] bool open_at(std::size_t i) const { return states_[i] != 0; }
    // Throws DomainError if s is not a site of the domain.
    [[nodiscard]] bool open(SiteCoord s) const;
    [[nodiscard]] bool has(SiteCoord s, Phase p) const {
        const auto i = domain_.index_of(s);
        return i != kAbsent && states_[static_cast<std::size_t>(i)] == static_cast<std::uint8_t>(p);
    }

    // Hand construction of test patterns; clears the seed record.
    void set(SiteCoord s, bool open);

private:
    DomainSpec domain_;
    std::vector<std::uint8_t> states_;
    std::optional<SeedRecord> seed_;
};

// Fair p = 1/2 sample keyed by the seed record.
Configuration sample(const DomainSpec& d, const SeedRecord& seed);

struct RowRange {
    int h_min = INT_MIN;
    int h_max = INT_MAX;
};

// Components of the sites of one phase, optionally restricted to a band of rows.
class ClusterLabeling {
public:
    ClusterLabeling(const Configuration& c, Phase phase, RowRange rows = {});

    [[nodiscard]] Phase phase() const { return phase_; }
    // Representative index, or -1 if the site is not of this phase (or outside the band).
    [[nodiscard]] std::int32_t root(std::size_t index) const { return root_[index]; }
    [[nodiscard]] std::int32_t root(SiteCoord s) const {
        const auto i = domain_.index_of(s);
        return i == kAbsent ? -1 : root_[static_cast<std::size_t>(i)];
    }
    [[nodiscard]] bool connected(SiteCoord a, SiteCoord b) const {
        const auto ra = root(a);
        return ra >= 0 && ra == root(b);
    }
    [[nodiscard]] std::size_t cluster_count() const { return clusters_; }
    [[nodiscard]] const DomainSpec& domain() const { return domain_; }

private:
    DomainSpec domain_;
    Phase phase_;
    std::vector<std::int32_t> root_;
    std::size_t clusters_ = 0;
};

ClusterLabeling label(const Configuration& c, Phase phase, RowRange rows = {});

// Breadth-first component labels (0..k-1, -1 for other phase); reference oracle for label().
std::vector<std::int32_t> bfs_components(const Configuration& c, Phase phase);

}  // namespace tperc
