// Counter-based site randomness.
//
// The state of site (m, h) in trial t of stream s under master seed S is a pure
// function of (S, s, t, m, h). Dense configurations and the lazy exploration
// engines read the same bits, so they see the same sample bit for bit.
#pragma once

#include <cstdint>

namespace tperc {

struct SeedRecord {
    std::uint64_t master_seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t trial = 0;
    friend constexpr bool operator==(const SeedRecord&, const SeedRecord&) = default;
};

// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SiteBits {
public:
    constexpr explicit SiteBits(const SeedRecord& r) noexcept
        : key_(mix64(mix64(mix64(r.master_seed + 0x9e3779b97f4a7c15ULL) ^ (r.stream * 0xd1b54a32d192ed03ULL + 1)) ^
                     (r.trial * 0xabc98388fb8fac03ULL + 2))) {}

    // 64 fair bits covering sites (64*block .. 64*block+63, h).
    [[nodiscard]] constexpr std::uint64_t word(int h, int block) const noexcept {
        const std::uint64_t pack = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(h)) << 32) |
                                   static_cast<std::uint32_t>(block);
        return mix64(key_ ^ (pack * 0x9e3779b97f4a7c15ULL));
    }

    [[nodiscard]] constexpr bool open(int m, int h) const noexcept {
        return ((word(h, m >> 6) >> (static_cast<unsigned>(m) & 63U)) & 1U) != 0;
    }

private:
    std::uint64_t key_;
};

}  // namespace tperc
