#pragma once

#include <array>
#include <cstdint>

namespace evt {

/// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of substream `index` under `master_seed`:
///
///     substream_seed(m, i) = mix64(m ^ mix64(i + 0x9E3779B97F4A7C15))
///
/// Frozen; changing it changes every simulated number.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Portable random stream: xoshiro256** 1.0 (Blackman & Vigna, 2018).
///
/// Seeding: the four state words are the first four outputs of SplitMix64
/// started at `seed`, i.e. with g = 0x9E3779B97F4A7C15 and s_k = mix64(seed + k*g),
/// k = 1..4. Step and output follow the reference implementation:
///
///     result = rotl(s1 * 5, 7) * 9
///     t = s1 << 17
///     s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
///
/// Uniform doubles use the top 53 bits shifted to the cell centre,
/// u = ((x >> 11) + 0.5) * 2^-53, so 0 < u < 1 always holds.
class RngState {
public:
    explicit RngState(std::uint64_t master_seed) noexcept;

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    const std::array<std::uint64_t, 4>& words() const noexcept { return s_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform in the open interval (0, 1).
    double uniform() noexcept;

    /// Independent stream for replicate/path `index`, seeded by substream_seed.
    RngState substream(std::uint64_t index) const noexcept;

private:
    std::uint64_t master_seed_;
    std::array<std::uint64_t, 4> s_{};
};

/// Default seed of every command-line run when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20240601ULL;

}  // namespace evt
