#pragma once

#include <cstdint>

namespace ldposc::rng {

/// Weyl increment of SplitMix64 (odd, ~2^64 / golden ratio).
inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 output function (Stafford variant 13). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Key of the independent stream number `index` under `master_seed`:
///   key = mix64(master_seed + kGolden * mix64(index + 1))
/// Derived keys depend only on (master_seed, index), never on scheduling.
constexpr std::uint64_t derive_key(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return mix64(master_seed + kGolden * mix64(index + 1));
}

/// Counter-based stream: the k-th output (k = 0, 1, ...) is
///   mix64(key + kGolden * (k + 1)),
/// i.e. SplitMix64 started at `key`. Any draw is addressable without
/// advancing through the earlier ones.
class Stream {
public:
    explicit constexpr Stream(std::uint64_t key) noexcept : key_(key) {}

    /// Stream number `index` of the family rooted at `master_seed`.
    static constexpr Stream for_index(std::uint64_t master_seed, std::uint64_t index) noexcept {
        return Stream(derive_key(master_seed, index));
    }

    constexpr std::uint64_t next_u64() noexcept {
        ++counter_;
        return mix64(key_ + kGolden * counter_);
    }

    /// Uniform on the open interval (0, 1): (top 53 bits + 1/2) * 2^-53.
    constexpr double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw by inverse-CDF transform of one uniform.
    double next_normal() noexcept;

    constexpr std::uint64_t key() const noexcept { return key_; }
    constexpr std::uint64_t position() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Standard normal quantile Phi^{-1}(p) for p in (0, 1), Wichura's AS241
/// (PPND16), relative accuracy about 1e-16. Returns -inf/+inf at p = 0/1 and
/// NaN outside [0, 1].
double normal_quantile(double p) noexcept;

}  // namespace ldposc::rng
