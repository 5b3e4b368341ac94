#pragma once

#include <array>
#include <cstdint>

namespace rds {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
/// Output is a pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to derive well-separated stream ids.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream id for sample `index` of the experiment tagged `tag`.
constexpr std::uint64_t stream_id_for(std::uint64_t tag, std::uint64_t index) noexcept {
    return mix64(mix64(tag) ^ index);
}

/// One noise realization omega = (alpha_1, alpha_2, ...) of i.i.d. Uniform[0,1) draws.
///
/// draw(k) depends only on (seed, stream_id, offset + k), so streams can be
/// read at random positions and from any thread. Draws are indexed from 1:
/// the k-th map applied consumes draw(k). shift(m) realizes the time shift
/// theta^m without copying any state.
class NoiseStream {
public:
    constexpr NoiseStream() = default;
    constexpr NoiseStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t offset = 0) noexcept
        : seed_(seed), stream_id_(stream_id), offset_(offset) {}

    double draw(std::uint64_t k) const noexcept;

    NoiseStream shift(std::uint64_t m) const noexcept { return {seed_, stream_id_, offset_ + m}; }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t cursor() const noexcept { return offset_; }

    friend bool operator==(const NoiseStream&, const NoiseStream&) = default;

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t offset_ = 0;
};

} // namespace rds
