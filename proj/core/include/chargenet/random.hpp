#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace chargenet {

/// SplitMix64 finalizer; bijective 64-bit mixing.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent child seed from a root seed and a path of stream ids
/// (replicate, ev index, ...). Same path, same seed, on every platform.
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) noexcept;

/// Stateless uniform in (0, 1) addressed by (seed, a, b, c). Used for common
/// random numbers: the same address yields the same draw regardless of call order.
double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept;

/// Maps 64 random bits to the open interval (0, 1) with 52-bit resolution.
inline double bits_to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Seeded random stream. The engine output is fixed by the standard and the
/// conversions below are our own, so draws are identical across standard libraries.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in (0, 1), never exactly 0 or 1.
    double uniform01() { return bits_to_open_unit(engine_()); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform index in [0, n). n must be > 0.
    std::size_t index(std::size_t n);

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace chargenet
