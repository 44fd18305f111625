#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>

namespace sizesched {

/// Deterministic random source used by every sampler.
///
/// The standard library's distributions are implementation defined, so the
/// transforms are spelled out here: uniforms take the top 53 bits of a
/// std::mt19937_64 draw, normals come from the Box-Muller transform with
/// the second variate of each pair cached. Identical seeds therefore give
/// bit-identical workloads on any conforming toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream derived from (seed, stream); used to keep sizes,
    /// gaps and errors decoupled so that changing one parameter does not
    /// reshuffle the others.
    Rng(std::uint64_t seed, std::uint32_t stream) : engine_(mix(seed, stream)) {}

    /// Uniform on the open interval (0, 1).
    double uniform_open() {
        constexpr double kScale = 1.0 / 9007199254740992.0; // 2^-53
        return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
    }

    double standard_normal() {
        if (spare_) {
            double z = *spare_;
            spare_.reset();
            return z;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
        const double angle = 2.0 * std::numbers::pi * uniform_open();
        spare_ = radius * std::sin(angle);
        return radius * std::cos(angle);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    // splitmix64 finalizer over the combined key.
    static std::uint64_t mix(std::uint64_t seed, std::uint32_t stream) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(stream) + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

} // namespace sizesched
