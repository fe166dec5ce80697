#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mixent {

/// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of substream `stream` under `seed`: mix64(seed ^ mix64(stream + golden)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// FNV-1a over a label, for keying substreams by name.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Seeded random state. Streams derived through derive_seed are treated as
/// independent; one Rng must not be shared across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return normal_(engine_); }
    /// Gamma with the given shape and rate (mean shape/rate).
    double gamma(double shape, double rate);
    double chi_squared(double dof);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace mixent
