#pragma once

#include "mixent/mixture.hpp"

#include <cstddef>
#include <cstdint>

namespace mixent {

struct McResult {
    double estimate = 0.0;  ///< nats
    double std_error = 0.0; ///< sample standard deviation / sqrt(samples)
    std::size_t samples = 0;
};

/// Monte Carlo entropy: mean of -ln p_X over `samples` draws.
///
/// The draws are split into `shards` contiguous blocks; block k uses the
/// substream derive_seed(seed, k) and the per-block moments are merged in
/// block order, so the result depends only on (seed, samples, shards).
McResult mc_entropy(const MixtureModel& mix, std::size_t samples, std::uint64_t seed, std::size_t shards = 1);

/// -\int p ln p over [lo, hi] by composite Simpson, for 1-D mixtures.
/// The interval is split at every uniform-box edge inside it so each panel
/// integrates a smooth function. `points` (>= 101) is the node count per panel.
double quad_entropy_1d(const MixtureModel& mix, double lo, double hi, std::size_t points = 10001);

enum class CrossIntegrand { Product, SqrtProduct, Chernoff, KL };

/// \int f(p(x), q(x)) dx over the union of the supports (Gaussians: means
/// +/- 12 standard deviations) for 1-D components:
///   Product      p q
///   SqrtProduct  sqrt(p q)
///   Chernoff     p^alpha q^(1-alpha)
///   KL           p ln(p / q)   (+inf when p > 0 where q = 0)
double quad_cross_term_1d(const Component& p, const Component& q, CrossIntegrand kind, double alpha = 0.5,
                          std::size_t points = 20001);

} // namespace mixent
