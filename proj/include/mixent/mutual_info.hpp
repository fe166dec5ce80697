#pragma once

#include "mixent/gaussian.hpp"
#include "mixent/mixture.hpp"

#include <Eigen/Core>

namespace mixent {

/// Additive Gaussian noise channel X = U + N(0, noise_cov).
class AwgnChannel {
public:
    explicit AwgnChannel(Eigen::MatrixXd noise_cov);

    int dim() const noexcept { return noise_.dim(); }
    const Eigen::MatrixXd& noise_cov() const noexcept { return noise_.cov(); }
    const GaussianComponent& noise() const noexcept { return noise_; }

private:
    GaussianComponent noise_;
};

/// Output mixture of the channel: same weights and means, covariances
/// cov_i + noise_cov. Input must be a Gaussian mixture.
MixtureModel awgn_push(const MixtureModel& input, const AwgnChannel& channel);

/// H(X|U): entropy of the noise.
double channel_conditional_entropy(const AwgnChannel& channel);

struct MiBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bounds on MI(X; U) from the Chernoff-alpha and KL estimators applied to
/// the channel output, minus H(X|U).
MiBounds mi_bounds(const MixtureModel& input, const AwgnChannel& channel, double alpha = 0.5);

} // namespace mixent
