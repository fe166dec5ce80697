#include "mixent/mutual_info.hpp"

#include "mixent/error.hpp"
#include "mixent/estimators.hpp"

#include <algorithm>

namespace mixent {

namespace {

GaussianComponent centered(Eigen::MatrixXd cov)
{
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(cov.rows());
    return GaussianComponent(std::move(mean), std::move(cov));
}

} // namespace

AwgnChannel::AwgnChannel(Eigen::MatrixXd noise_cov) : noise_(centered(std::move(noise_cov))) {}

MixtureModel awgn_push(const MixtureModel& input, const AwgnChannel& channel)
{
    if (input.family() != Family::Gaussian)
        throw Error(ErrorCode::InvalidArgument, "AWGN pushforward needs a Gaussian input mixture");
    if (input.dim() != channel.dim())
        throw Error(ErrorCode::DimensionMismatch, "channel and input dimensions differ");
    std::vector<Component> out;
    out.reserve(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const GaussianComponent& g = input.gaussian(i);
        out.emplace_back(GaussianComponent(g.mean(), g.cov() + channel.noise_cov()));
    }
    return MixtureModel(input.weights(), std::move(out));
}

double channel_conditional_entropy(const AwgnChannel& channel) { return gaussian_entropy(channel.noise()); }

MiBounds mi_bounds(const MixtureModel& input, const AwgnChannel& channel, double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw Error(ErrorCode::AlphaOutOfRange, "MI lower bound needs alpha in [0, 1]");
    const MixtureModel output = awgn_push(input, channel);
    const double noise_entropy = channel_conditional_entropy(channel);
    MiBounds b;
    b.lower = lower_bound_chernoff(output, alpha) - noise_entropy;
    b.upper = upper_bound_kl(output) - noise_entropy;
    return b;
}

} // namespace mixent
