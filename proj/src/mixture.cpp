#include "mixent/mixture.hpp"

#include "mixent/error.hpp"
#include "mixent/kernels.hpp"
#include "mixent/numeric.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace mixent {

Family family_of(const Component& c) noexcept
{
    return std::holds_alternative<GaussianComponent>(c) ? Family::Gaussian : Family::Uniform;
}

int dim_of(const Component& c) noexcept
{
    return std::visit([](const auto& comp) { return comp.dim(); }, c);
}

double component_entropy(const Component& c)
{
    if (const auto* g = std::get_if<GaussianComponent>(&c))
        return gaussian_entropy(*g);
    return uniform_entropy(std::get<UniformComponent>(c));
}

double component_log_density(const Component& c, std::span<const double> x)
{
    if (const auto* g = std::get_if<GaussianComponent>(&c))
        return g->log_density(x);
    return uniform_log_density(std::get<UniformComponent>(c), x);
}

Eigen::VectorXd component_sample(const Component& c, Rng& rng)
{
    if (const auto* g = std::get_if<GaussianComponent>(&c))
        return gaussian_sample(*g, rng);
    return uniform_sample(std::get<UniformComponent>(c), rng);
}

Eigen::VectorXd component_location(const Component& c)
{
    if (const auto* g = std::get_if<GaussianComponent>(&c))
        return g->mean();
    return uniform_center(std::get<UniformComponent>(c));
}

MixtureModel::MixtureModel(std::vector<double> weights, std::vector<Component> components)
    : weights_(std::move(weights)), components_(std::move(components))
{
    if (components_.empty() || weights_.empty())
        throw Error(ErrorCode::EmptyMixture, "mixture needs at least one component");
    if (weights_.size() != components_.size())
        throw Error(ErrorCode::DimensionMismatch, "weights and components differ in length");

    CompensatedSum total;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!std::isfinite(weights_[i]))
            throw Error(ErrorCode::InvalidArgument, "weight " + std::to_string(i) + " is not finite");
        if (weights_[i] < 0.0)
            throw Error(ErrorCode::NegativeWeight, "weight " + std::to_string(i) + " is negative");
        total += weights_[i];
    }
    const double sum = total.value();
    if (!(sum > 0.0))
        throw Error(ErrorCode::ZeroWeightSum, "weights sum to zero");

    family_ = family_of(components_.front());
    dim_ = dim_of(components_.front());
    for (const Component& c : components_) {
        if (family_of(c) != family_)
            throw Error(ErrorCode::MixedFamilies, "components mix Gaussian and uniform families");
        if (dim_of(c) != dim_)
            throw Error(ErrorCode::DimensionMismatch, "components differ in dimension");
    }

    log_weights_.resize(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        weights_[i] /= sum;
        log_weights_[i] = std::log(weights_[i]);
    }
}

const GaussianComponent& MixtureModel::gaussian(std::size_t i) const
{
    return std::get<GaussianComponent>(components_.at(i));
}

const UniformComponent& MixtureModel::uniform(std::size_t i) const
{
    return std::get<UniformComponent>(components_.at(i));
}

MixtureModel new_mixture(std::vector<double> weights, std::vector<Component> components)
{
    return MixtureModel(std::move(weights), std::move(components));
}

double log_density(const MixtureModel& mix, std::span<const double> x)
{
    if (x.size() != static_cast<std::size_t>(mix.dim()))
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match mixture");
    thread_local std::vector<double> terms;
    terms.clear();
    const auto& w = mix.weights();
    const auto& lw = mix.log_weights();
    for (std::size_t i = 0; i < mix.size(); ++i) {
        if (w[i] > 0.0)
            terms.push_back(lw[i] + component_log_density(mix.components()[i], x));
    }
    return kernels::log_sum_exp(terms);
}

double log_density(const MixtureModel& mix, const Eigen::VectorXd& x)
{
    return log_density(mix, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

double conditional_entropy(const MixtureModel& mix)
{
    CompensatedSum acc;
    for (std::size_t i = 0; i < mix.size(); ++i) {
        const double c = mix.weights()[i];
        if (c > 0.0)
            acc += c * component_entropy(mix.components()[i]);
    }
    return acc.value();
}

double weight_entropy(const MixtureModel& mix)
{
    CompensatedSum acc;
    for (double c : mix.weights())
        acc += -xlogx(c);
    return acc.value();
}

double joint_entropy_upper(const MixtureModel& mix) { return conditional_entropy(mix) + weight_entropy(mix); }

Eigen::VectorXd sample(const MixtureModel& mix, Rng& rng)
{
    const auto& w = mix.weights();
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    return component_sample(mix.components()[pick(rng.engine())], rng);
}

Grouping::Grouping(const MixtureModel& mix, std::vector<std::size_t> assignment)
    : assignment_(std::move(assignment))
{
    if (assignment_.size() != mix.size())
        throw Error(ErrorCode::InvalidGrouping, "grouping must assign every component exactly once");
    std::size_t groups = 0;
    for (std::size_t g : assignment_)
        groups = std::max(groups, g + 1);
    std::vector<CompensatedSum> acc(groups);
    for (std::size_t i = 0; i < assignment_.size(); ++i)
        acc[assignment_[i]] += mix.weights()[i];
    group_weights_.reserve(groups);
    for (const auto& a : acc)
        group_weights_.push_back(a.value());
}

std::size_t Grouping::occupied_groups() const noexcept
{
    std::size_t n = 0;
    for (double w : group_weights_)
        if (w > 0.0)
            ++n;
    return n;
}

double group_entropy(const Grouping& g)
{
    CompensatedSum acc;
    for (double w : g.group_weights())
        acc += -xlogx(w);
    return acc.value();
}

} // namespace mixent
