#pragma once

#include "mixent/gaussian.hpp"
#include "mixent/rng.hpp"
#include "mixent/uniform.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace mixent {

using Component = std::variant<GaussianComponent, UniformComponent>;

enum class Family { Gaussian, Uniform };

Family family_of(const Component& c) noexcept;
int dim_of(const Component& c) noexcept;
double component_entropy(const Component& c);
double component_log_density(const Component& c, std::span<const double> x);
Eigen::VectorXd component_sample(const Component& c, Rng& rng);
/// Mean of a Gaussian, center of a box.
Eigen::VectorXd component_location(const Component& c);

/// Finite mixture sum_i c_i p_i of components from a single family.
///
/// Weights are normalized at construction. Zero weights are allowed; such
/// components stay in the model but drop out of every sum.
class MixtureModel {
public:
    MixtureModel(std::vector<double> weights, std::vector<Component> components);

    std::size_t size() const noexcept { return components_.size(); }
    int dim() const noexcept { return dim_; }
    Family family() const noexcept { return family_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<double>& log_weights() const noexcept { return log_weights_; }
    const std::vector<Component>& components() const noexcept { return components_; }
    const Component& component(std::size_t i) const { return components_.at(i); }

    const GaussianComponent& gaussian(std::size_t i) const;
    const UniformComponent& uniform(std::size_t i) const;

private:
    std::vector<double> weights_;
    std::vector<double> log_weights_;
    std::vector<Component> components_;
    Family family_;
    int dim_;
};

MixtureModel new_mixture(std::vector<double> weights, std::vector<Component> components);

/// ln sum_i c_i p_i(x); -inf where every component density vanishes.
double log_density(const MixtureModel& mix, std::span<const double> x);
double log_density(const MixtureModel& mix, const Eigen::VectorXd& x);

/// H(X|C) = sum_i c_i H(p_i), nats.
double conditional_entropy(const MixtureModel& mix);
/// H(C) = -sum_i c_i ln c_i.
double weight_entropy(const MixtureModel& mix);
/// H(X, C) = H(X|C) + H(C), an upper bound on H(X).
double joint_entropy_upper(const MixtureModel& mix);

/// Draws a component index by weight, then a point from that component.
Eigen::VectorXd sample(const MixtureModel& mix, Rng& rng);

/// Assignment of components to groups 0..num_groups-1 with the induced
/// group weights p_G(k). Empty groups are allowed.
class Grouping {
public:
    Grouping(const MixtureModel& mix, std::vector<std::size_t> assignment);

    const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
    std::size_t num_groups() const noexcept { return group_weights_.size(); }
    /// Groups that hold positive weight.
    std::size_t occupied_groups() const noexcept;
    const std::vector<double>& group_weights() const noexcept { return group_weights_; }
    std::size_t group_of(std::size_t i) const { return assignment_.at(i); }

private:
    std::vector<std::size_t> assignment_;
    std::vector<double> group_weights_;
};

/// -sum_k p_G(k) ln p_G(k)
double group_entropy(const Grouping& g);

} // namespace mixent
