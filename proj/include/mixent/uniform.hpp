#pragma once

#include "mixent/rng.hpp"

#include <Eigen/Core>

#include <span>

namespace mixent {

/// Uniform density on the axis-aligned box [lower, upper]. Volumes are kept
/// in the log domain so d = 16 boxes with small sides do not underflow.
class UniformComponent {
public:
    UniformComponent(Eigen::VectorXd lower, Eigen::VectorXd upper);

    int dim() const noexcept { return static_cast<int>(lower_.size()); }
    const Eigen::VectorXd& lower() const noexcept { return lower_; }
    const Eigen::VectorXd& upper() const noexcept { return upper_; }
    double log_volume() const noexcept { return log_volume_; }

    bool contains(std::span<const double> x) const;
    /// Support of this box is a subset of the support of `other` (closed, exact).
    bool inside(const UniformComponent& other) const;

    bool operator==(const UniformComponent& other) const;

private:
    Eigen::VectorXd lower_;
    Eigen::VectorXd upper_;
    double log_volume_ = 0.0;
};

struct Overlap {
    bool empty = true;
    double log_volume = 0.0; // meaningful only when !empty
};

double uniform_entropy(const UniformComponent& u);
Overlap overlap_volume(const UniformComponent& a, const UniformComponent& b);
/// ln(V_b / V_a) if supp a is inside supp b, +inf otherwise.
double uniform_kl(const UniformComponent& a, const UniformComponent& b);
/// 0.5 ln V_a + 0.5 ln V_b - ln V_ab, +inf when the boxes do not overlap.
double uniform_bd(const UniformComponent& a, const UniformComponent& b);
/// V_ab / (V_a V_b), 0 when disjoint.
double uniform_elk_cross(const UniformComponent& a, const UniformComponent& b);
double uniform_log_elk_cross(const UniformComponent& a, const UniformComponent& b);

double uniform_log_density(const UniformComponent& u, std::span<const double> x);
Eigen::VectorXd uniform_sample(const UniformComponent& u, Rng& rng);
Eigen::VectorXd uniform_center(const UniformComponent& u);

} // namespace mixent
