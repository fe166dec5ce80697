#include "mixent/uniform.hpp"

#include "mixent/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mixent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_dim(const UniformComponent& a, const UniformComponent& b)
{
    if (a.dim() != b.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "uniform dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

} // namespace

UniformComponent::UniformComponent(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (lower_.size() < 1)
        throw Error(ErrorCode::InvalidComponent, "uniform box with no dimensions");
    if (lower_.size() != upper_.size())
        throw Error(ErrorCode::DimensionMismatch, "lower and upper corners differ in length");
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
        const double side = upper_[i] - lower_[i];
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(side > 0.0))
            throw Error(ErrorCode::InvalidComponent, "box side " + std::to_string(i) + " is not a positive finite length");
        log_volume_ += std::log(side);
    }
}

bool UniformComponent::contains(std::span<const double> x) const
{
    if (x.size() != static_cast<std::size_t>(dim()))
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match box");
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        if (xi < lower_[i] || xi > upper_[i])
            return false;
    }
    return true;
}

bool UniformComponent::inside(const UniformComponent& other) const
{
    require_same_dim(*this, other);
    return (lower_.array() >= other.lower_.array()).all() && (upper_.array() <= other.upper_.array()).all();
}

bool UniformComponent::operator==(const UniformComponent& other) const
{
    return lower_.size() == other.lower_.size() && lower_ == other.lower_ && upper_ == other.upper_;
}

double uniform_entropy(const UniformComponent& u) { return u.log_volume(); }

Overlap overlap_volume(const UniformComponent& a, const UniformComponent& b)
{
    require_same_dim(a, b);
    Overlap out{false, 0.0};
    for (Eigen::Index i = 0; i < a.lower().size(); ++i) {
        const double len = std::min(a.upper()[i], b.upper()[i]) - std::max(a.lower()[i], b.lower()[i]);
        if (!(len > 0.0))
            return Overlap{true, -kInf};
        out.log_volume += std::log(len);
    }
    return out;
}

double uniform_kl(const UniformComponent& a, const UniformComponent& b)
{
    require_same_dim(a, b);
    if (!a.inside(b))
        return kInf;
    if (a == b)
        return 0.0;
    return std::max(0.0, b.log_volume() - a.log_volume());
}

double uniform_bd(const UniformComponent& a, const UniformComponent& b)
{
    const Overlap ov = overlap_volume(a, b);
    if (ov.empty)
        return kInf;
    if (a == b)
        return 0.0;
    return std::max(0.0, 0.5 * a.log_volume() + 0.5 * b.log_volume() - ov.log_volume);
}

double uniform_log_elk_cross(const UniformComponent& a, const UniformComponent& b)
{
    const Overlap ov = overlap_volume(a, b);
    if (ov.empty)
        return -kInf;
    return ov.log_volume - a.log_volume() - b.log_volume();
}

double uniform_elk_cross(const UniformComponent& a, const UniformComponent& b)
{
    return std::exp(uniform_log_elk_cross(a, b));
}

double uniform_log_density(const UniformComponent& u, std::span<const double> x)
{
    return u.contains(x) ? -u.log_volume() : -kInf;
}

Eigen::VectorXd uniform_sample(const UniformComponent& u, Rng& rng)
{
    Eigen::VectorXd x(u.dim());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x[i] = u.lower()[i] + (u.upper()[i] - u.lower()[i]) * rng.uniform();
    return x;
}

Eigen::VectorXd uniform_center(const UniformComponent& u) { return 0.5 * (u.lower() + u.upper()); }

} // namespace mixent
