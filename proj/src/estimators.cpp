#include "mixent/estimators.hpp"

#include "mixent/error.hpp"
#include "mixent/kernels.hpp"
#include "mixent/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mixent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_supported(Family family, const DistanceKind& kind)
{
    if (family == Family::Uniform && kind.type() == DistanceKind::Type::Chernoff && kind.alpha() != 0.5)
        throw Error(ErrorCode::UnsupportedDistance,
                    "Chernoff distance with alpha != 0.5 is not available for uniform components");
}

bool same_component(const Component& a, const Component& b)
{
    if (family_of(a) != family_of(b))
        return false;
    if (const auto* g = std::get_if<GaussianComponent>(&a))
        return *g == std::get<GaussianComponent>(b);
    return std::get<UniformComponent>(a) == std::get<UniformComponent>(b);
}

} // namespace

DistanceKind DistanceKind::chernoff(double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw Error(ErrorCode::AlphaOutOfRange, "Chernoff alpha must lie in [0, 1]");
    return DistanceKind(Type::Chernoff, alpha);
}

std::string DistanceKind::name() const
{
    switch (type_) {
    case Type::Chernoff: {
        std::ostringstream os;
        os << "Chernoff(" << alpha_ << ")";
        return os.str();
    }
    case Type::Bhattacharyya: return "BD";
    case Type::KL: return "KL";
    case Type::Dmin: return "Dmin";
    case Type::Dmax: return "Dmax";
    }
    return "?";
}

double distance(const Component& a, const Component& b, const DistanceKind& kind)
{
    if (family_of(a) != family_of(b))
        throw Error(ErrorCode::MixedFamilies, "distance between different component families");
    if (dim_of(a) != dim_of(b))
        throw Error(ErrorCode::DimensionMismatch, "distance between components of different dimension");
    require_supported(family_of(a), kind);

    switch (kind.type()) {
    case DistanceKind::Type::Dmin:
        return 0.0;
    case DistanceKind::Type::Dmax:
        return same_component(a, b) ? 0.0 : kInf;
    case DistanceKind::Type::KL:
        if (const auto* g = std::get_if<GaussianComponent>(&a))
            return gaussian_kl(*g, std::get<GaussianComponent>(b));
        return uniform_kl(std::get<UniformComponent>(a), std::get<UniformComponent>(b));
    case DistanceKind::Type::Bhattacharyya:
    case DistanceKind::Type::Chernoff:
        if (const auto* g = std::get_if<GaussianComponent>(&a))
            return gaussian_chernoff(*g, std::get<GaussianComponent>(b), kind.alpha());
        return uniform_bd(std::get<UniformComponent>(a), std::get<UniformComponent>(b));
    }
    return 0.0;
}

Eigen::MatrixXd distance_matrix(const MixtureModel& mix, const DistanceKind& kind)
{
    require_supported(mix.family(), kind);
    const auto n = static_cast<Eigen::Index>(mix.size());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            d(i, j) = i == j ? 0.0
                             : distance(mix.components()[static_cast<std::size_t>(i)],
                                        mix.components()[static_cast<std::size_t>(j)], kind);
        }
    }
    return d;
}

double pairwise_estimate(const MixtureModel& mix, const Eigen::MatrixXd& distances)
{
    const std::size_t n = mix.size();
    if (static_cast<std::size_t>(distances.rows()) != n || static_cast<std::size_t>(distances.cols()) != n)
        throw Error(ErrorCode::DimensionMismatch, "distance matrix shape does not match mixture");
    const auto& w = mix.weights();
    const auto& lw = mix.log_weights();
    std::vector<double> terms;
    terms.reserve(n);
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(w[i] > 0.0))
            continue;
        terms.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (!(w[j] > 0.0))
                continue;
            const double dij = i == j ? 0.0 : distances(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            terms.push_back(lw[j] - dij);
        }
        // sum_j c_j e^{-D_ij} lies in [c_i, 1]; clamp away rounding outside it.
        const double inner = std::clamp(kernels::log_sum_exp(terms), lw[i], 0.0);
        acc += w[i] * inner;
    }
    return conditional_entropy(mix) - acc.value();
}

double pairwise_estimate(const MixtureModel& mix, const DistanceKind& kind)
{
    if (kind.type() == DistanceKind::Type::Dmin)
        return conditional_entropy(mix);
    return pairwise_estimate(mix, distance_matrix(mix, kind));
}

double lower_bound_chernoff(const MixtureModel& mix, double alpha)
{
    return pairwise_estimate(mix, DistanceKind::chernoff(alpha));
}

double lower_bound_bd(const MixtureModel& mix) { return pairwise_estimate(mix, DistanceKind::bhattacharyya()); }

double upper_bound_kl(const MixtureModel& mix) { return pairwise_estimate(mix, DistanceKind::kl()); }

double kde_estimate(const MixtureModel& mix)
{
    CompensatedSum acc;
    for (std::size_t i = 0; i < mix.size(); ++i) {
        const double c = mix.weights()[i];
        if (c > 0.0)
            acc += c * log_density(mix, component_location(mix.components()[i]));
    }
    return -acc.value();
}

double elk_estimate(const MixtureModel& mix)
{
    const std::size_t n = mix.size();
    const auto& w = mix.weights();
    const auto& lw = mix.log_weights();
    std::vector<double> terms;
    terms.reserve(n);
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(w[i] > 0.0))
            continue;
        terms.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (!(w[j] > 0.0))
                continue;
            double log_cross;
            if (mix.family() == Family::Gaussian)
                log_cross = gaussian_log_elk_cross(mix.gaussian(i), mix.gaussian(j));
            else
                log_cross = uniform_log_elk_cross(mix.uniform(i), mix.uniform(j));
            terms.push_back(lw[j] + log_cross);
        }
        acc += w[i] * kernels::log_sum_exp(terms);
    }
    return -acc.value();
}

double bias_bound(const MixtureModel& mix) { return weight_entropy(mix); }

ClusteredGap clustered_gap(const MixtureModel& mix, const Grouping& grouping, double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw Error(ErrorCode::AlphaOutOfRange, "clustered gap bound needs alpha in (0, 1]");
    if (grouping.assignment().size() != mix.size())
        throw Error(ErrorCode::InvalidGrouping, "grouping does not match mixture");

    const DistanceKind chern = DistanceKind::chernoff(alpha);
    require_supported(mix.family(), chern);
    const Eigen::MatrixXd kl = distance_matrix(mix, DistanceKind::kl());
    const Eigen::MatrixXd bd = distance_matrix(mix, DistanceKind::bhattacharyya());

    ClusteredGap out;
    out.beta = kInf;
    const auto& w = mix.weights();
    for (std::size_t i = 0; i < mix.size(); ++i) {
        if (!(w[i] > 0.0))
            continue;
        for (std::size_t j = 0; j < mix.size(); ++j) {
            if (i == j || !(w[j] > 0.0))
                continue;
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            if (grouping.group_of(i) == grouping.group_of(j))
                out.kappa = std::max(out.kappa, kl(ii, jj));
            else
                out.beta = std::min(out.beta, bd(ii, jj));
        }
    }

    const double groups = static_cast<double>(grouping.occupied_groups());
    const double coef = 1.0 - std::fabs(1.0 - 2.0 * alpha);
    double tail = 0.0;
    if (groups > 1.0) {
        const double exponent = coef == 0.0 ? 0.0 : coef * out.beta;
        tail = (groups - 1.0) * std::exp(-exponent);
    }
    out.bound = out.kappa + tail;

    const double lower = alpha == 0.5 ? pairwise_estimate(mix, bd) : pairwise_estimate(mix, chern);
    out.measured = pairwise_estimate(mix, kl) - lower;
    if (out.measured > out.bound + 1e-9 * (1.0 + std::fabs(out.bound)))
        throw std::logic_error("clustered gap exceeds its analytic bound");
    return out;
}

double clustered_gap_bound(const MixtureModel& mix, const Grouping& grouping, double alpha)
{
    return clustered_gap(mix, grouping, alpha).bound;
}

std::vector<EstimateReport::Entry> EstimateReport::entries() const
{
    std::vector<Entry> out;
    if (mc)
        out.push_back({"H_MC", mc->estimate, mc->std_error});
    out.push_back({"H_pairwise_KL", h_kl, std::nullopt});
    out.push_back({"H_pairwise_BD", h_bd, std::nullopt});
    out.push_back({"H_KDE", h_kde, std::nullopt});
    out.push_back({"H_ELK", h_elk, std::nullopt});
    out.push_back({"H_cond", h_cond, std::nullopt});
    out.push_back({"H_joint", h_joint, std::nullopt});
    return out;
}

bool EstimateReport::ordering_holds() const noexcept
{
    return h_cond <= h_bd && h_bd <= h_kl && h_kl <= h_joint;
}

EstimateReport estimate_all(const MixtureModel& mix, std::optional<std::size_t> mc_samples,
                            std::optional<std::uint64_t> seed)
{
    EstimateReport r;
    r.h_cond = conditional_entropy(mix);
    r.h_joint = r.h_cond + weight_entropy(mix);
    r.h_bd = lower_bound_bd(mix);
    r.h_kl = upper_bound_kl(mix);
    r.h_kde = kde_estimate(mix);
    r.h_elk = elk_estimate(mix);
    if (mc_samples)
        r.mc = mc_entropy(mix, *mc_samples, seed.value_or(0));
    return r;
}

} // namespace mixent
