#pragma once

#include "mixent/mixture.hpp"
#include "mixent/montecarlo.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixent {

/// Pairwise distance used by the estimator family. Every kind is a premetric:
/// non-negative with D(p, p) = 0.
class DistanceKind {
public:
    enum class Type { Chernoff, Bhattacharyya, KL, Dmin, Dmax };

    static DistanceKind chernoff(double alpha);
    static DistanceKind bhattacharyya() noexcept { return DistanceKind(Type::Bhattacharyya, 0.5); }
    static DistanceKind kl() noexcept { return DistanceKind(Type::KL, 0.0); }
    static DistanceKind dmin() noexcept { return DistanceKind(Type::Dmin, 0.0); }
    static DistanceKind dmax() noexcept { return DistanceKind(Type::Dmax, 0.0); }

    Type type() const noexcept { return type_; }
    /// Chernoff order; 0.5 for Bhattacharyya, unused otherwise.
    double alpha() const noexcept { return alpha_; }
    std::string name() const;

private:
    DistanceKind(Type type, double alpha) noexcept : type_(type), alpha_(alpha) {}
    Type type_;
    double alpha_;
};

/// D(a || b). Throws UnsupportedDistance for Chernoff(alpha != 0.5) on
/// uniform components, DimensionMismatch/MixedFamilies on incompatible pairs.
double distance(const Component& a, const Component& b, const DistanceKind& kind);

/// N x N matrix of D(p_i || p_j) with an exact zero diagonal.
Eigen::MatrixXd distance_matrix(const MixtureModel& mix, const DistanceKind& kind);

/// H(X|C) - sum_i c_i ln sum_j c_j exp(-D_ij).
double pairwise_estimate(const MixtureModel& mix, const DistanceKind& kind);
/// Same estimator from a precomputed distance matrix.
double pairwise_estimate(const MixtureModel& mix, const Eigen::MatrixXd& distances);

/// Chernoff-alpha estimator, a lower bound on H(X) for alpha in [0, 1].
double lower_bound_chernoff(const MixtureModel& mix, double alpha);
/// Bhattacharyya estimator (alpha = 0.5).
double lower_bound_bd(const MixtureModel& mix);
/// KL estimator, an upper bound on H(X).
double upper_bound_kl(const MixtureModel& mix);

/// -sum_i c_i ln p_X(location_i), locations being Gaussian means or box centers.
double kde_estimate(const MixtureModel& mix);
/// Jensen lower bound -sum_i c_i ln sum_j c_j \int p_i p_j.
double elk_estimate(const MixtureModel& mix);

/// H(C): worst-case |estimate - H(X)| for any pairwise estimator.
double bias_bound(const MixtureModel& mix);

struct ClusteredGap {
    double kappa = 0.0;    ///< max KL between members of one group
    double beta = 0.0;     ///< min BD between members of different groups (+inf if one group)
    double bound = 0.0;    ///< kappa + (|G| - 1) exp(-(1 - |1 - 2 alpha|) beta)
    double measured = 0.0; ///< KL estimate minus Chernoff(alpha) estimate
};

/// Gap analysis for a grouping, alpha in (0, 1]. Throws std::logic_error if
/// the measured gap exceeds the bound by more than rounding.
ClusteredGap clustered_gap(const MixtureModel& mix, const Grouping& grouping, double alpha);
double clustered_gap_bound(const MixtureModel& mix, const Grouping& grouping, double alpha);

struct EstimateReport {
    double h_cond = 0.0;
    double h_joint = 0.0;
    double h_bd = 0.0;
    double h_kl = 0.0;
    double h_kde = 0.0;
    double h_elk = 0.0;
    std::optional<McResult> mc;

    struct Entry {
        std::string name;
        double value;
        std::optional<double> std_error;
    };

    /// Entries in the fixed order H_MC (if present), H_pairwise_KL,
    /// H_pairwise_BD, H_KDE, H_ELK, H_cond, H_joint.
    std::vector<Entry> entries() const;

    /// H_cond <= H_pairwise_BD <= H_pairwise_KL <= H_joint.
    bool ordering_holds() const noexcept;
};

EstimateReport estimate_all(const MixtureModel& mix,
                            std::optional<std::size_t> mc_samples = std::nullopt,
                            std::optional<std::uint64_t> seed = std::nullopt);

} // namespace mixent
