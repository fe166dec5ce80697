#pragma once

#include "mixent/rng.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace mixent {

/// Multivariate normal N(mean, cov) with a cached Cholesky factor.
///
/// Construction validates symmetry (1e-9 relative) and positive-definiteness:
/// every squared pivot of the factor must exceed 1e-12 times the largest
/// diagonal entry of the covariance.
class GaussianComponent {
public:
    GaussianComponent(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    /// N(mean, scale * I)
    static GaussianComponent isotropic(Eigen::VectorXd mean, double scale);

    int dim() const noexcept { return static_cast<int>(mean_.size()); }
    const Eigen::VectorXd& mean() const noexcept { return mean_; }
    const Eigen::MatrixXd& cov() const noexcept { return cov_; }
    /// Lower-triangular L with L L^T = cov.
    const Eigen::MatrixXd& chol() const noexcept { return chol_; }
    double log_det() const noexcept { return log_det_; }

    bool operator==(const GaussianComponent& other) const;

    /// ln N(x; mean, cov). x.size() must equal dim().
    double log_density(std::span<const double> x) const;

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    Eigen::MatrixXd chol_;
    std::vector<double> chol_rows_; // row-major copy for the forward-solve kernel
    double log_det_ = 0.0;
};

double gaussian_entropy(const GaussianComponent& g);

double gaussian_log_density(const GaussianComponent& g, std::span<const double> x);
double gaussian_log_density(const GaussianComponent& g, const Eigen::VectorXd& x);

Eigen::VectorXd gaussian_sample(const GaussianComponent& g, Rng& rng);

/// KL(a || b).
double gaussian_kl(const GaussianComponent& a, const GaussianComponent& b);

/// Chernoff alpha-divergence -ln \int a^alpha b^(1-alpha), alpha in [0, 1].
/// Rounding noise below zero is clamped to 0.
double gaussian_chernoff(const GaussianComponent& a, const GaussianComponent& b, double alpha);

/// Bhattacharyya distance, Chernoff at alpha = 0.5.
double gaussian_bd(const GaussianComponent& a, const GaussianComponent& b);

/// Renyi divergence of order alpha in (0, 1): chernoff / (1 - alpha).
double gaussian_renyi(const GaussianComponent& a, const GaussianComponent& b, double alpha);

/// \int a(x) b(x) dx = N(mean_a; mean_b, cov_a + cov_b).
double gaussian_elk_cross(const GaussianComponent& a, const GaussianComponent& b);
double gaussian_log_elk_cross(const GaussianComponent& a, const GaussianComponent& b);

namespace detail {
/// Closed-form Chernoff expression with no range check on alpha and no
/// clamping. Outside [0, 1] it is not a divergence; only tests use that.
/// Throws NotPositiveDefinite if (1-alpha) cov_a + alpha cov_b is not PD.
double gaussian_chernoff_unchecked(const GaussianComponent& a, const GaussianComponent& b, double alpha);
} // namespace detail

} // namespace mixent
