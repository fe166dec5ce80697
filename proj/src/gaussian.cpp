#include "mixent/gaussian.hpp"

#include "mixent/error.hpp"
#include "mixent/kernels.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace mixent {
namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

struct Factor {
    Eigen::MatrixXd lower;
    double log_det;
};

Factor factorize(const Eigen::MatrixXd& m)
{
    const double max_diag = m.diagonal().cwiseAbs().maxCoeff();
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
    Eigen::MatrixXd lower = llt.matrixL();
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < lower.rows(); ++i) {
        const double pivot = lower(i, i);
        if (!(pivot * pivot > 1e-12 * max_diag))
            throw Error(ErrorCode::NotPositiveDefinite, "pivot " + std::to_string(i) + " too small");
        log_det += std::log(pivot);
    }
    return {std::move(lower), 2.0 * log_det};
}

void require_same_dim(const GaussianComponent& a, const GaussianComponent& b)
{
    if (a.dim() != b.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "Gaussian dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

void require_unit_interval(double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw Error(ErrorCode::AlphaOutOfRange, "alpha = " + std::to_string(alpha) + " not in [0, 1]");
}

} // namespace

GaussianComponent::GaussianComponent(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov))
{
    const auto d = mean_.size();
    if (d < 1)
        throw Error(ErrorCode::InvalidComponent, "Gaussian with empty mean");
    if (cov_.rows() != d || cov_.cols() != d)
        throw Error(ErrorCode::DimensionMismatch, "covariance shape does not match mean length");
    if (!mean_.allFinite() || !cov_.allFinite())
        throw Error(ErrorCode::InvalidComponent, "non-finite Gaussian parameters");
    const double scale = cov_.cwiseAbs().maxCoeff();
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw Error(ErrorCode::NotPositiveDefinite, "covariance is not symmetric");

    Factor f = factorize(cov_);
    chol_ = std::move(f.lower);
    log_det_ = f.log_det;
    chol_rows_.resize(static_cast<std::size_t>(d * d));
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            chol_rows_[static_cast<std::size_t>(i * d + j)] = chol_(i, j);
}

GaussianComponent GaussianComponent::isotropic(Eigen::VectorXd mean, double scale)
{
    const auto d = mean.size();
    return GaussianComponent(std::move(mean), Eigen::MatrixXd::Identity(d, d) * scale);
}

bool GaussianComponent::operator==(const GaussianComponent& other) const
{
    return mean_.size() == other.mean_.size() && mean_ == other.mean_ && cov_ == other.cov_;
}

double GaussianComponent::log_density(std::span<const double> x) const
{
    const auto d = static_cast<std::size_t>(dim());
    if (x.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match Gaussian");
    // Small fixed-size scratch on the stack covers the common case.
    double stack_buf[2 * 32];
    std::vector<double> heap_buf;
    double* buf = stack_buf;
    if (d > 32) {
        heap_buf.resize(2 * d);
        buf = heap_buf.data();
    }
    std::span<double> r(buf, d);
    std::span<double> z(buf + d, d);
    for (std::size_t i = 0; i < d; ++i)
        r[i] = x[i] - mean_[static_cast<Eigen::Index>(i)];
    const double maha = kernels::forward_solve_squared_norm(chol_rows_, r, z);
    return -0.5 * maha - 0.5 * log_det_ - 0.5 * static_cast<double>(d) * kLog2Pi;
}

double gaussian_entropy(const GaussianComponent& g)
{
    const double d = g.dim();
    return 0.5 * (g.log_det() + d * kLog2Pi + d);
}

double gaussian_log_density(const GaussianComponent& g, std::span<const double> x) { return g.log_density(x); }

double gaussian_log_density(const GaussianComponent& g, const Eigen::VectorXd& x)
{
    return g.log_density(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Eigen::VectorXd gaussian_sample(const GaussianComponent& g, Rng& rng)
{
    Eigen::VectorXd z(g.dim());
    for (Eigen::Index i = 0; i < z.size(); ++i)
        z[i] = rng.normal();
    return g.mean() + g.chol().triangularView<Eigen::Lower>() * z;
}

double gaussian_kl(const GaussianComponent& a, const GaussianComponent& b)
{
    require_same_dim(a, b);
    const auto Lb = b.chol().triangularView<Eigen::Lower>();
    const Eigen::VectorXd diff = a.mean() - b.mean();
    const double maha = Lb.solve(diff).squaredNorm();
    // tr(cov_b^-1 cov_a) = ||L_b^-1 L_a||_F^2
    const double trace = Lb.solve(a.chol()).squaredNorm();
    const double kl = 0.5 * (b.log_det() - a.log_det() + maha + trace - a.dim());
    return kl > 0.0 ? kl : 0.0;
}

namespace detail {

double gaussian_chernoff_unchecked(const GaussianComponent& a, const GaussianComponent& b, double alpha)
{
    require_same_dim(a, b);
    const Eigen::MatrixXd blend = (1.0 - alpha) * a.cov() + alpha * b.cov();
    Eigen::LLT<Eigen::MatrixXd> llt(blend);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::NotPositiveDefinite, "blended covariance is not positive-definite");
    const Eigen::MatrixXd lower = llt.matrixL();
    double log_det_blend = 0.0;
    for (Eigen::Index i = 0; i < lower.rows(); ++i)
        log_det_blend += std::log(lower(i, i));
    log_det_blend *= 2.0;

    const Eigen::VectorXd diff = a.mean() - b.mean();
    const double maha = llt.matrixL().solve(diff).squaredNorm();
    return 0.5 * (1.0 - alpha) * alpha * maha
         + 0.5 * (log_det_blend - (1.0 - alpha) * a.log_det() - alpha * b.log_det());
}

} // namespace detail

double gaussian_chernoff(const GaussianComponent& a, const GaussianComponent& b, double alpha)
{
    require_unit_interval(alpha);
    require_same_dim(a, b);
    if (alpha == 0.0 || alpha == 1.0)
        return 0.0;
    const double c = detail::gaussian_chernoff_unchecked(a, b, alpha);
    return c > 0.0 ? c : 0.0;
}

double gaussian_bd(const GaussianComponent& a, const GaussianComponent& b) { return gaussian_chernoff(a, b, 0.5); }

double gaussian_renyi(const GaussianComponent& a, const GaussianComponent& b, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorCode::AlphaOutOfRange, "Renyi order must lie in (0, 1)");
    return gaussian_chernoff(a, b, alpha) / (1.0 - alpha);
}

double gaussian_log_elk_cross(const GaussianComponent& a, const GaussianComponent& b)
{
    require_same_dim(a, b);
    const Factor f = factorize(a.cov() + b.cov());
    const Eigen::VectorXd diff = a.mean() - b.mean();
    const double maha = f.lower.triangularView<Eigen::Lower>().solve(diff).squaredNorm();
    return -0.5 * maha - 0.5 * f.log_det - 0.5 * a.dim() * kLog2Pi;
}

double gaussian_elk_cross(const GaussianComponent& a, const GaussianComponent& b)
{
    return std::exp(gaussian_log_elk_cross(a, b));
}

} // namespace mixent
