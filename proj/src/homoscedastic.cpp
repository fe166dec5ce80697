#include "mixent/homoscedastic.hpp"

#include "mixent/error.hpp"
#include "mixent/kernels.hpp"
#include "mixent/numeric.hpp"

#include <cmath>

namespace mixent {

bool is_homoscedastic(const MixtureModel& mix)
{
    if (mix.family() != Family::Gaussian)
        return false;
    const Eigen::MatrixXd& first = mix.gaussian(0).cov();
    for (std::size_t i = 1; i < mix.size(); ++i)
        if ((mix.gaussian(i).cov() - first).cwiseAbs().maxCoeff() > 1e-9)
            return false;
    return true;
}

double homoscedastic_chernoff_lower(const MixtureModel& mix, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorCode::AlphaOutOfRange, "homoscedastic fast path needs alpha in (0, 1)");
    if (!is_homoscedastic(mix))
        throw Error(ErrorCode::NotHomoscedastic, "mixture covariances differ");

    const double scale = alpha * (1.0 - alpha);
    const double d = mix.dim();
    // One factorization of S / (alpha (1 - alpha)) shared by every pair.
    const GaussianComponent widened(Eigen::VectorXd::Zero(mix.dim()), mix.gaussian(0).cov() / scale);

    const auto& w = mix.weights();
    const auto& lw = mix.log_weights();
    std::vector<double> terms;
    terms.reserve(mix.size());
    Eigen::VectorXd diff(mix.dim());
    CompensatedSum acc;
    for (std::size_t i = 0; i < mix.size(); ++i) {
        if (!(w[i] > 0.0))
            continue;
        terms.clear();
        for (std::size_t j = 0; j < mix.size(); ++j) {
            if (!(w[j] > 0.0))
                continue;
            diff = mix.gaussian(i).mean() - mix.gaussian(j).mean();
            terms.push_back(lw[j] + widened.log_density(std::span<const double>(diff.data(), diff.size())));
        }
        acc += w[i] * kernels::log_sum_exp(terms);
    }
    return 0.5 * d + 0.5 * d * std::log(scale) - acc.value();
}

} // namespace mixent
