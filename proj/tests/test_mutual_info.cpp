#include <gtest/gtest.h>

#include "mixent/error.hpp"
#include "mixent/estimators.hpp"
#include "mixent/montecarlo.hpp"
#include "mixent/mutual_info.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace mixent;

namespace {

constexpr double kStdNormalEntropy = 1.4189385332046724;

GaussianComponent n1(double mean, double var = 1.0)
{
    return GaussianComponent(Eigen::VectorXd::Constant(1, mean), Eigen::MatrixXd::Constant(1, 1, var));
}

} // namespace

TEST(Awgn, PushAddsCovariance)
{
    MixtureModel in({1.0}, {GaussianComponent::isotropic(Eigen::VectorXd::Zero(2), 1.0)});
    AwgnChannel ch(Eigen::MatrixXd::Identity(2, 2));
    auto out = awgn_push(in, ch);
    EXPECT_TRUE(out.gaussian(0).cov().isApprox(2 * Eigen::MatrixXd::Identity(2, 2)));
    EXPECT_EQ(out.gaussian(0).mean(), in.gaussian(0).mean());

    AwgnChannel tiny(1e-12 * Eigen::MatrixXd::Identity(2, 2));
    EXPECT_TRUE(awgn_push(in, tiny).gaussian(0).cov().isApprox(in.gaussian(0).cov(), 1e-11));

    MixtureModel one({1.0}, {n1(0)});
    AwgnChannel unit(Eigen::MatrixXd::Identity(1, 1));
    EXPECT_NEAR(gaussian_entropy(awgn_push(one, unit).gaussian(0)) - gaussian_entropy(n1(0)), 0.5 * std::log(2.0),
                1e-14);

    EXPECT_THROW(awgn_push(one, ch), Error);
    MixtureModel boxes({1.0}, {UniformComponent(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1))});
    EXPECT_THROW(awgn_push(boxes, unit), Error);
}

TEST(Awgn, ConditionalEntropy)
{
    EXPECT_NEAR(channel_conditional_entropy(AwgnChannel(Eigen::MatrixXd::Identity(1, 1))), kStdNormalEntropy, 1e-14);
    EXPECT_NEAR(channel_conditional_entropy(AwgnChannel(std::exp(2.0) * Eigen::MatrixXd::Identity(1, 1))),
                kStdNormalEntropy + 1.0, 1e-14);
    EXPECT_NEAR(channel_conditional_entropy(AwgnChannel(Eigen::MatrixXd::Identity(2, 2))), 2 * kStdNormalEntropy,
                1e-14);
}

TEST(MiBounds, SingleComponentInput)
{
    MixtureModel in({1.0}, {GaussianComponent::isotropic(Eigen::VectorXd::Zero(2), 1e-12)});
    AwgnChannel ch(Eigen::MatrixXd::Identity(2, 2));
    auto b = mi_bounds(in, ch);
    EXPECT_EQ(b.lower, b.upper);
    EXPECT_NEAR(b.lower, 0.0, 1e-5);
}

TEST(MiBounds, CleanBinaryChannel)
{
    MixtureModel in({0.5, 0.5}, {n1(-20, 1e-8), n1(20, 1e-8)});
    AwgnChannel ch(1e-4 * Eigen::MatrixXd::Identity(1, 1));
    auto b = mi_bounds(in, ch);
    EXPECT_NEAR(b.lower, std::log(2.0), 1e-3);
    EXPECT_NEAR(b.upper, std::log(2.0), 1e-3);
}

TEST(MiBounds, UnitVarianceInputsAddSpreadTerm)
{
    MixtureModel in({0.5, 0.5}, {n1(-20), n1(20)});
    AwgnChannel ch(1e-4 * Eigen::MatrixXd::Identity(1, 1));
    auto b = mi_bounds(in, ch);
    const double spread = 0.5 * std::log((1.0 + 1e-4) / 1e-4);
    EXPECT_NEAR(b.lower, std::log(2.0) + spread, 1e-9);
    EXPECT_NEAR(b.upper, std::log(2.0) + spread, 1e-9);
}

TEST(MiBounds, Errors)
{
    MixtureModel in({1.0}, {n1(0)});
    AwgnChannel ch(Eigen::MatrixXd::Identity(1, 1));
    try {
        mi_bounds(in, ch, 1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AlphaOutOfRange);
    }
}

TEST(MiBoundsProperty, OrderedAndWithinWeightEntropy)
{
    Rng rng(91);
    for (int t = 0; t < 30; ++t) {
        const int d = 1 + t % 3;
        auto in = fixtures::random_gaussian_mixture(2 + t % 5, d, rng);
        AwgnChannel ch(fixtures::random_spd(d, rng));
        auto b = mi_bounds(in, ch);
        EXPECT_TRUE(std::isfinite(b.lower));
        EXPECT_TRUE(std::isfinite(b.upper));
        EXPECT_LE(b.lower, b.upper);
        EXPECT_LE(b.upper - b.lower, weight_entropy(in) + 1e-12);
    }
}

TEST(MiBoundsProperty, AgreesWithMonteCarlo)
{
    Rng rng(92);
    for (int t = 0; t < 10; ++t) {
        auto in = fixtures::random_gaussian_mixture(5, 2, rng);
        AwgnChannel ch(Eigen::MatrixXd::Identity(2, 2));
        auto b = mi_bounds(in, ch);
        auto mc = mc_entropy(awgn_push(in, ch), 5000, 400 + t);
        const double mi = mc.estimate - channel_conditional_entropy(ch);
        EXPECT_GE(mi, b.lower - 3 * mc.std_error);
        EXPECT_LE(mi, b.upper + 3 * mc.std_error);
        EXPECT_LE(std::max(b.lower, 0.0), mi + 3 * mc.std_error);
    }
}

TEST(MiBoundsProperty, MoreNoiseDoesNotRaiseUpperBound)
{
    Rng rng(93);
    for (int t = 0; t < 20; ++t) {
        auto in = fixtures::random_homoscedastic_mixture(4, 1, rng);
        const double s = rng.uniform(0.1, 2.0);
        const double upper = mi_bounds(in, AwgnChannel(Eigen::MatrixXd::Constant(1, 1, s))).upper;
        const double noisier = mi_bounds(in, AwgnChannel(Eigen::MatrixXd::Constant(1, 1, s + 0.5))).upper;
        EXPECT_LE(noisier, upper + 1e-12);
    }
}
