#include <gtest/gtest.h>

#include "mixent/error.hpp"
#include "mixent/estimators.hpp"
#include "mixent/experiments.hpp"
#include "mixent/homoscedastic.hpp"
#include "test_support.hpp"

#include <cmath>
#include <limits>

using namespace mixent;

namespace {

constexpr double kStdNormalEntropy = 1.4189385332046724;
constexpr double kHalfLn4Pi = 1.265512123484645;
// Entropy of 0.5 N(0,1) + 0.5 N(40,1), by quadrature outside this library.
constexpr double kFarPairEntropy = 2.112085713764619;

GaussianComponent n1(double mean, double var = 1.0)
{
    return GaussianComponent(Eigen::VectorXd::Constant(1, mean), Eigen::MatrixXd::Constant(1, 1, var));
}

std::vector<DistanceKind> gaussian_kinds()
{
    return {DistanceKind::chernoff(0.25), DistanceKind::bhattacharyya(), DistanceKind::kl(), DistanceKind::dmin(),
            DistanceKind::dmax()};
}

std::vector<DistanceKind> uniform_kinds()
{
    return {DistanceKind::bhattacharyya(), DistanceKind::kl(), DistanceKind::dmin(), DistanceKind::dmax()};
}

MixtureModel random_any(int t, Rng& rng)
{
    static const int dims[] = {1, 2, 5, 10};
    static const std::size_t sizes[] = {2, 5, 20};
    const int d = dims[t % 4];
    const std::size_t n = sizes[(t / 4) % 3];
    return (t % 2) ? fixtures::random_uniform_mixture(n, d, rng, 0.8) : fixtures::random_gaussian_mixture(n, d, rng);
}

} // namespace

TEST(Estimators, IdenticalComponentsCollapse)
{
    Rng rng(61);
    auto g = fixtures::random_gaussian(3, rng);
    MixtureModel m({0.2, 0.3, 0.5}, {g, g, g});
    const double h = gaussian_entropy(g);
    for (const auto& k : gaussian_kinds())
        EXPECT_NEAR(pairwise_estimate(m, k), h, 1e-12) << k.name();
    EXPECT_NEAR(lower_bound_chernoff(m, 0.3), h, 1e-12);
    EXPECT_NEAR(lower_bound_bd(m), h, 1e-12);
    EXPECT_NEAR(upper_bound_kl(m), h, 1e-12);
}

TEST(Estimators, DminAndDmaxHitTheBracket)
{
    Rng rng(62);
    for (int t = 0; t < 10; ++t) {
        auto m = random_any(t, rng);
        EXPECT_NEAR(pairwise_estimate(m, DistanceKind::dmin()), conditional_entropy(m), 1e-12);
        EXPECT_NEAR(pairwise_estimate(m, DistanceKind::dmax()), joint_entropy_upper(m), 1e-12);
    }
}

TEST(Estimators, FarPairKl)
{
    MixtureModel m({0.5, 0.5}, {n1(0), n1(40)});
    EXPECT_NEAR(upper_bound_kl(m), kStdNormalEntropy + std::log(2.0), 1e-12);
    EXPECT_NEAR(upper_bound_kl(m), kFarPairEntropy, 1e-12);
    EXPECT_NEAR(lower_bound_bd(m), kFarPairEntropy, 1e-12);
}

TEST(Estimators, ChernoffAtZeroIsConditional)
{
    Rng rng(63);
    auto m = fixtures::random_gaussian_mixture(5, 2, rng);
    EXPECT_NEAR(lower_bound_chernoff(m, 0.0), conditional_entropy(m), 1e-12);
    EXPECT_THROW(lower_bound_chernoff(m, 1.2), Error);
}

TEST(Estimators, UniformChernoffRestricted)
{
    Rng rng(64);
    auto m = fixtures::random_uniform_mixture(3, 2, rng);
    try {
        lower_bound_chernoff(m, 0.3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedDistance);
    }
    EXPECT_NEAR(lower_bound_chernoff(m, 0.5), lower_bound_bd(m), 1e-15);
}

TEST(Estimators, KdeExamples)
{
    MixtureModel g({1.0}, {n1(0)});
    EXPECT_NEAR(kde_estimate(g), 0.9189385332046727, 1e-15);
    MixtureModel u({1.0}, {UniformComponent(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1))});
    EXPECT_EQ(kde_estimate(u), 0.0);
}

TEST(Estimators, ElkExamples)
{
    MixtureModel g({1.0}, {n1(0)});
    EXPECT_NEAR(elk_estimate(g), kHalfLn4Pi, 1e-14);
}

TEST(Estimators, BiasBound)
{
    MixtureModel one({1.0}, {n1(0)});
    EXPECT_EQ(bias_bound(one), 0.0);
    MixtureModel seven({1, 1, 1, 1, 1, 1, 1}, {n1(0), n1(1), n1(2), n1(3), n1(4), n1(5), n1(6)});
    EXPECT_NEAR(bias_bound(seven), std::log(7.0), 1e-14);
}

TEST(Estimators, ZeroWeightComponentIgnored)
{
    MixtureModel a({1.0, 1.0}, {n1(0), n1(3)});
    MixtureModel b({1.0, 1.0, 0.0}, {n1(0), n1(3), n1(1.5, 0.1)});
    EXPECT_NEAR(lower_bound_bd(a), lower_bound_bd(b), 1e-14);
    EXPECT_NEAR(upper_bound_kl(a), upper_bound_kl(b), 1e-14);
    EXPECT_NEAR(kde_estimate(a), kde_estimate(b), 1e-14);
    EXPECT_NEAR(elk_estimate(a), elk_estimate(b), 1e-14);
}

TEST(Estimators, DistanceMatrixDiagonal)
{
    Rng rng(65);
    auto m = fixtures::random_gaussian_mixture(6, 3, rng);
    for (const auto& k : gaussian_kinds()) {
        Eigen::MatrixXd d = distance_matrix(m, k);
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            EXPECT_EQ(d(i, i), 0.0);
        EXPECT_GE(d.minCoeff(), 0.0);
        EXPECT_NEAR(pairwise_estimate(m, d), pairwise_estimate(m, k), 1e-15);
    }
}

TEST(Estimators, ClusteredGapFarPair)
{
    MixtureModel m({0.5, 0.5}, {n1(0), n1(40)});
    Grouping g(m, {0, 1});
    auto gap = clustered_gap(m, g, 0.5);
    EXPECT_EQ(gap.kappa, 0.0);
    EXPECT_NEAR(gap.beta, 200.0, 1e-9);
    EXPECT_NEAR(gap.bound, std::exp(-200.0), 1e-95);
    EXPECT_LE(gap.measured, gap.bound + 1e-15);
    EXPECT_EQ(clustered_gap_bound(m, g, 0.5), gap.bound);

    MixtureModel same({1, 1, 1}, {n1(2), n1(2), n1(2)});
    EXPECT_EQ(clustered_gap_bound(same, Grouping(same, {0, 0, 0}), 0.5), 0.0);
}

TEST(Estimators, ClusteredGapMinimizedAtHalf)
{
    MixtureModel m({1, 1, 1}, {n1(0), n1(0.5), n1(4)});
    Grouping g(m, {0, 0, 1});
    const double at_half = clustered_gap_bound(m, g, 0.5);
    for (int k = 1; k <= 10; ++k)
        EXPECT_GE(clustered_gap_bound(m, g, k / 10.0), at_half);
    EXPECT_THROW(clustered_gap_bound(m, g, 0.0), Error);
}

TEST(Estimators, ReportEntries)
{
    MixtureModel one({1.0}, {n1(0.3, 2.0)});
    auto r = estimate_all(one);
    const double h = gaussian_entropy(n1(0.3, 2.0));
    EXPECT_FALSE(r.mc.has_value());
    auto e = r.entries();
    ASSERT_EQ(e.size(), 6u);
    EXPECT_EQ(e[0].name, "H_pairwise_KL");
    EXPECT_EQ(e[5].name, "H_joint");
    EXPECT_NEAR(r.h_kl, h, 1e-12);
    EXPECT_NEAR(r.h_bd, h, 1e-12);
    EXPECT_NEAR(r.h_cond, h, 1e-12);
    EXPECT_NEAR(r.h_joint, h, 1e-12);
    EXPECT_TRUE(r.ordering_holds());

    auto with_mc = estimate_all(one, 100, 7);
    ASSERT_TRUE(with_mc.mc.has_value());
    EXPECT_EQ(with_mc.entries().front().name, "H_MC");
    EXPECT_TRUE(with_mc.entries().front().std_error.has_value());
}

TEST(Estimators, WideMixtureMidpoint)
{
    auto m = gen_gaussian_spread(100, 10, 1.0, 2024);
    auto r = estimate_all(m, 2000, 99);
    ASSERT_TRUE(r.mc);
    EXPECT_TRUE(r.ordering_holds());
    EXPECT_GE(r.mc->estimate, r.h_bd - 3 * r.mc->std_error);
    EXPECT_LE(r.mc->estimate, r.h_kl + 3 * r.mc->std_error);
}

TEST(EstimatorsProperty, Bracketing)
{
    Rng rng(66);
    for (int t = 0; t < 60; ++t) {
        auto m = random_any(t, rng);
        const double lo = conditional_entropy(m);
        const double hi = joint_entropy_upper(m);
        for (const auto& k : m.family() == Family::Gaussian ? gaussian_kinds() : uniform_kinds()) {
            const double h = pairwise_estimate(m, k);
            EXPECT_LE(lo, h) << k.name();
            EXPECT_LE(h, hi) << k.name();
        }
        EXPECT_LE(lower_bound_bd(m), upper_bound_kl(m));
    }
}

TEST(EstimatorsProperty, BoundsAgainstMonteCarlo)
{
    Rng rng(67);
    for (int t = 0; t < 24; ++t) {
        auto m = random_any(t, rng);
        auto mc = mc_entropy(m, 4000, 1000 + t);
        EXPECT_LE(lower_bound_bd(m), mc.estimate + 3 * mc.std_error);
        EXPECT_GE(upper_bound_kl(m), mc.estimate - 3 * mc.std_error);
        EXPECT_LE(elk_estimate(m), mc.estimate + 3 * mc.std_error);
        if (m.family() == Family::Gaussian)
            EXPECT_LE(lower_bound_chernoff(m, 0.25), mc.estimate + 3 * mc.std_error);
        EXPECT_LE(std::abs(lower_bound_bd(m) - mc.estimate), bias_bound(m) + 3 * mc.std_error);
    }
}

TEST(EstimatorsProperty, MonotoneDominance)
{
    Rng rng(68);
    for (int t = 0; t < 30; ++t) {
        auto m = fixtures::random_gaussian_mixture(5, 1 + t % 4, rng);
        Eigen::MatrixXd d1 = distance_matrix(m, DistanceKind::bhattacharyya());
        Eigen::MatrixXd d2 = d1;
        for (Eigen::Index i = 0; i < d2.rows(); ++i)
            for (Eigen::Index j = 0; j < d2.cols(); ++j)
                if (i != j)
                    d2(i, j) += rng.uniform(0.0, 2.0);
        EXPECT_LE(pairwise_estimate(m, d1), pairwise_estimate(m, d2));
        Eigen::MatrixXd half_kl = 0.5 * distance_matrix(m, DistanceKind::kl());
        EXPECT_LE(lower_bound_bd(m), pairwise_estimate(m, half_kl) + 1e-12);
        EXPECT_LE(pairwise_estimate(m, half_kl), upper_bound_kl(m));
    }
}

TEST(EstimatorsProperty, HalfIsOptimalForHomoscedastic)
{
    Rng rng(69);
    for (int t = 0; t < 20; ++t) {
        auto m = fixtures::random_homoscedastic_mixture(6, 1 + t % 5, rng);
        const double best = lower_bound_chernoff(m, 0.5);
        for (int k = 0; k <= 16; ++k)
            EXPECT_LE(lower_bound_chernoff(m, k / 16.0), best + 1e-12);
    }
}

TEST(EstimatorsProperty, KdeIsKlMinusHalfDim)
{
    Rng rng(70);
    for (int t = 0; t < 20; ++t) {
        const int d = 1 + t;
        auto m = fixtures::random_homoscedastic_mixture(5, d, rng);
        EXPECT_NEAR(upper_bound_kl(m) - kde_estimate(m), 0.5 * d, 1e-9);
    }
}

TEST(EstimatorsProperty, ClusteredExactness)
{
    Rng rng(71);
    for (int t = 0; t < 10; ++t) {
        const int d = 10;
        const std::size_t k = 5;
        std::vector<Eigen::VectorXd> centers;
        for (std::size_t c = 0; c < k; ++c) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
            v[static_cast<Eigen::Index>(c)] = 30.0;
            centers.push_back(v + fixtures::random_vector(d, rng, 0.1));
        }
        std::vector<Component> comps;
        std::vector<std::size_t> assign;
        for (std::size_t i = 0; i < 15; ++i) {
            const std::size_t c = rng.engine()() % k;
            assign.push_back(c);
            comps.emplace_back(GaussianComponent::isotropic(centers[c], 1.0));
        }
        MixtureModel m(fixtures::random_weights(comps.size(), rng), comps);
        Grouping g(m, assign);
        const double target = conditional_entropy(m) + group_entropy(g);
        EXPECT_NEAR(lower_bound_bd(m), target, 1e-6);
        EXPECT_NEAR(upper_bound_kl(m), target, 1e-6);
        EXPECT_GE(lower_bound_bd(m), elk_estimate(m));
        auto gap = clustered_gap(m, g, 0.5);
        EXPECT_LE(gap.measured, gap.bound + 1e-12);
    }
}

TEST(EstimatorsProperty, EqualSizeUniformIdentities)
{
    Rng rng(72);
    for (int t = 0; t < 30; ++t) {
        auto m = fixtures::random_equal_size_uniform_mixture(2 + t % 8, 1 + t % 5, rng);
        EXPECT_EQ(upper_bound_kl(m), joint_entropy_upper(m));
        EXPECT_NEAR(elk_estimate(m), lower_bound_bd(m), 1e-9);
    }
}
