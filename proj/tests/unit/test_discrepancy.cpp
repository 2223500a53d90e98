#include <cmath>

#include <gtest/gtest.h>

#include "lfi/discrepancy.hpp"
#include "support/oracles.hpp"

namespace lfi {
namespace {

constexpr std::size_t kLargeN = 10000;

DiscrepancyValue large_sample(double theta, std::uint64_t seed) {
    const auto obs = observed_data(kLargeN, RngSeed{seed, 100});
    return delta_theta(ParameterPoint{theta}, GaussianMeanSimulator{}, obs, kLargeN, DiscriminabilityOptions{},
                       RngSeed{seed, 200});
}

TEST(Discriminability, LargeSampleCurvePoints) {
    EXPECT_GE(large_sample(6.0, 1).value, 0.98);
    const double half = large_sample(0.5, 1).value;
    EXPECT_GE(half, 0.55);
    EXPECT_LE(half, 0.65);
    const double zero = large_sample(0.0, 1).value;
    EXPECT_GE(zero, 0.48);
    EXPECT_LE(zero, 0.52);
}

TEST(Discriminability, MatchesBayesAccuracyOracle) {
    for (double theta : {0.0, 0.5, 1.0, 2.0, 4.0, 6.0}) {
        const double oracle = testing::normal_cdf_by_quadrature(std::abs(theta) / 2.0);
        EXPECT_NEAR(large_sample(theta, 2).value, oracle, 0.03) << "theta " << theta;
    }
}

TEST(Discriminability, ChanceLevelAtTruthOverSeeds) {
    std::vector<double> v;
    for (std::uint64_t s = 0; s < 100; ++s) v.push_back(large_sample(0.0, 1000 + s).value);
    EXPECT_NEAR(testing::mean(v), 0.5, 0.03);
}

TEST(Discriminability, DeterministicAndRecordsSeed) {
    const auto obs = observed_data(200, RngSeed{1, 0});
    const auto sim = simulate_gaussian(ParameterPoint{0.7}, 200, RngSeed{2, 0});
    const auto a = discriminability(obs, sim, DiscriminabilityOptions{}, RngSeed{3, 4});
    const auto b = discriminability(obs, sim, DiscriminabilityOptions{}, RngSeed{3, 4});
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.n_folds, 5u);
    EXPECT_EQ(a.eval_seed, (RngSeed{3, 4}));
}

TEST(Discriminability, RejectsBadShapes) {
    const auto obs = observed_data(20, RngSeed{1, 0});
    Eigen::MatrixXd two_cols = Eigen::MatrixXd::Random(20, 2);
    EXPECT_THROW(discriminability(obs, DataSet(two_cols), DiscriminabilityOptions{}, RngSeed{}), InvalidArgument);
    EXPECT_THROW(discriminability(obs, obs, DiscriminabilityOptions{21, 1e-6}, RngSeed{}), InvalidArgument);
    EXPECT_THROW(discriminability(obs, obs, DiscriminabilityOptions{1, 1e-6}, RngSeed{}), InvalidArgument);
    EXPECT_THROW(discriminability(obs, observed_data(30, RngSeed{1, 0}), DiscriminabilityOptions{}, RngSeed{}),
                 InvalidArgument);
}

TEST(Discriminability, AlwaysInUnitInterval) {
    Rng rng(RngSeed{42, 0});
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 5 + rng.below(60);
        const double theta = rng.uniform(-8.0, 8.0);
        const auto obs = observed_data(n, RngSeed{static_cast<std::uint64_t>(trial), 1});
        const auto v = delta_theta(ParameterPoint{theta}, GaussianMeanSimulator{}, obs, n,
                                   DiscriminabilityOptions{2 + rng.below(4), 1e-6},
                                   RngSeed{static_cast<std::uint64_t>(trial), 2});
        EXPECT_GE(v.value, 0.0);
        EXPECT_LE(v.value, 1.0);
    }
}

TEST(StratifiedFolds, KeepClassBalance) {
    const auto data = LabeledSet::stack(observed_data(103, RngSeed{1, 0}), observed_data(103, RngSeed{2, 0}));
    const auto folds = stratified_folds(data, 5, RngSeed{9, 9});
    std::vector<int> count0(5, 0), count1(5, 0);
    for (std::size_t r = 0; r < data.rows(); ++r) (data.labels[r] == 0 ? count0 : count1)[folds[r]]++;
    for (int f = 0; f < 5; ++f) {
        EXPECT_EQ(count0[f], count1[f]);
        EXPECT_GE(count0[f], 20);
        EXPECT_LE(count0[f], 21);
    }
}

TEST(DeltaTheta, SmallSampleDistributionAtTruth) {
    const auto obs = observed_data(50, kCanonicalObservedSeed);
    std::vector<double> draws;
    for (std::uint64_t r = 0; r < 100; ++r) {
        draws.push_back(delta_theta(ParameterPoint{0.0}, GaussianMeanSimulator{}, obs, 50, DiscriminabilityOptions{},
                                    RngSeed{r, 31})
                            .value);
    }
    EXPECT_GE(testing::mean(draws), 0.45);
    EXPECT_LE(testing::mean(draws), 0.60);
    EXPECT_GT(testing::sample_sd(draws), 0.02);
}

TEST(DeltaTheta, FarParameterIsAlmostPerfectlySeparable) {
    const auto obs = observed_data(50, kCanonicalObservedSeed);
    for (std::uint64_t r = 0; r < 100; ++r) {
        EXPECT_GE(delta_theta(ParameterPoint{6.0}, GaussianMeanSimulator{}, obs, 50, DiscriminabilityOptions{},
                              RngSeed{r, 32})
                      .value,
                  0.9);
    }
}

TEST(DeltaTheta, ReproducibleWithFixedSeed) {
    const auto obs = observed_data(50, kCanonicalObservedSeed);
    const auto a = delta_theta(ParameterPoint{0.3}, GaussianMeanSimulator{}, obs, 50, {}, RngSeed{5, 6});
    const auto b = delta_theta(ParameterPoint{0.3}, GaussianMeanSimulator{}, obs, 50, {}, RngSeed{5, 6});
    const auto c = delta_theta(ParameterPoint{0.3}, GaussianMeanSimulator{}, obs, 50, {}, RngSeed{5, 7});
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.eval_seed, (RngSeed{5, 6}));
    EXPECT_NE(a.eval_seed, c.eval_seed);
}

// Process noise at n = 50 in the region where the accuracy is not saturated.
// For |theta| >= 4 the spread collapses below 0.02 (accuracy pinned near 1);
// the acceptance suite checks the full grid.
TEST(DeltaTheta, SmallSampleSpreadBeforeSaturation) {
    const auto obs = observed_data(50, kCanonicalObservedSeed);
    for (double theta : {0.0, 0.5, 1.0, 2.0}) {
        std::vector<double> draws;
        for (std::uint64_t r = 0; r < 200; ++r) {
            draws.push_back(
                delta_theta(ParameterPoint{theta}, GaussianMeanSimulator{}, obs, 50, {}, RngSeed{r, 33}).value);
        }
        EXPECT_GE(testing::sample_sd(draws), 0.02) << "theta " << theta;
    }
}

}  // namespace
}  // namespace lfi
