#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "lfi/discrepancy.hpp"
#include "lfi/lda.hpp"

namespace lfi {
namespace {

LabeledSet gaussian_classes(double mean0, double mean1, std::size_t n, std::uint64_t seed) {
    return LabeledSet::stack(simulate_gaussian(ParameterPoint{mean0}, n, RngSeed{seed, 1}),
                             simulate_gaussian(ParameterPoint{mean1}, n, RngSeed{seed, 2}));
}

double training_accuracy(const LabeledSet& data, double threshold) {
    std::size_t correct = 0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const int predicted = data.features(static_cast<Eigen::Index>(r), 0) > threshold ? 1 : 0;
        correct += predicted == data.labels[r] ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(data.rows());
}

TEST(FitLda, ThresholdAtMidpointOfSeparatedClasses) {
    const auto data = gaussian_classes(0.0, 6.0, 5000, 1);
    const LDAModel model = fit_lda(data, 0.0);
    ASSERT_GT(model.weights[0], 0.0);
    const double threshold = -model.intercept / model.weights[0];
    EXPECT_NEAR(threshold, 3.0, 0.1);

    // Brute-force oracle: best training accuracy over a fine threshold grid.
    double best = 0.0;
    for (double t = 0.0; t <= 6.0; t += 0.001) best = std::max(best, training_accuracy(data, t));
    EXPECT_NEAR(training_accuracy(data, threshold), best, 1e-3);
}

TEST(FitLda, WeightSignFollowsMeanDifference) {
    const auto up = fit_lda(gaussian_classes(0.0, 1.0, 2000, 2), 0.0);
    EXPECT_GT(up.weights[0], 0.0);
    const auto down = fit_lda(gaussian_classes(1.0, 0.0, 2000, 2), 0.0);
    EXPECT_LT(down.weights[0], 0.0);
}

TEST(FitLda, IdenticalClassesGiveChanceLevel) {
    const DataSet same = simulate_gaussian(ParameterPoint{0.0}, 500, RngSeed{3, 0});
    const auto data = LabeledSet::stack(same, same);
    EXPECT_THROW(fit_lda(data, 1e-6), DegenerateFit);
    const auto value = discriminability(same, same, DiscriminabilityOptions{}, RngSeed{4, 0});
    EXPECT_DOUBLE_EQ(value.value, 0.5);
}

TEST(FitLda, SingularCovarianceNeedsRegularization) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(10, 1, 1.0);
    Eigen::MatrixXd b = Eigen::MatrixXd::Constant(10, 1, 2.0);
    const auto data = LabeledSet::stack(DataSet(a), DataSet(b));
    try {
        fit_lda(data, 0.0);
        FAIL() << "expected a singular-covariance error";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("regularizer"), std::string::npos);
    }
    const auto model = fit_lda(data, 0.5);
    EXPECT_EQ(model.predict(Eigen::RowVectorXd::Constant(1, 2.0)), 1);
    EXPECT_EQ(model.predict(Eigen::RowVectorXd::Constant(1, 1.0)), 0);

    // Collinear 2-d features: singular without lambda.
    Eigen::MatrixXd c(6, 2), d(6, 2);
    for (int i = 0; i < 6; ++i) {
        c.row(i) << i, 2.0 * i;
        d.row(i) << i + 1.0, 2.0 * (i + 1.0);
    }
    EXPECT_THROW(fit_lda(LabeledSet::stack(DataSet(c), DataSet(d)), 0.0), NumericalError);
}

TEST(FitLda, RejectsBadInput) {
    LabeledSet data = gaussian_classes(0.0, 1.0, 10, 5);
    data.features(3, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(fit_lda(data, 0.0), InvalidArgument);
    EXPECT_THROW(fit_lda(gaussian_classes(0.0, 1.0, 10, 5), -1.0), InvalidArgument);

    LabeledSet unbalanced = gaussian_classes(0.0, 1.0, 10, 5);
    unbalanced.labels[0] = 1;
    EXPECT_THROW(fit_lda(unbalanced, 0.0), InvalidArgument);

    EXPECT_THROW(LabeledSet::stack(simulate_gaussian(ParameterPoint{0.0}, 10, RngSeed{}),
                                   simulate_gaussian(ParameterPoint{0.0}, 12, RngSeed{})),
                 InvalidArgument);
}

TEST(FitLda, ZeroScoreGoesToClassZero) {
    LDAModel model;
    model.weights = Eigen::VectorXd::Ones(1);
    model.intercept = -2.0;
    EXPECT_EQ(model.predict(Eigen::RowVectorXd::Constant(1, 2.0)), 0);
    EXPECT_EQ(model.predict(Eigen::RowVectorXd::Constant(1, std::nextafter(2.0, 3.0))), 1);
}

TEST(FitLda, MultivariateMatchesClosedForm) {
    Eigen::MatrixXd a(4, 2), b(4, 2);
    a << 0, 0, 1, 0, 0, 1, 1, 1;
    b << 2, 1, 3, 1, 2, 2, 3, 2;
    const auto model = fit_lda(LabeledSet::stack(DataSet(a), DataSet(b)), 0.0);
    // Pooled covariance diag(1/3, 1/3); mean difference (2, 1).
    EXPECT_NEAR(model.weights[0], 6.0, 1e-12);
    EXPECT_NEAR(model.weights[1], 3.0, 1e-12);
    EXPECT_NEAR(model.intercept, -(6.0 * 1.5 + 3.0 * 1.0), 1e-12);
}

// Swapping class labels negates w and b, so every prediction flips and the
// cross-validated accuracy is unchanged.
TEST(LdaProperties, LabelSwapSymmetry) {
    Rng rng(RngSeed{77, 0});
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = static_cast<Eigen::Index>(1 + trial % 3);
        const auto n = static_cast<Eigen::Index>(10 + rng.below(60));
        Eigen::MatrixXd x0(n, m), x1(n, m);
        const double shift = rng.uniform(0.0, 2.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                x0(i, j) = rng.normal();
                x1(i, j) = rng.normal() + shift;
            }
        }
        const LabeledSet data = LabeledSet::stack(DataSet(x0), DataSet(x1));
        LabeledSet swapped = data;
        for (auto& l : swapped.labels) l = 1 - l;

        const DiscriminabilityOptions options{static_cast<std::size_t>(2 + trial % 4), 1e-6};
        const RngSeed seed{static_cast<std::uint64_t>(trial), 9};
        EXPECT_EQ(cross_validated_accuracy(data, options, seed), cross_validated_accuracy(swapped, options, seed))
            << "trial " << trial;

        const LDAModel a = fit_lda(data, 1e-3);
        const LDAModel b = fit_lda(swapped, 1e-3);
        EXPECT_TRUE(b.weights == -a.weights);
        EXPECT_EQ(b.intercept, -a.intercept);
    }
}

}  // namespace
}  // namespace lfi
