#include "lfi/lda.hpp"

#include <cmath>
#include <numeric>

namespace lfi {

void LabeledSet::validate() const {
    if (static_cast<std::size_t>(features.rows()) != labels.size()) {
        throw InvalidArgument("labeled set: feature rows and label count differ");
    }
    if (!features.allFinite()) throw InvalidArgument("labeled set: non-finite features");
    std::size_t ones = 0;
    for (int l : labels) {
        if (l != 0 && l != 1) throw InvalidArgument("labeled set: labels must be 0 or 1");
        ones += static_cast<std::size_t>(l);
    }
    if (2 * ones != labels.size()) throw InvalidArgument("labeled set: classes must be balanced");
}

LabeledSet LabeledSet::stack(const DataSet& observed, const DataSet& simulated) {
    if (observed.cols() != simulated.cols()) {
        throw InvalidArgument("observed and simulated data have different column counts");
    }
    if (observed.rows() != simulated.rows()) {
        throw InvalidArgument("observed and simulated data must have the same number of rows");
    }
    LabeledSet out;
    const auto n = static_cast<Eigen::Index>(observed.rows());
    out.features.resize(2 * n, observed.values().cols());
    out.features.topRows(n) = observed.values();
    out.features.bottomRows(n) = simulated.values();
    out.labels.assign(static_cast<std::size_t>(2 * n), 0);
    std::fill(out.labels.begin() + n, out.labels.end(), 1);
    return out;
}

ClassMoments class_moments(const LabeledSet& data, std::span<const std::size_t> rows) {
    std::vector<Eigen::Index> members[2];
    for (std::size_t r : rows) members[data.labels[r]].push_back(static_cast<Eigen::Index>(r));
    if (members[0].size() < 2 || members[1].size() < 2) {
        throw InvalidArgument("LDA needs at least two rows per class");
    }

    ClassMoments out;
    Eigen::MatrixXd scatter[2];
    Eigen::VectorXd* means[2] = {&out.mean0, &out.mean1};
    for (int c = 0; c < 2; ++c) {
        const Eigen::MatrixXd x = data.features(members[c], Eigen::all);
        *means[c] = x.colwise().mean().transpose();
        const Eigen::MatrixXd centered = x.rowwise() - means[c]->transpose();
        scatter[c] = centered.transpose() * centered;
    }
    // Summed as (0 + 1) regardless of which class is which so that relabelling
    // leaves the pooled covariance bit-identical.
    out.pooled_cov = (scatter[0] + scatter[1]) / static_cast<double>(members[0].size() + members[1].size() - 2);
    return out;
}

double relative_lambda(const ClassMoments& moments, double scale) {
    const auto m = static_cast<double>(moments.pooled_cov.rows());
    return scale * moments.pooled_cov.trace() / m;
}

LDAModel fit_lda(const ClassMoments& moments, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("LDA regularizer must be >= 0");
    const auto m = moments.pooled_cov.rows();
    const Eigen::MatrixXd regularized = moments.pooled_cov + lambda * Eigen::MatrixXd::Identity(m, m);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(regularized);
    const double scale = std::max(regularized.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 1e-13 * scale || regularized.diagonal().maxCoeff() <= 0.0) {
        throw NumericalError("pooled covariance is singular; fit with a positive regularizer lambda");
    }
    const Eigen::VectorXd diff = moments.mean1 - moments.mean0;
    if (diff.isZero(0.0)) throw DegenerateFit("class means coincide; no discriminating direction");

    LDAModel model;
    model.weights = ldlt.solve(diff);
    if (!model.weights.allFinite() || model.weights.isZero(0.0)) {
        throw NumericalError("LDA weights are degenerate");
    }
    model.intercept = -0.5 * model.weights.dot(moments.mean0 + moments.mean1);
    model.lambda = lambda;
    return model;
}

LDAModel fit_lda(const LabeledSet& data, double lambda) {
    data.validate();
    std::vector<std::size_t> rows(data.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return fit_lda(class_moments(data, rows), lambda);
}

}  // namespace lfi
