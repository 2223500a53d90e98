#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lfi/error.hpp"
#include "lfi/simulator.hpp"

namespace lfi {

/// Observed rows (label 0) stacked over simulated rows (label 1), n of each.
struct LabeledSet {
    Eigen::MatrixXd features;
    std::vector<int> labels;

    /// Rejects unequal row or column counts; class balance is not reweighted.
    static LabeledSet stack(const DataSet& observed, const DataSet& simulated);

    [[nodiscard]] std::size_t rows() const { return labels.size(); }
    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(features.cols()); }
    void validate() const;
};

/// Two-class linear discriminant. Class 1 iff w'x + b > 0; a score of exactly
/// zero goes to class 0.
struct LDAModel {
    Eigen::VectorXd weights;
    double intercept = 0.0;
    double lambda = 0.0;

    [[nodiscard]] double score(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
        return x.dot(weights) + intercept;
    }
    [[nodiscard]] int predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const { return score(x) > 0.0 ? 1 : 0; }
};

/// Thrown when the class means coincide, leaving no discriminating direction.
class DegenerateFit : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Class means and pooled within-class covariance of a subset of rows.
struct ClassMoments {
    Eigen::VectorXd mean0;
    Eigen::VectorXd mean1;
    Eigen::MatrixXd pooled_cov;
};

ClassMoments class_moments(const LabeledSet& data, std::span<const std::size_t> rows);

/// Fits w = (S_pooled + lambda I)^-1 (mu1 - mu0) with the threshold at the
/// midpoint of the projected class means.
LDAModel fit_lda(const LabeledSet& data, double lambda);
LDAModel fit_lda(const ClassMoments& moments, double lambda);

/// lambda = scale * trace(S_pooled) / m.
double relative_lambda(const ClassMoments& moments, double scale);

}  // namespace lfi
