#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "lfi/simulator.hpp"

namespace lfi {

/// Squared-exponential kernel hyperparameters plus the constant prior mean.
struct KernelHyper {
    double signal_variance = 1.0;
    Eigen::VectorXd lengthscales = Eigen::VectorXd::Ones(1);
    double noise_variance = 0.0;
    double prior_mean = 0.0;

    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(lengthscales.size()); }
    void validate() const;
};

/// sf2 * exp(-0.5 * sum_i (x_i - y_i)^2 / l_i^2)
double kernel(const ParameterPoint& x, const ParameterPoint& y, const KernelHyper& hyper);
double kernel(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y,
              const KernelHyper& hyper);

/// Covariance matrix between the rows of a and the rows of b.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const KernelHyper& hyper);

struct CholeskyResult {
    Eigen::MatrixXd lower;
    double jitter = 0.0;
};

/// Lower Cholesky factor of `matrix`. On failure retries with jitter 1e-10,
/// 1e-9, ..., 1e-4 added to the diagonal, then throws NumericalError. A pivot
/// below 1e-14 of the largest diagonal entry counts as a failure.
CholeskyResult cholesky_with_jitter(const Eigen::MatrixXd& matrix);

struct PosteriorStats {
    double mean = 0.0;
    double variance = 0.0;
};

/// GP regression fit on K training pairs. Immutable once built.
class GPModel {
public:
    [[nodiscard]] const Eigen::MatrixXd& inputs() const { return inputs_; }
    [[nodiscard]] const Eigen::VectorXd& targets() const { return targets_; }
    [[nodiscard]] const KernelHyper& hyper() const { return hyper_; }
    /// L with L L' = K + (sigma_n^2 + jitter) I.
    [[nodiscard]] const Eigen::MatrixXd& factor() const { return factor_; }
    /// (K + sigma_n^2 I)^-1 (y - c)
    [[nodiscard]] const Eigen::VectorXd& alpha() const { return alpha_; }
    [[nodiscard]] double jitter() const { return jitter_; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(targets_.size()); }
    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(inputs_.cols()); }

    /// Conditions on one more observation by appending a row to the Cholesky
    /// factor instead of refactorizing. Falls back to a full refit if the
    /// appended pivot is not positive.
    [[nodiscard]] GPModel extended(const ParameterPoint& x, double y) const;

private:
    friend GPModel gp_fit(Eigen::MatrixXd inputs, Eigen::VectorXd targets, const KernelHyper& hyper);

    Eigen::MatrixXd inputs_;
    Eigen::VectorXd targets_;
    KernelHyper hyper_;
    Eigen::MatrixXd factor_;
    Eigen::VectorXd alpha_;
    double jitter_ = 0.0;
};

/// inputs is K x d (one training point per row).
GPModel gp_fit(Eigen::MatrixXd inputs, Eigen::VectorXd targets, const KernelHyper& hyper);

PosteriorStats gp_predict(const GPModel& model, const ParameterPoint& theta);

/// log N(y | c, K + sigma_n^2 I)
double log_marginal_likelihood(const GPModel& model);

/// Stacks parameter points into a K x d matrix.
Eigen::MatrixXd to_matrix(const std::vector<ParameterPoint>& points);

}  // namespace lfi
