#include "lfi/gp.hpp"

#include <cmath>
#include <numbers>

#include "lfi/error.hpp"

namespace lfi {

namespace {

constexpr double kRelativePivotFloor = 1e-14;

bool factor_ok(const Eigen::LLT<Eigen::MatrixXd>& llt, double max_diag) {
    if (llt.info() != Eigen::Success) return false;
    const Eigen::VectorXd d = llt.matrixLLT().diagonal();
    return d.allFinite() && d.cwiseAbs2().minCoeff() > kRelativePivotFloor * max_diag;
}

Eigen::VectorXd solve_with_factor(const Eigen::MatrixXd& lower, const Eigen::VectorXd& rhs) {
    const auto l = lower.triangularView<Eigen::Lower>();
    Eigen::VectorXd z = l.solve(rhs);
    return l.transpose().solve(z);
}

}  // namespace

void KernelHyper::validate() const {
    if (!(signal_variance > 0.0) || !std::isfinite(signal_variance)) {
        throw InvalidArgument("signal variance must be positive");
    }
    if (lengthscales.size() == 0 || !lengthscales.allFinite() || !(lengthscales.minCoeff() > 0.0)) {
        throw InvalidArgument("lengthscales must be positive");
    }
    if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
        throw InvalidArgument("noise variance must be >= 0");
    }
    if (!std::isfinite(prior_mean)) throw InvalidArgument("prior mean must be finite");
}

double kernel(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y,
              const KernelHyper& hyper) {
    if (x.size() != y.size() || x.size() != hyper.lengthscales.size()) {
        throw InvalidArgument("kernel arguments have mismatched dimensions");
    }
    if (!x.allFinite() || !y.allFinite()) throw InvalidArgument("kernel arguments must be finite");
    const double r2 = ((x - y).array() / hyper.lengthscales.array()).square().sum();
    return hyper.signal_variance * std::exp(-0.5 * r2);
}

double kernel(const ParameterPoint& x, const ParameterPoint& y, const KernelHyper& hyper) {
    return kernel(x.coords(), y.coords(), hyper);
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const KernelHyper& hyper) {
    Eigen::MatrixXd out(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.rows(); ++j) {
            out(i, j) = kernel(a.row(i).transpose(), b.row(j).transpose(), hyper);
        }
    }
    return out;
}

CholeskyResult cholesky_with_jitter(const Eigen::MatrixXd& matrix) {
    if (!matrix.allFinite()) throw NumericalError("cannot factor a matrix with non-finite entries");
    const double max_diag = matrix.diagonal().maxCoeff();
    Eigen::LLT<Eigen::MatrixXd> llt(matrix);
    if (factor_ok(llt, max_diag)) return {llt.matrixL(), 0.0};

    const auto n = matrix.rows();
    for (double jitter = 1e-10; jitter <= 1e-4 * (1.0 + 1e-9); jitter *= 10.0) {
        llt.compute(matrix + jitter * Eigen::MatrixXd::Identity(n, n));
        if (factor_ok(llt, max_diag + jitter)) return {llt.matrixL(), jitter};
    }
    throw NumericalError("covariance matrix is not positive definite even with 1e-4 jitter");
}

GPModel gp_fit(Eigen::MatrixXd inputs, Eigen::VectorXd targets, const KernelHyper& hyper) {
    hyper.validate();
    if (targets.size() < 1) throw InvalidArgument("GP fit needs at least one training point");
    if (inputs.rows() != targets.size()) throw InvalidArgument("GP inputs and targets differ in length");
    if (static_cast<std::size_t>(inputs.cols()) != hyper.dimension()) {
        throw InvalidArgument("GP inputs do not match the kernel dimension");
    }
    if (!inputs.allFinite() || !targets.allFinite()) throw InvalidArgument("GP training data must be finite");

    GPModel model;
    Eigen::MatrixXd cov = kernel_matrix(inputs, inputs, hyper);
    cov.diagonal().array() += hyper.noise_variance;
    auto chol = cholesky_with_jitter(cov);
    model.factor_ = std::move(chol.lower);
    model.jitter_ = chol.jitter;
    model.alpha_ = solve_with_factor(model.factor_, targets.array() - hyper.prior_mean);
    model.inputs_ = std::move(inputs);
    model.targets_ = std::move(targets);
    model.hyper_ = hyper;
    return model;
}

GPModel GPModel::extended(const ParameterPoint& x, double y) const {
    if (x.dimension() != dimension()) throw InvalidArgument("extension point has the wrong dimension");
    if (!std::isfinite(y)) throw InvalidArgument("extension target must be finite");

    const auto k = inputs_.rows();
    Eigen::MatrixXd inputs(k + 1, inputs_.cols());
    inputs.topRows(k) = inputs_;
    inputs.row(k) = x.coords().transpose();
    Eigen::VectorXd targets(k + 1);
    targets.head(k) = targets_;
    targets[k] = y;

    const Eigen::VectorXd cross = kernel_matrix(inputs_, inputs.bottomRows(1), hyper_).col(0);
    const double self = kernel(x.coords(), x.coords(), hyper_) + hyper_.noise_variance + jitter_;
    const Eigen::VectorXd row = factor_.triangularView<Eigen::Lower>().solve(cross);
    const double pivot2 = self - row.squaredNorm();
    const double max_diag = hyper_.signal_variance + hyper_.noise_variance + jitter_;
    if (!(pivot2 > kRelativePivotFloor * max_diag)) return gp_fit(std::move(inputs), std::move(targets), hyper_);

    GPModel out;
    out.factor_ = Eigen::MatrixXd::Zero(k + 1, k + 1);
    out.factor_.topLeftCorner(k, k) = factor_;
    out.factor_.block(k, 0, 1, k) = row.transpose();
    out.factor_(k, k) = std::sqrt(pivot2);
    out.jitter_ = jitter_;
    out.alpha_ = solve_with_factor(out.factor_, targets.array() - hyper_.prior_mean);
    out.inputs_ = std::move(inputs);
    out.targets_ = std::move(targets);
    out.hyper_ = hyper_;
    return out;
}

PosteriorStats gp_predict(const GPModel& model, const ParameterPoint& theta) {
    if (theta.dimension() != model.dimension()) throw InvalidArgument("prediction point has the wrong dimension");
    const Eigen::VectorXd& x = theta.coords();
    Eigen::VectorXd cross(model.inputs().rows());
    for (Eigen::Index i = 0; i < cross.size(); ++i) {
        cross[i] = kernel(model.inputs().row(i).transpose(), x, model.hyper());
    }
    const Eigen::VectorXd v = model.factor().triangularView<Eigen::Lower>().solve(cross);
    PosteriorStats out;
    out.mean = model.hyper().prior_mean + cross.dot(model.alpha());
    out.variance = std::max(0.0, kernel(x, x, model.hyper()) - v.squaredNorm());
    return out;
}

double log_marginal_likelihood(const GPModel& model) {
    const Eigen::VectorXd residual = model.targets().array() - model.hyper().prior_mean;
    const double k = static_cast<double>(model.size());
    return -0.5 * residual.dot(model.alpha()) - model.factor().diagonal().array().log().sum() -
           0.5 * k * std::log(2.0 * std::numbers::pi);
}

Eigen::MatrixXd to_matrix(const std::vector<ParameterPoint>& points) {
    if (points.empty()) return {};
    Eigen::MatrixXd out(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(points[0].dimension()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dimension() != points[0].dimension()) throw InvalidArgument("points differ in dimension");
        out.row(static_cast<Eigen::Index>(i)) = points[i].coords().transpose();
    }
    return out;
}

}  // namespace lfi
