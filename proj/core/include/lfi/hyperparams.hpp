#pragma once

#include <Eigen/Dense>

#include "lfi/gp.hpp"

namespace lfi {

struct HyperBounds {
    Interval signal_variance{1e-4, 1.0};
    Interval lengthscale{0.1, 20.0};
    Interval noise_variance{1e-6, 0.1};
    /// A degenerate interval (lo == hi) keeps the prior mean fixed.
    Interval prior_mean{0.5, 0.5};
};

struct HyperSearch {
    HyperBounds bounds;
    /// Returned unchanged when K < min_points or no candidate gives a finite evidence.
    KernelHyper defaults;
    std::size_t min_points = 3;
    std::size_t grid_points_per_axis = 7;
    std::size_t max_sweeps = 200;
};

/// Maximizes the log marginal likelihood over log(sf2), log(l_i), log(sn2) and
/// the prior mean: a log-scale grid, then coordinate descent with Brent line
/// searches. Deterministic; the result always lies inside the bounds.
KernelHyper optimize_hyperparams(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                 const HyperSearch& search);

/// Evidence as a function of the packed search coordinates
/// [log sf2, log l_1..l_d, log sn2, c]; -inf when the fit fails.
double evidence_at(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets, const Eigen::VectorXd& packed);

Eigen::VectorXd pack_hyper(const KernelHyper& hyper);
KernelHyper unpack_hyper(const Eigen::VectorXd& packed, std::size_t dimension);

}  // namespace lfi
