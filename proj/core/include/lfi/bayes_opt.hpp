#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lfi/abc.hpp"
#include "lfi/discrepancy.hpp"
#include "lfi/gp.hpp"
#include "lfi/hyperparams.hpp"
#include "lfi/simulator.hpp"

namespace lfi {

enum class BetaSchedule {
    kGpUcb,     ///< max(1, 2 log(k^2 pi^2 / 0.3))
    kConstant,  ///< AcquisitionConfig::beta_constant at every step
};

struct AcquisitionConfig {
    BetaSchedule schedule = BetaSchedule::kGpUcb;
    double beta_constant = 4.0;
    /// Points of the regular candidate grid; as many jittered copies are added.
    std::size_t candidate_grid_size = 512;
    std::size_t initial_design_size = 2;

    [[nodiscard]] double beta(std::size_t k) const;
    void validate() const;
};

double gp_ucb_beta(std::size_t k);

/// mu(theta) - sqrt(beta) * s(theta)
double lower_confidence_bound(const GPModel& model, const ParameterPoint& theta, double beta);

/// Regular tensor grid over the box with `points_per_axis`^d nodes, endpoints included.
std::vector<ParameterPoint> regular_grid(const Box& bounds, std::size_t points_per_axis);

/// Candidate set for step k: a regular grid of about candidate_grid_size points
/// followed by one seeded, in-cell jittered copy of each grid point.
std::vector<ParameterPoint> candidate_points(const Box& bounds, const AcquisitionConfig& config, std::size_t k,
                                             RngSeed seed);

/// Argmin of the LCB over candidate_points(bounds, config, k, seed); ties go to
/// the lowest candidate index.
ParameterPoint acquire_next(const GPModel& model, const Box& bounds, const AcquisitionConfig& config,
                            std::size_t k, RngSeed seed);

struct BOConfig {
    AcquisitionConfig acquisition;
    std::size_t total_acquisitions = 20;
    std::size_t sample_size = 50;
    DiscriminabilityOptions discrepancy;
    /// Hyperparameters are re-optimized once at least this many points exist.
    std::size_t reoptimize_from = 5;
    HyperSearch hyper_search;
    /// Per-axis resolution of the fixed grid on which mu and s^2 are recorded.
    std::size_t eval_grid_size = 201;
    std::size_t threads = 1;

    void validate() const;
};

/// Defaults for the toy problem on `bounds`: sf2 = 0.05, l = width / 10,
/// sn2 = 1e-3, c = 0.5, with matching search bounds.
BOConfig default_bo_config(const Box& bounds);

struct BOStep {
    std::size_t k = 0;  ///< 1-based evaluation count after this step
    ParameterPoint theta;
    double delta = 0.0;
    RngSeed eval_seed;
    KernelHyper hyper;  ///< surrogate hyperparameters after conditioning on steps 1..k
    Eigen::VectorXd grid_mean;
    Eigen::VectorXd grid_variance;
    ParameterPoint incumbent;  ///< argmin of grid_mean
    double incumbent_mean = 0.0;
};

struct BOTrace {
    std::vector<ParameterPoint> grid;
    std::vector<BOStep> steps;
    /// Set when an evaluation failed; the steps before the failure are kept.
    std::optional<std::string> error;

    [[nodiscard]] const ParameterPoint& incumbent() const { return steps.back().incumbent; }
    [[nodiscard]] std::size_t simulator_calls() const { return steps.size(); }
};

/// Surrogate after step k (1-based), rebuilt from the trace.
GPModel surrogate_at(const BOTrace& trace, std::size_t k);

/// Initial uniform design, then GP fit / LCB acquisition / evaluation until
/// total_acquisitions evaluations exist.
BOTrace bolfi_run(const Simulator& simulator, const DataSet& observed, const Box& bounds, const BOConfig& config,
                  RngSeed root);

struct ApproxPosterior {
    std::vector<ParameterPoint> grid;
    Eigen::VectorXd unnormalized_density;
    double epsilon_model = 0.0;

    /// Density divided by its sum over the grid.
    [[nodiscard]] Eigen::VectorXd normalized() const;
    [[nodiscard]] const ParameterPoint& mode() const;
};

/// prior(theta) * Phi((eps - mu(theta)) / sqrt(s^2(theta) + sn2)); eps defaults
/// to the minimum surrogate mean over the grid.
ApproxPosterior approx_posterior(const GPModel& model, const PriorSpec& prior, std::span<const ParameterPoint> grid,
                                 std::optional<double> epsilon = std::nullopt);

}  // namespace lfi
