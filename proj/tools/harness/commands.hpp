#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "harness/config.hpp"
#include "lfi/abc.hpp"
#include "lfi/bayes_opt.hpp"

namespace lfi::harness {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitBudget = 3,
    kExitNumerical = 4,
};

struct CommandResult {
    int exit_code = kExitOk;
    std::vector<std::filesystem::path> outputs;  ///< data files, manifest excluded
    std::filesystem::path manifest;
    nlohmann::json summary;
};

/// Discriminability over a theta grid with the closed-form Gaussian accuracy alongside.
CommandResult cmd_discriminability_curve(const RunConfig& config);

/// Per-theta quantiles of R independent discrepancy draws.
CommandResult cmd_delta_distribution(const RunConfig& config);

CommandResult cmd_abc(const RunConfig& config);

/// BO trace, per-step surrogate snapshots and the approximate posterior.
CommandResult cmd_bolfi(const RunConfig& config);

/// Rejection-ABC proposals against BO evaluations for the same mode accuracy.
CommandResult cmd_budget(const RunConfig& config);

/// Validates the config and dispatches on config.command.
CommandResult run_command(const RunConfig& config);

// Pieces shared with tests.
Box toy_bounds(const RunConfig& config);
ABCConfig abc_config(const RunConfig& config, RngSeed root);
BOConfig bo_config(const RunConfig& config);
DiscriminabilityOptions discrepancy_options(const RunConfig& config);

/// Type-7 (linear interpolation) sample quantile; sorts a copy.
double quantile(std::vector<double> values, double p);

/// Mode of a Gaussian kernel density estimate (Silverman bandwidth) of 1-d
/// samples, located on a 2001-point grid over the box.
double kde_mode(const std::vector<double>& samples, const Box& bounds);

}  // namespace lfi::harness
