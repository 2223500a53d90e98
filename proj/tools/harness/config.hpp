#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lfi/error.hpp"
#include "lfi/rng.hpp"

namespace lfi::harness {

enum class Command { kCurve, kDist, kAbc, kBolfi, kBudget };

std::string_view command_name(Command command);

/// Bad configuration. `line` is 1-based, or 0 when the problem is not tied to
/// a line. With a `source` the message reads "source:line: message".
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::size_t line = 0, const std::string& source = "");
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] const std::string& message() const { return message_; }

private:
    std::string message_;
    std::size_t line_;
};

struct ThetaGrid {
    double lo = -1.0;
    double hi = 7.0;
    double step = 0.25;

    [[nodiscard]] std::vector<double> values() const;
};

/// Every tunable of a run. Keys in the config file are the member names.
struct RunConfig {
    Command command = Command::kCurve;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = "out";

    // simulator
    std::size_t sample_size = 10000;
    std::uint64_t observed_seed = 20150701;
    double bounds_lo = -10.0;
    double bounds_hi = 10.0;

    // discrepancy
    std::size_t n_folds = 5;
    double lambda_scale = 1e-6;

    // curve / dist
    ThetaGrid grid;
    std::size_t repetitions = 200;

    // abc
    std::size_t abc_samples = 100;
    double epsilon = 0.55;
    std::size_t max_proposals = 100000;

    // bolfi
    std::size_t bo_acquisitions = 20;
    std::size_t initial_design = 2;
    std::string beta_schedule = "gp-ucb";
    double beta_constant = 4.0;
    std::size_t candidate_grid = 512;
    std::size_t eval_grid = 201;
    double prior_mean = 0.5;
    std::vector<std::size_t> snapshot_steps{1, 2, 4, 8, 10, 20};

    // budget comparison
    double target_radius = 0.5;

    std::size_t threads = 1;

    void validate() const;
};

/// Defaults for `command`: n = 10000 for curve and abc, 50 otherwise.
RunConfig default_config(Command command);

/// Flat YAML mapping of member names to values. Unknown keys and type errors
/// raise ConfigError with the offending line.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);
void apply_config_text(RunConfig& config, std::string_view yaml_text);

/// "key=value" overrides given on the command line; values use YAML syntax.
void apply_override(RunConfig& config, std::string_view assignment);

/// Worker count from LFI_THREADS, else hardware concurrency.
std::size_t thread_count_from_env();

}  // namespace lfi::harness
