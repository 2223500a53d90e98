#include "harness/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "harness/csv.hpp"
#include "harness/manifest.hpp"
#include "lfi/math.hpp"
#include "lfi/parallel.hpp"

namespace lfi::harness {

namespace {

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RngSeed root_seed(const RunConfig& config) { return RngSeed{config.seed, 0}; }

DataSet observed(const RunConfig& config) {
    return observed_data(config.sample_size, RngSeed{config.observed_seed, 0});
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    return config.out_dir;
}

void finish(CommandResult& result, Manifest& manifest, const std::string& status) {
    for (const auto& file : result.outputs) manifest.output(file);
    manifest.set("summary", result.summary);
    manifest.status(status, result.exit_code);
    result.manifest = manifest.write();
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void write_snapshot(const std::filesystem::path& path, const BOTrace& trace, const BOStep& step) {
    CsvWriter csv(path, {"theta", "mean", "variance"});
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        csv.cell(trace.grid[i][0]).cell(step.grid_mean[ii]).cell(step.grid_variance[ii]);
        csv.end_row();
    }
}

}  // namespace

Box toy_bounds(const RunConfig& config) { return Box({{config.bounds_lo, config.bounds_hi}}); }

DiscriminabilityOptions discrepancy_options(const RunConfig& config) {
    return DiscriminabilityOptions{config.n_folds, config.lambda_scale};
}

ABCConfig abc_config(const RunConfig& config, RngSeed root) {
    ABCConfig out;
    out.n_samples = config.abc_samples;
    out.epsilon = config.epsilon;
    out.max_proposals = config.max_proposals;
    out.sample_size = config.sample_size;
    out.discrepancy = discrepancy_options(config);
    out.root = root;
    out.threads = config.threads;
    return out;
}

BOConfig bo_config(const RunConfig& config) {
    BOConfig out = default_bo_config(toy_bounds(config));
    out.acquisition.schedule = config.beta_schedule == "constant" ? BetaSchedule::kConstant : BetaSchedule::kGpUcb;
    out.acquisition.beta_constant = config.beta_constant;
    out.acquisition.candidate_grid_size = config.candidate_grid;
    out.acquisition.initial_design_size = config.initial_design;
    out.total_acquisitions = config.bo_acquisitions;
    out.sample_size = config.sample_size;
    out.discrepancy = discrepancy_options(config);
    out.hyper_search.defaults.prior_mean = config.prior_mean;
    out.hyper_search.bounds.prior_mean = {config.prior_mean, config.prior_mean};
    out.eval_grid_size = config.eval_grid;
    out.threads = config.threads;
    return out;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw InvalidArgument("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double kde_mode(const std::vector<double>& samples, const Box& bounds) {
    if (samples.size() < 2) throw InvalidArgument("kde_mode needs at least two samples");
    const double sd = sd_of(samples);
    const double iqr = quantile(samples, 0.75) - quantile(samples, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (!(spread > 0.0)) spread = sd > 0.0 ? sd : 1e-3 * bounds[0].width();
    const double bandwidth = 0.9 * spread * std::pow(static_cast<double>(samples.size()), -0.2);
    const auto grid = regular_grid(bounds, 2001);
    double best_x = grid.front()[0];
    double best_density = -1.0;
    for (const auto& g : grid) {
        double density = 0.0;
        for (double s : samples) {
            const double z = (g[0] - s) / bandwidth;
            density += std::exp(-0.5 * z * z);
        }
        if (density > best_density) {
            best_density = density;
            best_x = g[0];
        }
    }
    return best_x;
}

CommandResult cmd_discriminability_curve(const RunConfig& config) {
    const auto dir = prepare_out_dir(config);
    Manifest manifest(config);
    Stopwatch clock;
    CommandResult result;

    const DataSet obs = observed(config);
    const GaussianMeanSimulator simulator;
    const auto thetas = config.grid.values();
    const auto options = discrepancy_options(config);
    const RngSeed root = root_seed(config);
    manifest.stage("observed_data", clock.lap());

    const auto values = parallel_map(thetas.size(), config.threads, [&](std::size_t i) {
        return delta_theta(ParameterPoint{thetas[i]}, simulator, obs, config.sample_size, options,
                           root.derive(stream::kGridPoint, i))
            .value;
    });
    manifest.stage("sweep", clock.lap());

    const auto path = dir / "curve.csv";
    {
        CsvWriter csv(path, {"theta", "discriminability", "oracle"});
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            csv.cell(thetas[i]).cell(values[i]).cell(gaussian_bayes_accuracy(thetas[i]));
            csv.end_row();
        }
    }
    result.outputs.push_back(path);
    result.summary = {{"points", thetas.size()}};
    finish(result, manifest, "ok");
    return result;
}

CommandResult cmd_delta_distribution(const RunConfig& config) {
    const auto dir = prepare_out_dir(config);
    Manifest manifest(config);
    Stopwatch clock;
    CommandResult result;

    const DataSet obs = observed(config);
    const GaussianMeanSimulator simulator;
    const auto thetas = config.grid.values();
    const auto options = discrepancy_options(config);
    const RngSeed root = root_seed(config);
    const std::size_t reps = config.repetitions;

    const auto draws = parallel_map(thetas.size() * reps, config.threads, [&](std::size_t flat) {
        const std::size_t i = flat / reps;
        const std::size_t r = flat % reps;
        return delta_theta(ParameterPoint{thetas[i]}, simulator, obs, config.sample_size, options,
                           root.derive(stream::kGridPoint, i).derive(stream::kRepetition, r))
            .value;
    });
    manifest.stage("draws", clock.lap());

    const auto bands_path = dir / "delta_distribution.csv";
    const auto draws_path = dir / "delta_draws.csv";
    {
        CsvWriter bands(bands_path, {"theta", "mean", "sd", "q05", "q25", "q50", "q75", "q95"});
        CsvWriter raw(draws_path, {"theta", "repetition", "delta"});
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            const std::vector<double> v(draws.begin() + static_cast<std::ptrdiff_t>(i * reps),
                                        draws.begin() + static_cast<std::ptrdiff_t>((i + 1) * reps));
            bands.cell(thetas[i]).cell(mean_of(v)).cell(sd_of(v));
            for (double p : {0.05, 0.25, 0.5, 0.75, 0.95}) bands.cell(quantile(v, p));
            bands.end_row();
            for (std::size_t r = 0; r < reps; ++r) {
                raw.cell(thetas[i]).cell(static_cast<unsigned long long>(r)).cell(v[r]);
                raw.end_row();
            }
        }
    }
    result.outputs = {bands_path, draws_path};
    result.summary = {{"points", thetas.size()}, {"repetitions", reps}};
    finish(result, manifest, "ok");
    return result;
}

CommandResult cmd_abc(const RunConfig& config) {
    const auto dir = prepare_out_dir(config);
    Manifest manifest(config);
    Stopwatch clock;
    CommandResult result;

    const DataSet obs = observed(config);
    const GaussianMeanSimulator simulator;
    const PriorSpec prior{toy_bounds(config)};
    const SampleSet samples = abc_rejection(prior, abc_config(config, root_seed(config)), simulator, obs);
    manifest.stage("abc", clock.lap());

    const auto samples_path = dir / "abc_samples.csv";
    const auto summary_path = dir / "abc_summary.csv";
    {
        CsvWriter csv(samples_path, {"sample", "proposal_index", "theta", "delta", "proposal_stream", "eval_stream"});
        for (std::size_t i = 0; i < samples.records.size(); ++i) {
            const auto& rec = samples.records[i];
            csv.cell(static_cast<unsigned long long>(i))
                .cell(static_cast<unsigned long long>(rec.proposal_index))
                .cell(rec.theta[0])
                .cell(rec.delta)
                .cell(static_cast<unsigned long long>(rec.proposal_seed.stream_id))
                .cell(static_cast<unsigned long long>(rec.eval_seed.stream_id));
            csv.end_row();
        }
    }
    const bool complete = samples.status == ABCStatus::kComplete;
    double accepted_mean = 0.0;
    for (const auto& p : samples.accepted) accepted_mean += p[0];
    if (!samples.accepted.empty()) accepted_mean /= static_cast<double>(samples.accepted.size());
    {
        CsvWriter csv(summary_path,
                      {"status", "accepted", "requested", "proposals_used", "acceptance_rate", "epsilon", "accepted_mean"});
        csv.cell(std::string(complete ? "complete" : "budget_exhausted"))
            .cell(static_cast<unsigned long long>(samples.accepted.size()))
            .cell(static_cast<unsigned long long>(config.abc_samples))
            .cell(static_cast<unsigned long long>(samples.proposals_used))
            .cell(samples.acceptance_rate)
            .cell(config.epsilon)
            .cell(accepted_mean);
        csv.end_row();
    }
    result.outputs = {samples_path, summary_path};
    result.exit_code = complete ? kExitOk : kExitBudget;
    result.summary = {{"accepted", samples.accepted.size()},
                      {"proposals_used", samples.proposals_used},
                      {"acceptance_rate", samples.acceptance_rate}};
    finish(result, manifest, complete ? "ok" : "budget_exhausted");
    return result;
}

CommandResult cmd_bolfi(const RunConfig& config) {
    const auto dir = prepare_out_dir(config);
    Manifest manifest(config);
    Stopwatch clock;
    CommandResult result;

    const DataSet obs = observed(config);
    const GaussianMeanSimulator simulator;
    const Box bounds = toy_bounds(config);
    const BOTrace trace = bolfi_run(simulator, obs, bounds, bo_config(config), root_seed(config));
    manifest.stage("bolfi", clock.lap());

    const auto trace_path = dir / "bolfi_trace.csv";
    {
        CsvWriter csv(trace_path, {"k", "theta", "delta", "eval_stream", "signal_variance", "lengthscale",
                                   "noise_variance", "prior_mean", "incumbent", "incumbent_mean"});
        for (const auto& step : trace.steps) {
            csv.cell(static_cast<unsigned long long>(step.k))
                .cell(step.theta[0])
                .cell(step.delta)
                .cell(static_cast<unsigned long long>(step.eval_seed.stream_id))
                .cell(step.hyper.signal_variance)
                .cell(step.hyper.lengthscales[0])
                .cell(step.hyper.noise_variance)
                .cell(step.hyper.prior_mean)
                .cell(step.incumbent[0])
                .cell(step.incumbent_mean);
            csv.end_row();
        }
    }
    result.outputs.push_back(trace_path);

    for (std::size_t k : config.snapshot_steps) {
        if (k < 1 || k > trace.steps.size()) continue;
        const auto path = dir / fmt::format("snapshot_step_{:02}.csv", k);
        write_snapshot(path, trace, trace.steps[k - 1]);
        result.outputs.push_back(path);
    }

    nlohmann::json summary = {{"steps", trace.steps.size()}};
    if (!trace.steps.empty()) {
        const GPModel model = surrogate_at(trace, trace.steps.size());
        const ApproxPosterior posterior = approx_posterior(model, PriorSpec{bounds}, trace.grid);
        const Eigen::VectorXd normalized = posterior.normalized();
        const auto path = dir / "posterior.csv";
        {
            CsvWriter csv(path, {"theta", "density", "normalized"});
            for (std::size_t i = 0; i < posterior.grid.size(); ++i) {
                const auto ii = static_cast<Eigen::Index>(i);
                csv.cell(posterior.grid[i][0]).cell(posterior.unnormalized_density[ii]).cell(normalized[ii]);
                csv.end_row();
            }
        }
        result.outputs.push_back(path);
        summary["incumbent"] = trace.incumbent()[0];
        summary["posterior_mode"] = posterior.mode()[0];
        summary["epsilon_model"] = posterior.epsilon_model;
    }
    manifest.stage("outputs", clock.lap());

    if (trace.error) {
        summary["error"] = *trace.error;
        result.exit_code = kExitNumerical;
    }
    result.summary = summary;
    finish(result, manifest, trace.error ? "numerical_failure" : "ok");
    return result;
}

CommandResult cmd_budget(const RunConfig& config) {
    const auto dir = prepare_out_dir(config);
    Manifest manifest(config);
    Stopwatch clock;
    CommandResult result;

    const DataSet obs = observed(config);
    const GaussianMeanSimulator simulator;
    const Box bounds = toy_bounds(config);
    const RngSeed root = root_seed(config);

    const BOTrace trace = bolfi_run(simulator, obs, bounds, bo_config(config), root);
    if (trace.error || trace.steps.empty()) {
        result.exit_code = kExitNumerical;
        result.summary = {{"error", trace.error.value_or("empty trace")}};
        finish(result, manifest, "numerical_failure");
        return result;
    }
    const ApproxPosterior posterior =
        approx_posterior(surrogate_at(trace, trace.steps.size()), PriorSpec{bounds}, trace.grid);
    const double bo_mode = posterior.mode()[0];
    manifest.stage("bolfi", clock.lap());

    const SampleSet samples =
        abc_rejection(PriorSpec{bounds}, abc_config(config, root.derive(stream::kRepetition, 1)), simulator, obs);
    manifest.stage("abc", clock.lap());
    std::vector<double> accepted;
    for (const auto& p : samples.accepted) accepted.push_back(p[0]);
    const bool abc_complete = samples.status == ABCStatus::kComplete;
    const double abc_mode = accepted.size() >= 2 ? kde_mode(accepted, bounds) : std::nan("");

    const double bo_calls = static_cast<double>(trace.simulator_calls());
    const double ratio = static_cast<double>(samples.proposals_used) / bo_calls;
    const auto path = dir / "budget_report.csv";
    {
        CsvWriter csv(path, {"method", "simulator_calls", "mode", "within_radius", "status"});
        csv.cell(std::string("bolfi"))
            .cell(static_cast<unsigned long long>(trace.simulator_calls()))
            .cell(bo_mode)
            .cell(std::abs(bo_mode) <= config.target_radius ? 1 : 0)
            .cell(std::string("complete"));
        csv.end_row();
        csv.cell(std::string("rejection_abc"))
            .cell(static_cast<unsigned long long>(samples.proposals_used))
            .cell(abc_mode)
            .cell(std::abs(abc_mode) <= config.target_radius ? 1 : 0)
            .cell(std::string(abc_complete ? "complete" : "budget_exhausted"));
        csv.end_row();
    }
    result.outputs.push_back(path);
    result.summary = {{"bolfi_simulator_calls", trace.simulator_calls()},
                      {"abc_proposals_used", samples.proposals_used},
                      {"proposal_ratio", ratio},
                      {"bolfi_mode", bo_mode},
                      {"abc_mode", abc_mode},
                      {"target_radius", config.target_radius}};
    result.exit_code = abc_complete ? kExitOk : kExitBudget;
    finish(result, manifest, abc_complete ? "ok" : "budget_exhausted");
    return result;
}

CommandResult run_command(const RunConfig& config) {
    config.validate();
    switch (config.command) {
        case Command::kCurve: return cmd_discriminability_curve(config);
        case Command::kDist: return cmd_delta_distribution(config);
        case Command::kAbc: return cmd_abc(config);
        case Command::kBolfi: return cmd_bolfi(config);
        case Command::kBudget: return cmd_budget(config);
    }
    throw ConfigError("unknown command");
}

}  // namespace lfi::harness
