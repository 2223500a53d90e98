#include "lfi/bayes_opt.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lfi/error.hpp"
#include "lfi/parallel.hpp"

namespace lfi {

double gp_ucb_beta(std::size_t k) {
    const double kk = static_cast<double>(std::max<std::size_t>(k, 1));
    return std::max(1.0, 2.0 * std::log(kk * kk * std::numbers::pi * std::numbers::pi / 0.3));
}

double AcquisitionConfig::beta(std::size_t k) const {
    return schedule == BetaSchedule::kGpUcb ? gp_ucb_beta(k) : beta_constant;
}

void AcquisitionConfig::validate() const {
    if (candidate_grid_size < 100) throw InvalidArgument("candidate grid needs at least 100 points");
    if (initial_design_size < 1) throw InvalidArgument("initial design needs at least one point");
    if (schedule == BetaSchedule::kConstant && !(beta_constant >= 0.0)) {
        throw InvalidArgument("beta must be >= 0");
    }
}

void BOConfig::validate() const {
    acquisition.validate();
    if (total_acquisitions < acquisition.initial_design_size) {
        throw InvalidArgument("total acquisitions must be at least the initial design size");
    }
    if (sample_size < 2) throw InvalidArgument("sample size must be >= 2");
    if (eval_grid_size < 2) throw InvalidArgument("evaluation grid needs at least 2 points per axis");
}

BOConfig default_bo_config(const Box& bounds) {
    BOConfig config;
    const auto d = static_cast<Eigen::Index>(bounds.dimension());
    Eigen::VectorXd widths(d);
    for (Eigen::Index i = 0; i < d; ++i) widths[i] = bounds[static_cast<std::size_t>(i)].width();

    KernelHyper defaults;
    defaults.signal_variance = 0.05;
    defaults.lengthscales = widths / 10.0;
    defaults.noise_variance = 1e-3;
    defaults.prior_mean = 0.5;

    config.hyper_search.defaults = defaults;
    config.hyper_search.bounds.signal_variance = {1e-3, 1.0};
    config.hyper_search.bounds.lengthscale = {widths.minCoeff() / 40.0, widths.maxCoeff()};
    config.hyper_search.bounds.noise_variance = {1e-5, 0.05};
    config.hyper_search.bounds.prior_mean = {0.5, 0.5};
    return config;
}

double lower_confidence_bound(const GPModel& model, const ParameterPoint& theta, double beta) {
    const auto stats = gp_predict(model, theta);
    return stats.mean - std::sqrt(beta) * std::sqrt(stats.variance);
}

std::vector<ParameterPoint> regular_grid(const Box& bounds, std::size_t points_per_axis) {
    if (points_per_axis < 2) throw InvalidArgument("grid needs at least 2 points per axis");
    const std::size_t d = bounds.dimension();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= points_per_axis;

    std::vector<ParameterPoint> grid;
    grid.reserve(total);
    Eigen::VectorXd x(static_cast<Eigen::Index>(d));
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t idx = rest % points_per_axis;
            rest /= points_per_axis;
            const auto& side = bounds[i];
            x[static_cast<Eigen::Index>(i)] =
                idx + 1 == points_per_axis
                    ? side.hi
                    : side.lo + side.width() * static_cast<double>(idx) / static_cast<double>(points_per_axis - 1);
        }
        grid.emplace_back(x);
    }
    return grid;
}

std::vector<ParameterPoint> candidate_points(const Box& bounds, const AcquisitionConfig& config, std::size_t k,
                                             RngSeed seed) {
    const double d = static_cast<double>(bounds.dimension());
    const auto per_axis = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(config.candidate_grid_size), 1.0 / d) - 1e-9)));
    std::vector<ParameterPoint> out = regular_grid(bounds, per_axis);
    const std::size_t regular = out.size();
    out.reserve(2 * regular);

    Rng rng(seed.derive(stream::kCandidates, k));
    for (std::size_t i = 0; i < regular; ++i) {
        Eigen::VectorXd x = out[i].coords();
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double cell = bounds[static_cast<std::size_t>(j)].width() / static_cast<double>(per_axis - 1);
            x[j] += rng.uniform(-0.5, 0.5) * cell;
        }
        out.push_back(bounds.clamp(x));
    }
    return out;
}

ParameterPoint acquire_next(const GPModel& model, const Box& bounds, const AcquisitionConfig& config,
                            std::size_t k, RngSeed seed) {
    if (bounds.dimension() != model.dimension()) throw InvalidArgument("bounds do not match the model dimension");
    const double beta = config.beta(k);
    const auto candidates = candidate_points(bounds, config, k, seed);
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double value = lower_confidence_bound(model, candidates[i], beta);
        if (value < best_value) {
            best_value = value;
            best = i;
        }
    }
    return candidates[best];
}

namespace {

KernelHyper hyper_for(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets, const BOConfig& config) {
    if (static_cast<std::size_t>(targets.size()) < config.reoptimize_from) return config.hyper_search.defaults;
    return optimize_hyperparams(inputs, targets, config.hyper_search);
}

void record_surrogate(BOStep& step, const GPModel& model, const std::vector<ParameterPoint>& grid) {
    step.hyper = model.hyper();
    const auto g = static_cast<Eigen::Index>(grid.size());
    step.grid_mean.resize(g);
    step.grid_variance.resize(g);
    Eigen::Index best = 0;
    for (Eigen::Index i = 0; i < g; ++i) {
        const auto stats = gp_predict(model, grid[static_cast<std::size_t>(i)]);
        step.grid_mean[i] = stats.mean;
        step.grid_variance[i] = stats.variance;
        if (stats.mean < step.grid_mean[best]) best = i;
    }
    step.incumbent = grid[static_cast<std::size_t>(best)];
    step.incumbent_mean = step.grid_mean[best];
}

}  // namespace

GPModel surrogate_at(const BOTrace& trace, std::size_t k) {
    if (k < 1 || k > trace.steps.size()) throw InvalidArgument("surrogate step out of range");
    std::vector<ParameterPoint> inputs;
    Eigen::VectorXd targets(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        inputs.push_back(trace.steps[i].theta);
        targets[static_cast<Eigen::Index>(i)] = trace.steps[i].delta;
    }
    return gp_fit(to_matrix(inputs), std::move(targets), trace.steps[k - 1].hyper);
}

BOTrace bolfi_run(const Simulator& simulator, const DataSet& observed, const Box& bounds, const BOConfig& config,
                  RngSeed root) {
    config.validate();
    if (bounds.dimension() != simulator.parameter_dimension()) {
        throw InvalidArgument("bounds do not match the simulator dimension");
    }
    if (config.hyper_search.defaults.dimension() != bounds.dimension()) {
        throw InvalidArgument("default kernel hyperparameters do not match the bounds dimension");
    }

    BOTrace trace;
    trace.grid = regular_grid(bounds, config.eval_grid_size);
    std::vector<ParameterPoint> inputs;
    std::vector<double> targets;

    auto evaluate = [&](const ParameterPoint& theta, std::size_t k) {
        BOStep step;
        step.k = k;
        step.theta = theta;
        step.eval_seed = root.derive(stream::kEvaluation, k);
        step.delta =
            delta_theta(theta, simulator, observed, config.sample_size, config.discrepancy, step.eval_seed).value;
        return step;
    };
    auto commit = [&](BOStep step) {
        inputs.push_back(step.theta);
        targets.push_back(step.delta);
        const Eigen::MatrixXd x = to_matrix(inputs);
        const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()));
        const GPModel model = gp_fit(x, y, hyper_for(x, y, config));
        record_surrogate(step, model, trace.grid);
        trace.steps.push_back(std::move(step));
        return model;
    };

    const std::size_t n_init = config.acquisition.initial_design_size;
    std::vector<BOStep> initial;
    try {
        initial = parallel_map(n_init, config.threads, [&](std::size_t i) {
            Rng rng(root.derive(stream::kInitialDesign, i));
            return evaluate(bounds.sample_uniform(rng), i + 1);
        });
    } catch (const Error& e) {
        trace.error = e.what();
        return trace;
    }

    std::optional<GPModel> model;
    try {
        for (auto& step : initial) model = commit(std::move(step));
        for (std::size_t k = n_init + 1; k <= config.total_acquisitions; ++k) {
            const ParameterPoint next =
                acquire_next(*model, bounds, config.acquisition, k, root.derive(stream::kAcquisition));
            model = commit(evaluate(next, k));
        }
    } catch (const Error& e) {
        trace.error = e.what();
    }
    return trace;
}

Eigen::VectorXd ApproxPosterior::normalized() const {
    const double total = unnormalized_density.sum();
    if (!(total > 0.0)) return Eigen::VectorXd::Zero(unnormalized_density.size());
    return unnormalized_density / total;
}

const ParameterPoint& ApproxPosterior::mode() const {
    Eigen::Index best = 0;
    unnormalized_density.maxCoeff(&best);
    return grid[static_cast<std::size_t>(best)];
}

}  // namespace lfi
