#include "lfi/hyperparams.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "lfi/error.hpp"

namespace lfi {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Coordinate {
    double lo;
    double hi;
    [[nodiscard]] bool free() const { return lo < hi; }
};

std::vector<Coordinate> search_box(const HyperBounds& b, std::size_t dimension) {
    std::vector<Coordinate> box;
    box.push_back({std::log(b.signal_variance.lo), std::log(b.signal_variance.hi)});
    for (std::size_t i = 0; i < dimension; ++i) box.push_back({std::log(b.lengthscale.lo), std::log(b.lengthscale.hi)});
    box.push_back({std::log(b.noise_variance.lo), std::log(b.noise_variance.hi)});
    box.push_back({b.prior_mean.lo, b.prior_mean.hi});
    return box;
}

void check_bounds(const HyperBounds& b) {
    auto positive = [](const Interval& i) { return i.lo > 0.0 && i.lo <= i.hi && std::isfinite(i.hi); };
    if (!positive(b.signal_variance) || !positive(b.lengthscale) || !positive(b.noise_variance)) {
        throw InvalidArgument("hyperparameter bounds must be positive intervals");
    }
    if (!(b.prior_mean.lo <= b.prior_mean.hi)) throw InvalidArgument("prior mean bounds are inverted");
}

double clip(double x, const Coordinate& c) { return std::min(std::max(x, c.lo), c.hi); }

/// Generalised-least-squares constant mean for the current kernel, clipped to its bounds.
double best_prior_mean(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets, const KernelHyper& hyper,
                       const Coordinate& bound) {
    if (!bound.free()) return bound.lo;
    Eigen::MatrixXd cov = kernel_matrix(inputs, inputs, hyper);
    cov.diagonal().array() += hyper.noise_variance;
    const auto chol = cholesky_with_jitter(cov);
    const auto l = chol.lower.triangularView<Eigen::Lower>();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(targets.size());
    const Eigen::VectorXd a = l.solve(ones);
    const Eigen::VectorXd b = l.solve(targets);
    return clip(a.dot(b) / a.squaredNorm(), bound);
}

}  // namespace

Eigen::VectorXd pack_hyper(const KernelHyper& hyper) {
    const auto d = hyper.lengthscales.size();
    Eigen::VectorXd packed(d + 3);
    packed[0] = std::log(hyper.signal_variance);
    packed.segment(1, d) = hyper.lengthscales.array().log();
    packed[d + 1] = std::log(hyper.noise_variance);
    packed[d + 2] = hyper.prior_mean;
    return packed;
}

KernelHyper unpack_hyper(const Eigen::VectorXd& packed, std::size_t dimension) {
    const auto d = static_cast<Eigen::Index>(dimension);
    KernelHyper hyper;
    hyper.signal_variance = std::exp(packed[0]);
    hyper.lengthscales = packed.segment(1, d).array().exp();
    hyper.noise_variance = std::exp(packed[d + 1]);
    hyper.prior_mean = packed[d + 2];
    return hyper;
}

double evidence_at(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets, const Eigen::VectorXd& packed) {
    try {
        const double value =
            log_marginal_likelihood(gp_fit(inputs, targets, unpack_hyper(packed, static_cast<std::size_t>(inputs.cols()))));
        return std::isfinite(value) ? value : kNegInf;
    } catch (const Error&) {
        return kNegInf;
    }
}

KernelHyper optimize_hyperparams(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                 const HyperSearch& search) {
    check_bounds(search.bounds);
    const auto dimension = static_cast<std::size_t>(inputs.cols());
    if (static_cast<std::size_t>(targets.size()) < std::max<std::size_t>(search.min_points, 1)) {
        return search.defaults;
    }

    const auto box = search_box(search.bounds, dimension);
    const auto n_coords = static_cast<Eigen::Index>(box.size());
    const Eigen::Index mean_coord = n_coords - 1;
    const Eigen::Index noise_coord = n_coords - 2;

    // Coarse grid over (sf2, shared lengthscale, sn2), prior mean set by GLS.
    const std::size_t g = std::max<std::size_t>(search.grid_points_per_axis, 2);
    auto axis = [&](const Coordinate& c, std::size_t i) {
        return c.free() ? c.lo + (c.hi - c.lo) * static_cast<double>(i) / static_cast<double>(g - 1) : c.lo;
    };
    Eigen::VectorXd best(n_coords);
    double best_value = kNegInf;
    Eigen::VectorXd trial(n_coords);
    for (std::size_t is = 0; is < g; ++is) {
        for (std::size_t il = 0; il < g; ++il) {
            for (std::size_t in = 0; in < g; ++in) {
                trial[0] = axis(box[0], is);
                for (Eigen::Index j = 1; j < noise_coord; ++j) trial[j] = axis(box[static_cast<std::size_t>(j)], il);
                trial[noise_coord] = axis(box[static_cast<std::size_t>(noise_coord)], in);
                try {
                    trial[mean_coord] = best_prior_mean(inputs, targets, unpack_hyper(trial, dimension),
                                                        box[static_cast<std::size_t>(mean_coord)]);
                } catch (const Error&) {
                    continue;
                }
                const double value = evidence_at(inputs, targets, trial);
                if (value > best_value) {
                    best_value = value;
                    best = trial;
                }
            }
        }
    }
    if (!std::isfinite(best_value)) return search.defaults;

    // Coordinate descent with Brent line searches on each free coordinate.
    constexpr int kBits = std::numeric_limits<double>::digits / 2;
    for (std::size_t sweep = 0; sweep < search.max_sweeps; ++sweep) {
        const double sweep_start = best_value;
        for (Eigen::Index j = 0; j < n_coords; ++j) {
            const auto& c = box[static_cast<std::size_t>(j)];
            if (!c.free()) continue;
            Eigen::VectorXd probe = best;
            auto objective = [&](double x) {
                probe[j] = x;
                return -evidence_at(inputs, targets, probe);
            };
            const auto [x, neg_value] = boost::math::tools::brent_find_minima(objective, c.lo, c.hi, kBits);
            if (-neg_value > best_value) {
                best_value = -neg_value;
                best[j] = x;
            }
        }
        if (best_value - sweep_start <= 1e-12 * (1.0 + std::abs(best_value))) break;
    }

    for (Eigen::Index j = 0; j < n_coords; ++j) best[j] = clip(best[j], box[static_cast<std::size_t>(j)]);
    KernelHyper out = unpack_hyper(best, dimension);
    // exp(log(x)) can land an ulp outside the bounds.
    out.signal_variance = std::clamp(out.signal_variance, search.bounds.signal_variance.lo, search.bounds.signal_variance.hi);
    out.lengthscales = out.lengthscales.cwiseMax(search.bounds.lengthscale.lo).cwiseMin(search.bounds.lengthscale.hi);
    out.noise_variance = std::clamp(out.noise_variance, search.bounds.noise_variance.lo, search.bounds.noise_variance.hi);
    return out;
}

}  // namespace lfi
