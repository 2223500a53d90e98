#include "lfi/bayes_opt.hpp"

#include <cmath>

#include "lfi/error.hpp"
#include "lfi/math.hpp"

namespace lfi {

ApproxPosterior approx_posterior(const GPModel& model, const PriorSpec& prior, std::span<const ParameterPoint> grid,
                                 std::optional<double> epsilon) {
    if (grid.empty()) throw InvalidArgument("approximate posterior needs a non-empty grid");

    const auto g = static_cast<Eigen::Index>(grid.size());
    Eigen::VectorXd means(g);
    Eigen::VectorXd variances(g);
    for (Eigen::Index i = 0; i < g; ++i) {
        const auto stats = gp_predict(model, grid[static_cast<std::size_t>(i)]);
        means[i] = stats.mean;
        variances[i] = stats.variance;
    }

    ApproxPosterior out;
    out.grid.assign(grid.begin(), grid.end());
    out.epsilon_model = epsilon.value_or(means.minCoeff());
    out.unnormalized_density.resize(g);
    const double noise = model.hyper().noise_variance;
    for (Eigen::Index i = 0; i < g; ++i) {
        const double p = prior.density(grid[static_cast<std::size_t>(i)]);
        const double spread = std::sqrt(variances[i] + noise);
        double accept = 0.0;
        if (spread > 0.0) {
            accept = standard_normal_cdf((out.epsilon_model - means[i]) / spread);
        } else {
            accept = means[i] <= out.epsilon_model ? 1.0 : 0.0;
        }
        out.unnormalized_density[i] = p * accept;
    }
    return out;
}

}  // namespace lfi
