#pragma once

#include <cmath>
#include <numbers>

namespace lfi {

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Bayes-optimal accuracy for telling N(0,1) from N(separation,1) with equal priors.
inline double gaussian_bayes_accuracy(double separation) {
    return standard_normal_cdf(std::abs(separation) / 2.0);
}

}  // namespace lfi
