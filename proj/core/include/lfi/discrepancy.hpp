#pragma once

#include <cstddef>

#include "lfi/lda.hpp"
#include "lfi/rng.hpp"
#include "lfi/simulator.hpp"

namespace lfi {

struct DiscriminabilityOptions {
    std::size_t n_folds = 5;
    /// Ridge added to the pooled covariance, relative to trace(S_pooled)/m.
    double lambda_scale = 1e-6;
};

/// Cross-validated accuracy of LDA separating observed from simulated data.
struct DiscrepancyValue {
    double value = 0.0;
    std::size_t n_folds = 0;
    RngSeed eval_seed;
};

/// Fold index for every row of a balanced LabeledSet. Both classes share one
/// seeded permutation of within-class positions, so each fold keeps the 50/50
/// balance and fold membership does not depend on which class is labelled 1.
std::vector<std::size_t> stratified_folds(const LabeledSet& data, std::size_t n_folds, RngSeed seed);

/// Mean held-out accuracy over stratified k folds.
double cross_validated_accuracy(const LabeledSet& data, const DiscriminabilityOptions& options, RngSeed seed);

DiscrepancyValue discriminability(const DataSet& observed, const DataSet& simulated,
                                  const DiscriminabilityOptions& options, RngSeed seed);

/// One realisation of the stochastic discrepancy at theta. The simulation and
/// fold streams are both derived from `seed`.
DiscrepancyValue delta_theta(const ParameterPoint& theta, const Simulator& simulator, const DataSet& observed,
                             std::size_t n, const DiscriminabilityOptions& options, RngSeed seed);

}  // namespace lfi
