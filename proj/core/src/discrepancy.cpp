#include "lfi/discrepancy.hpp"

#include <numeric>
#include <string>

namespace lfi {

namespace {

void check_options(const DiscriminabilityOptions& options) {
    if (options.n_folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
    if (!(options.lambda_scale >= 0.0)) throw InvalidArgument("lambda scale must be >= 0");
}

}  // namespace

std::vector<std::size_t> stratified_folds(const LabeledSet& data, std::size_t n_folds, RngSeed seed) {
    const std::size_t per_class = data.rows() / 2;
    std::vector<std::size_t> perm(per_class);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(perm);

    // Position-within-class -> fold, shared by both classes.
    std::vector<std::size_t> fold_of_position(per_class);
    for (std::size_t i = 0; i < per_class; ++i) fold_of_position[perm[i]] = i % n_folds;

    std::vector<std::size_t> folds(data.rows());
    std::size_t seen[2] = {0, 0};
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const int label = data.labels[r];
        folds[r] = fold_of_position[seen[label]++];
    }
    return folds;
}

double cross_validated_accuracy(const LabeledSet& data, const DiscriminabilityOptions& options, RngSeed seed) {
    check_options(options);
    data.validate();
    if (data.rows() / 2 < options.n_folds) {
        throw InvalidArgument("fewer rows per class (" + std::to_string(data.rows() / 2) + ") than folds (" +
                              std::to_string(options.n_folds) + ")");
    }
    const auto folds = stratified_folds(data, options.n_folds, seed);

    double accuracy_sum = 0.0;
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    train.reserve(data.rows());
    test.reserve(data.rows());
    for (std::size_t f = 0; f < options.n_folds; ++f) {
        train.clear();
        test.clear();
        for (std::size_t r = 0; r < data.rows(); ++r) (folds[r] == f ? test : train).push_back(r);

        const ClassMoments moments = class_moments(data, train);
        LDAModel model;
        try {
            model = fit_lda(moments, relative_lambda(moments, options.lambda_scale));
        } catch (const DegenerateFit&) {
            // No direction separates the training classes: every score is the
            // tie value 0, which the decision rule sends to class 0.
            model.weights = Eigen::VectorXd::Zero(data.features.cols());
            model.intercept = 0.0;
        }

        std::vector<Eigen::Index> test_rows(test.begin(), test.end());
        const Eigen::VectorXd scores =
            (data.features(test_rows, Eigen::all) * model.weights).array() + model.intercept;
        std::size_t correct = 0;
        for (std::size_t t = 0; t < test.size(); ++t) {
            const int predicted = scores[static_cast<Eigen::Index>(t)] > 0.0 ? 1 : 0;
            correct += predicted == data.labels[test[t]] ? 1 : 0;
        }
        accuracy_sum += static_cast<double>(correct) / static_cast<double>(test.size());
    }
    return accuracy_sum / static_cast<double>(options.n_folds);
}

DiscrepancyValue discriminability(const DataSet& observed, const DataSet& simulated,
                                  const DiscriminabilityOptions& options, RngSeed seed) {
    check_options(options);
    if (observed.rows() < options.n_folds || simulated.rows() < options.n_folds) {
        throw InvalidArgument("each dataset needs at least as many rows as folds");
    }
    const LabeledSet data = LabeledSet::stack(observed, simulated);
    return DiscrepancyValue{cross_validated_accuracy(data, options, seed), options.n_folds, seed};
}

DiscrepancyValue delta_theta(const ParameterPoint& theta, const Simulator& simulator, const DataSet& observed,
                             std::size_t n, const DiscriminabilityOptions& options, RngSeed seed) {
    const DataSet simulated = simulator.simulate(theta, n, seed.derive(stream::kSimulate));
    DiscrepancyValue out = discriminability(observed, simulated, options, seed.derive(stream::kFolds));
    out.eval_seed = seed;
    return out;
}

}  // namespace lfi
