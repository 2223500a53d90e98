#pragma once

#include <cstddef>
#include <vector>

#include "lfi/discrepancy.hpp"
#include "lfi/simulator.hpp"

namespace lfi {

/// Uniform prior on a box.
struct PriorSpec {
    Box box;

    [[nodiscard]] double density(const ParameterPoint& theta) const {
        return box.contains(theta) ? 1.0 / box.volume() : 0.0;
    }
    [[nodiscard]] ParameterPoint sample(Rng& rng) const { return box.sample_uniform(rng); }
};

struct ABCConfig {
    std::size_t n_samples = 100;
    double epsilon = 0.55;
    std::size_t max_proposals = 100000;
    std::size_t sample_size = 10000;
    DiscriminabilityOptions discrepancy;
    RngSeed root;
    /// Proposals evaluated concurrently per batch; does not affect results.
    std::size_t threads = 1;

    void validate() const;
};

struct ABCRecord {
    std::size_t proposal_index = 0;
    ParameterPoint theta;
    double delta = 0.0;
    RngSeed proposal_seed;
    RngSeed eval_seed;
    bool accepted = false;
};

enum class ABCStatus { kComplete, kBudgetExhausted };

struct SampleSet {
    std::vector<ParameterPoint> accepted;
    std::vector<ABCRecord> records;  ///< accepted proposals, in proposal order
    std::size_t proposals_used = 0;
    double acceptance_rate = 0.0;
    ABCStatus status = ABCStatus::kComplete;
};

/// Evaluates proposal `index` of the stream rooted at config.root. Replaying a
/// stored record goes through here.
ABCRecord evaluate_proposal(const PriorSpec& prior, const ABCConfig& config, const Simulator& simulator,
                            const DataSet& observed, std::size_t index);

/// Rejection ABC: propose from the prior, accept when the discriminability is
/// at most epsilon, until n_samples acceptances or the proposal budget runs out.
/// Results are committed in proposal order, so any thread count gives the same
/// SampleSet.
SampleSet abc_rejection(const PriorSpec& prior, const ABCConfig& config, const Simulator& simulator,
                        const DataSet& observed);

}  // namespace lfi
