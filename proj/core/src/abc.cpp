#include "lfi/abc.hpp"

#include <algorithm>
#include <cmath>

#include "lfi/parallel.hpp"

namespace lfi {

void ABCConfig::validate() const {
    if (n_samples < 1) throw InvalidArgument("ABC needs n_samples >= 1");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidArgument("ABC epsilon must lie in [0, 1]");
    if (max_proposals < n_samples) throw InvalidArgument("ABC max_proposals must be >= n_samples");
    if (sample_size < 2) throw InvalidArgument("ABC sample size must be >= 2");
}

ABCRecord evaluate_proposal(const PriorSpec& prior, const ABCConfig& config, const Simulator& simulator,
                            const DataSet& observed, std::size_t index) {
    ABCRecord rec;
    rec.proposal_index = index;
    rec.proposal_seed = config.root.derive(stream::kProposal, index);
    rec.eval_seed = config.root.derive(stream::kEvaluation, index);
    Rng rng(rec.proposal_seed);
    rec.theta = prior.sample(rng);
    rec.delta =
        delta_theta(rec.theta, simulator, observed, config.sample_size, config.discrepancy, rec.eval_seed).value;
    rec.accepted = rec.delta <= config.epsilon;
    return rec;
}

SampleSet abc_rejection(const PriorSpec& prior, const ABCConfig& config, const Simulator& simulator,
                        const DataSet& observed) {
    config.validate();
    if (prior.box.dimension() != simulator.parameter_dimension()) {
        throw InvalidArgument("prior dimension does not match the simulator");
    }

    SampleSet out;
    const std::size_t threads = std::max<std::size_t>(config.threads, 1);
    const std::size_t batch = threads == 1 ? 1 : 4 * threads;
    std::size_t next = 0;
    while (out.accepted.size() < config.n_samples && next < config.max_proposals) {
        const std::size_t count = std::min(batch, config.max_proposals - next);
        auto results = parallel_map(count, threads, [&](std::size_t i) {
            return evaluate_proposal(prior, config, simulator, observed, next + i);
        });
        for (auto& rec : results) {
            ++out.proposals_used;
            if (rec.accepted) {
                out.accepted.push_back(rec.theta);
                out.records.push_back(std::move(rec));
                if (out.accepted.size() == config.n_samples) break;
            }
        }
        next += count;
    }
    out.status = out.accepted.size() == config.n_samples ? ABCStatus::kComplete : ABCStatus::kBudgetExhausted;
    out.acceptance_rate = out.proposals_used == 0
                              ? 0.0
                              : static_cast<double>(out.accepted.size()) / static_cast<double>(out.proposals_used);
    return out;
}

}  // namespace lfi
