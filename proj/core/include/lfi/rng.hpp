#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace lfi {

/// Identifies one reproducible random stream. Every random draw in the toolkit
/// is a function of exactly one RngSeed.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    /// Child stream for (purpose, index). Pure function of the parent; distinct
    /// (tag, index) pairs give unrelated streams.
    [[nodiscard]] RngSeed derive(std::uint64_t tag, std::uint64_t index = 0) const noexcept;

    friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Purpose tags for RngSeed::derive. Values are part of the reproducibility
/// contract; never renumber.
namespace stream {
inline constexpr std::uint64_t kSimulate = 1;
inline constexpr std::uint64_t kFolds = 2;
inline constexpr std::uint64_t kProposal = 3;
inline constexpr std::uint64_t kEvaluation = 4;
inline constexpr std::uint64_t kInitialDesign = 5;
inline constexpr std::uint64_t kCandidates = 6;
inline constexpr std::uint64_t kAcquisition = 7;
inline constexpr std::uint64_t kRepetition = 8;
inline constexpr std::uint64_t kGridPoint = 9;
}  // namespace stream

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic generator. Only the raw mt19937_64 output is used; uniform,
/// normal and integer variates are derived here so results do not depend on
/// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(RngSeed seed);

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);

    /// Standard normal via the Marsaglia polar method.
    double normal();

    /// Uniform integer in [0, bound), unbiased (rejection sampling).
    std::uint64_t below(std::uint64_t bound);

    /// Fisher-Yates shuffle.
    void shuffle(std::span<std::size_t> values);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lfi
