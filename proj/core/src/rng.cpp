#include "lfi/rng.hpp"

#include <cmath>
#include <utility>

namespace lfi {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngSeed RngSeed::derive(std::uint64_t tag, std::uint64_t index) const noexcept {
    const std::uint64_t child = splitmix64(stream_id ^ splitmix64(tag ^ splitmix64(index)));
    return RngSeed{seed, child};
}

Rng::Rng(RngSeed seed) : engine_(splitmix64(seed.seed ^ splitmix64(seed.stream_id))) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return r % bound;
}

void Rng::shuffle(std::span<std::size_t> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(below(i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace lfi
