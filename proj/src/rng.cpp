#include "arrowlab/rng.hpp"

namespace arrowlab {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t lane) {
    std::uint64_t state = master_seed;
    (void)splitmix64_next(state);
    state += lane;
    return splitmix64_next(state);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Reject draws from the incomplete top interval of [0, 2^64).
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

double Rng::unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

} // namespace arrowlab
