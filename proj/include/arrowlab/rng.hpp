#pragma once

#include <cstdint>
#include <random>

namespace arrowlab {

/// Algorithm identifier recorded in run manifests. Covers seed derivation
/// (splitmix64), the core engine (std::mt19937_64, fully specified by the
/// standard), bounded draws (rejection, unbiased) and permutation generation
/// (Fisher-Yates). Bump the suffix if any of these change.
inline constexpr const char* kGeneratorAlgorithm =
    "splitmix64/mt19937_64/fisher-yates/v1";

/// Advances `state` and returns the next splitmix64 output.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Derives an independent lane seed from a master seed. Distinct lanes map to
/// distinct seeds for a fixed master, so parallel lanes never share a stream.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t lane);

/// Deterministic random source. All draws go through explicit, portable
/// code paths (no std::*_distribution, whose output is implementation
/// defined), so identical seeds give identical streams everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Unbiased draw from {0, ..., bound-1} via rejection.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit();

    /// Bernoulli draw with success probability prob.
    bool bernoulli(double prob) { return unit() < prob; }

  private:
    std::mt19937_64 engine_;
};

} // namespace arrowlab
