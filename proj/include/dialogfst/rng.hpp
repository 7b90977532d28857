#ifndef DIALOGFST_RNG_HPP
#define DIALOGFST_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dialogfst {

// std::*_distribution output is implementation-defined; these helpers only
// consume raw std::mt19937_64 words so seeded results are portable.

/// Uniform integer in [0, bound) by rejection sampling. bound must be > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(std::mt19937_64& rng);

/// Index drawn from an unnormalized non-negative weight vector.
std::size_t sample_index(std::mt19937_64& rng, std::span<const double> weights);

/// Fisher-Yates shuffle of an index permutation 0..n-1.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

}  // namespace dialogfst

#endif  // DIALOGFST_RNG_HPP
