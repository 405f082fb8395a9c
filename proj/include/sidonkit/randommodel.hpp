#pragma once

#include <cstdint>

#include "sidonkit/types.hpp"

namespace sidonkit::randommodel {

/// Counter-based uniform in [0, 1): a pure function of (seed, x), top 53 bits of a 64-bit mix.
double uniform(std::uint64_t seed, std::uint64_t x) noexcept;

/// Seed for trial `index` derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// x^-gamma when x > m and x mod N is in S, otherwise 0.
long double inclusion_probability(std::uint64_t x, const SampleConfig& cfg);

/// Every admissible x <= horizon is kept iff uniform(seed, x) < x^-gamma.
/// The result does not depend on `threads`.
IntSeq sample_sequence(const SampleConfig& cfg, unsigned threads = 1);

struct Expectation {
    long double mean = 0;
    long double variance = 0;  // sum of q (1 - q)
};

/// Exact expected number of sampled elements in [lo, hi] and its variance.
Expectation expected_count(const SampleConfig& cfg, std::uint64_t lo, std::uint64_t hi);

}  // namespace sidonkit::randommodel
