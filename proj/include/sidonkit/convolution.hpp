#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sidonkit::convolution {

/// Largest transform length supported by all three NTT primes.
inline constexpr std::size_t kMaxTransformLength = std::size_t{1} << 23;

/// Exact ordered h-fold representation counts over Z_N:
///   out[t] = #{(i_1..i_h) : a_{i_1} + ... + a_{i_h} = t (mod N)}.
/// Computed with number-theoretic transforms over three word-size primes and
/// recombined by CRT, so counts are exact as long as |A|^h < 2^64 (checked;
/// Overflow otherwise). Power-of-two moduli use a length-N cyclic transform;
/// other moduli use a padded linear transform folded back modulo N.
/// `threads` > 1 runs the three prime channels concurrently; the output does
/// not depend on it.
std::vector<std::uint64_t> cyclic_power_counts(std::span<const std::uint64_t> residues, std::uint64_t modulus,
                                               unsigned h, unsigned threads = 1);

/// True when cyclic_power_counts can handle (modulus, h) within kMaxTransformLength.
bool supports(std::uint64_t modulus, unsigned h);

}  // namespace sidonkit::convolution
