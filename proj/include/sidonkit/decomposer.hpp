#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sidonkit/numbertheory.hpp"

namespace sidonkit::decomposer {

/// An integer lift of n in Z_N to r1 + 2p r2 with K <= r1, r2 <= (5p-1)/2 + K.
struct LiftTarget {
    std::uint64_t p = 0;
    std::uint64_t K = 0;
    std::uint64_t r1 = 0;
    std::uint64_t r2 = 0;
    std::uint64_t n = 0;
    std::uint64_t N = 0;

    std::uint64_t upper() const noexcept { return (5 * p - 1) / 2 + K; }
    /// Re-checks the ranges and n = r1 + 2p r2 (mod N).
    bool valid() const;
};

/// Which pipeline produced a decomposition.
enum class Construction { Ruzsa, ErdosTuran };

struct Decomposition {
    Construction construction = Construction::Ruzsa;
    std::string mode;
    std::uint64_t p = 0;
    std::uint64_t generator = 0;  // Ruzsa only
    std::uint64_t modulus = 0;    // (p-1)p for Ruzsa, N for Erdos-Turan
    std::uint64_t target = 0;     // residue mod `modulus`
    bool distinct = false;        // pairwise-distinct parts were demanded
    /// x_i: discrete logs (Ruzsa) or Erdos-Turan parameters.
    std::vector<std::uint64_t> coordinates;
    /// The set elements themselves, as residues mod `modulus`.
    std::vector<std::uint64_t> parts;
    std::optional<LiftTarget> lift;  // Erdos-Turan only
};

/// Pure-arithmetic certificate check: every part is the set element its
/// coordinate names, the parts sum to the target, distinctness holds when
/// demanded, and (Erdos-Turan) the exact integer identities
/// sum x_i = r1, sum (x_i^2)_p = r2 hold.
bool replay(const Decomposition& d);

/// Decompositions in Ruzsa's group Z_{p-1} x Z_p, sharing one discrete-log table.
class RuzsaDecomposer {
public:
    RuzsaDecomposer(std::uint64_t p, std::uint64_t g);

    const numbertheory::DlogTable& table() const noexcept { return table_; }

    /// Lexicographically first (x1, x2) with x3 = log(b - g^x1 - g^x2) and
    /// x1 + x2 + x3 = a (mod p-1). Logs in `excluded` may not be used.
    /// Throws NoRepresentation.
    Decomposition decompose3(std::uint64_t a, std::uint64_t b, bool require_distinct,
                             const std::vector<std::uint64_t>& excluded = {}) const;

    /// Four pairwise-distinct elements: s4 = (0, 1) plus three parts avoiding
    /// log 0 for (a, b - 1); falls back to an exhaustive 4-fold search.
    Decomposition decompose4(std::uint64_t a, std::uint64_t b) const;

private:
    Decomposition make(std::uint64_t a, std::uint64_t b, std::string mode, bool distinct,
                       std::vector<std::uint64_t> logs) const;

    numbertheory::DlogTable table_;
};

Decomposition decompose3_ruzsa(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b,
                               bool require_distinct);
Decomposition decompose4_ruzsa(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b);

/// Smallest lift v >= K(2p+1) with v = n (mod N); r2 = (v - K) div 2p, r1 = v - 2p r2.
/// Throws RangeError when N is outside (4p^2, 5p^2), p is not a prime = 1 (mod 3), or p < 7.
LiftTarget lift_to_interval(std::uint64_t n, std::uint64_t N, std::uint64_t p);

enum class Search { Box, Exhaustive };

/// n = a1 + a2 + a3 (mod N) with a_i = x_i + (x_i^2)_p 2p from the Erdos-Turan set.
/// Throws PrimeNotFound or NoRepresentation.
Decomposition decompose3_ZN(std::uint64_t n, std::uint64_t N, Search search);

/// Same, with the prime already chosen (avoids repeating the prime search in sweeps).
Decomposition decompose3_ZN(std::uint64_t n, std::uint64_t N, std::uint64_t p, Search search);

}  // namespace sidonkit::decomposer
