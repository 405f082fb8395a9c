#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "sidonkit/deletionlab.hpp"

namespace sidonkit::sunflower {

using deletionlab::Tuple;

struct SunflowerCert {
    std::vector<std::size_t> petal_indices;   // ascending indices into the family
    std::vector<unsigned> type_set;           // 1-based coordinate positions
    std::vector<std::uint64_t> core_values;   // one per entry of type_set
};

struct ClassicalSunflower {
    std::vector<std::uint64_t> core;          // sorted
    std::vector<std::size_t> petal_indices;   // ascending
};

/// Both clauses of the definition for the given type (1-based positions).
/// Returns false for repeated vectors, mixed arity or out-of-range positions.
bool is_vectorial_sunflower(const std::vector<Tuple>& members, const std::vector<unsigned>& type_set);
bool is_valid_certificate(const std::vector<Tuple>& family, const SunflowerCert& cert);

/// {h*x_i + i}: position i is recoverable as value mod h (with h for 0).
std::vector<std::uint64_t> set_h_embed(const Tuple& x);

/// Erdos-Rado: maximal disjoint subfamily, else branch on the most popular
/// element of its union (smallest on ties). Sets must share a common size.
std::optional<ClassicalSunflower> find_classical_sunflower(const std::vector<std::vector<std::uint64_t>>& sets,
                                                           std::size_t k);

/// Family size that guarantees a sunflower: h! ((h^2-h+1) k)^h, saturating at UINT64_MAX.
std::uint64_t vectorial_bound(unsigned h, std::size_t k);
std::uint64_t classical_bound(unsigned h, std::size_t k);

struct VectorialOptions {
    /// Search every type exhaustively when the constructive route fails.
    bool exact_fallback = true;
};

/// Constructive route first (embed, classical sunflower, prune conflicts in
/// lexicographic order), then the exact search if enabled.
std::optional<SunflowerCert> find_vectorial_sunflower(const std::vector<Tuple>& family, std::size_t k,
                                                      VectorialOptions opts = {});
inline std::optional<SunflowerCert> find_vectorial_sunflower(const deletionlab::VectorFamily& family, std::size_t k,
                                                             VectorialOptions opts = {}) {
    return find_vectorial_sunflower(family.members, k, opts);
}

}  // namespace sidonkit::sunflower
