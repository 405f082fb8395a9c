#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sidonkit/types.hpp"

namespace sidonkit::sidoncore {

/// {x + (x^2 mod p) * 2p : 0 <= x < p} as a subset of Z_{2p^2}. Integer Sidon set.
ModSet erdos_turan_set(std::uint64_t p);

/// {crt_flatten(x, g^x) : 0 <= x <= p-2} in Z_{(p-1)p}.
ModSet ruzsa_set(std::uint64_t p, std::uint64_t g);

struct SidonWitness {
    bool sidon = true;
    // a + a' = a'' + a''' with {a, a'} != {a'', a'''}; present iff !sidon.
    std::optional<std::array<std::uint64_t, 4>> collision;
};

SidonWitness is_sidon(std::span<const std::uint64_t> elements, Ambient ambient);
inline SidonWitness is_sidon(const ModSet& set) { return is_sidon(set.elements(), Ambient::cyclic(set.modulus())); }
inline SidonWitness is_sidon(const IntSeq& seq) { return is_sidon(seq.elements(), Ambient::integer()); }

/// Max over n of #{ {a, a'} : a <= a', a + a' = n }. Zero for the empty set.
std::uint64_t b2g_bound(std::span<const std::uint64_t> elements, Ambient ambient);

enum class Convention { Unordered, Ordered };
enum class Distinctness { None, Pairwise };
enum class Engine { Auto, BruteForce, Convolution };

/// Exact h-fold representation counts. Targets are dense: cyclic profiles are
/// indexed by [0, N); integer profiles by [0, h * max(A)].
struct RepProfile {
    unsigned arity = 1;
    Ambient ambient;
    Convention convention = Convention::Unordered;
    Distinctness distinct = Distinctness::None;
    std::vector<std::uint64_t> counts;

    std::uint64_t count(std::uint64_t target) const noexcept {
        return target < counts.size() ? counts[target] : 0;
    }
    std::uint64_t total() const;
    std::uint64_t max() const;
    /// (target, count) for every target with a nonzero count, ascending.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> nonzero() const;
};

struct ProfileRequest {
    unsigned h = 2;
    Convention convention = Convention::Unordered;
    Distinctness distinct = Distinctness::None;
    Engine engine = Engine::Auto;
    unsigned threads = 1;
};

/// Auto picks the convolution engine whenever it applies (cyclic, ordered,
/// no distinctness) and brute force otherwise. Requesting Convolution outside
/// that envelope throws EngineUnavailable.
RepProfile rep_profile(std::span<const std::uint64_t> elements, Ambient ambient, const ProfileRequest& request);
inline RepProfile rep_profile(const ModSet& set, const ProfileRequest& request) {
    return rep_profile(set.elements(), Ambient::cyclic(set.modulus()), request);
}

enum class Repetition { Allowed, Forbidden };

struct BasisReport {
    bool basis = false;
    std::vector<std::uint64_t> uncovered;
};

/// Does every residue of Z_N have a representation as a sum of h elements?
/// Forbidden repetition means the h summands are pairwise distinct.
BasisReport basis_order_check(const ModSet& set, unsigned h, Repetition repetition, unsigned threads = 1);

}  // namespace sidonkit::sidoncore
