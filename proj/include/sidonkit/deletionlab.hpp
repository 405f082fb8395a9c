#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sidonkit/rational.hpp"
#include "sidonkit/types.hpp"

namespace sidonkit::deletionlab {

enum class FamilyKind { Q, R, T, B, U2, U3, V2, V3, W, Custom };

std::string_view to_string(FamilyKind kind) noexcept;
/// Accepts the names printed by to_string ("Q", "U2", ...). Throws UnsupportedKind.
FamilyKind parse_family_kind(std::string_view name);
unsigned arity(FamilyKind kind);
/// Q and R members are sets (sorted); every other kind is an ordered tuple.
bool is_set_family(FamilyKind kind) noexcept;

struct FamilySpec {
    FamilyKind kind = FamilyKind::Q;
    /// n for Q, R, T, B; r for U, V, W. May be negative only for V kinds.
    std::int64_t target = 0;
    std::uint64_t modulus = 1;
    std::optional<Rational> epsilon;  // R and B only

    void validate() const;
};

using Tuple = std::vector<std::uint64_t>;

struct VectorFamily {
    FamilyKind kind = FamilyKind::Custom;
    unsigned arity = 0;
    std::int64_t target = 0;
    std::vector<Tuple> members;

    std::size_t size() const noexcept { return members.size(); }
    /// "unordered-set" or "ordered-tuple".
    std::string convention() const;
};

/// Largest t with t <= n^eps, computed exactly from eps = p/q as t^q <= n^p.
std::uint64_t floor_power(std::uint64_t n, const Rational& eps);

/// Every member of the kind's family with all coordinates in A. Throws UnsupportedKind for Custom.
VectorFamily enumerate_family(std::span<const std::uint64_t> A, const FamilySpec& spec);
inline VectorFamily enumerate_family(const IntSeq& A, const FamilySpec& spec) {
    return enumerate_family(A.elements(), spec);
}

struct RemovalWitness {
    std::uint64_t element = 0;
    /// Sidon lifting: (a, a', a'', a''') with a + a' = a'' + a''', {a, a'} != {a'', a'''}.
    /// B2[2] lifting: (a1, ..., a6) with a1 + a2 = a3 + a4 = a5 + a6 and three distinct pairs.
    Tuple tuple;
};

struct LiftResult {
    IntSeq survivors;
    std::vector<RemovalWitness> removed;  // ascending by element
    unsigned passes = 1;
};

/// Single pass against the original sequence unless `to_fixpoint` is set.
LiftResult sidon_lift(const IntSeq& A, bool to_fixpoint = false);
LiftResult b2_2_lift(const IntSeq& A, bool to_fixpoint = false);

/// Checks a witness against the sequence it was produced from.
bool replay_sidon_witness(const IntSeq& original, const RemovalWitness& w);
bool replay_b22_witness(const IntSeq& original, const RemovalWitness& w);

enum class AuditMode {
    QT,  // Q_n, T_n and the B2[2] lifting
    RB,  // R_n, B_n and the Sidon lifting
};

struct AuditReport {
    AuditMode mode = AuditMode::QT;
    std::uint64_t n = 0;
    std::uint64_t before = 0;  // |Q_n(A)| or |R_n(A)|, unordered sets
    std::uint64_t after = 0;   // same family over the lifted sequence
    std::uint64_t obstruction = 0;  // |T_n(A)| or |B_n(A)|, ordered tuples
    bool holds = true;         // after >= before - obstruction
};

AuditReport destruction_audit(const IntSeq& A, std::uint64_t n, std::uint64_t N, AuditMode mode = AuditMode::QT,
                              std::optional<Rational> epsilon = std::nullopt);

/// k members whose coordinate sets are pairwise disjoint, or nullopt. Exact
/// (depth-first search in member order, so the first hit is the greedy one).
std::optional<std::vector<std::size_t>> find_kdsv(const std::vector<Tuple>& members, std::size_t k);
inline std::optional<std::vector<std::size_t>> find_kdsv(const VectorFamily& family, std::size_t k) {
    return find_kdsv(family.members, k);
}

}  // namespace sidonkit::deletionlab
