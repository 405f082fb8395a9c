#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sidonkit/rational.hpp"

namespace sidonkit {

/// A finite subset of Z_N: sorted, distinct residues below the modulus.
class ModSet {
public:
    ModSet() = default;
    /// Validates; elements need not arrive sorted but must be distinct and < modulus.
    ModSet(std::uint64_t modulus, std::vector<std::uint64_t> elements);

    /// Every residue of Z_N.
    static ModSet full(std::uint64_t modulus);

    std::uint64_t modulus() const noexcept { return modulus_; }
    std::span<const std::uint64_t> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    bool contains(std::uint64_t residue) const;

    /// The same integers reinterpreted modulo another modulus (duplicates are an error).
    ModSet reinterpret(std::uint64_t new_modulus) const;

    friend bool operator==(const ModSet&, const ModSet&) = default;

private:
    std::uint64_t modulus_ = 1;
    std::vector<std::uint64_t> elements_;
};

/// Where sums live: plain integers, or residues modulo N.
struct Ambient {
    enum class Kind { Integer, Cyclic };
    Kind kind = Kind::Integer;
    std::uint64_t modulus = 0;

    static Ambient integer() { return {Kind::Integer, 0}; }
    static Ambient cyclic(std::uint64_t n) { return {Kind::Cyclic, n}; }
    bool is_cyclic() const noexcept { return kind == Kind::Cyclic; }
    std::uint64_t reduce(std::uint64_t v) const noexcept { return is_cyclic() ? v % modulus : v; }
};

/// Parameters of the truncated random-sequence space: each admissible x
/// (x > m, x mod N in S, x <= horizon) is included independently with
/// probability x^-gamma.
struct SampleConfig {
    Rational gamma{7, 11};
    std::uint64_t m = 0;
    ModSet residues = ModSet::full(1);  // modulus N lives here
    std::uint64_t horizon = 1;
    std::uint64_t seed = 0;

    std::uint64_t modulus() const noexcept { return residues.modulus(); }
    /// Throws InvalidArgument unless 0 < gamma < 1, S nonempty, horizon >= 1.
    void validate() const;

    friend bool operator==(const SampleConfig&, const SampleConfig&) = default;
};

/// A finite strictly increasing sequence of positive integers, truncated at a horizon.
class IntSeq {
public:
    IntSeq() = default;
    IntSeq(std::vector<std::uint64_t> elements, std::uint64_t horizon,
           std::optional<SampleConfig> provenance = std::nullopt);

    std::span<const std::uint64_t> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    std::uint64_t horizon() const noexcept { return horizon_; }
    const std::optional<SampleConfig>& provenance() const noexcept { return provenance_; }
    bool contains(std::uint64_t x) const;

    friend bool operator==(const IntSeq&, const IntSeq&) = default;

private:
    std::vector<std::uint64_t> elements_;
    std::uint64_t horizon_ = 0;
    std::optional<SampleConfig> provenance_;
};

}  // namespace sidonkit
