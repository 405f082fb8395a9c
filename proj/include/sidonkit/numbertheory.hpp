#pragma once

#include <cstdint>
#include <vector>

namespace sidonkit::numbertheory {

/// (a * b) mod m without overflow for any 64-bit operands.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in ascending order, by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Euler's criterion. Returns 1 for a nonzero square, -1 for a non-residue and
/// 0 when a == 0 (mod p). p must be an odd prime.
int legendre(std::uint64_t a, std::uint64_t p);

/// Square root of a modulo an odd prime p (Tonelli-Shanks); a must be a
/// quadratic residue or zero. Returns the root in [0, (p-1)/2].
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p);

/// Multiplicative order of g modulo the prime p. Throws NotPrime / RangeError.
std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t p);

bool is_generator(std::uint64_t g, std::uint64_t p);

/// Smallest generator of F_p^*. primitive_root(2) == 1.
std::uint64_t primitive_root(std::uint64_t p);

/// A prime modulus, checked on construction.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);
    std::uint64_t p() const noexcept { return p_; }

private:
    std::uint64_t p_;
};

/// A prime together with a generator of its multiplicative group.
class GeneratorPair {
public:
    GeneratorPair(std::uint64_t p, std::uint64_t g);
    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t g() const noexcept { return g_; }

private:
    std::uint64_t p_;
    std::uint64_t g_;
};

/// Powers g^x and discrete logs for a small prime, built once and read-only afterwards.
class DlogTable {
public:
    DlogTable(std::uint64_t p, std::uint64_t g);
    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t g() const noexcept { return g_; }
    /// g^x mod p for x in [0, p-1).
    std::uint64_t pow(std::uint64_t x) const { return pow_[x % (p_ - 1)]; }
    /// The x in [0, p-1) with g^x = y; y must be nonzero mod p.
    std::uint64_t log(std::uint64_t y) const;

private:
    std::uint64_t p_;
    std::uint64_t g_;
    std::vector<std::uint64_t> pow_;
    std::vector<std::uint64_t> log_;
};

/// Z_{p-1} x Z_p -> Z_{(p-1)p}: the unique t with t = u (mod p-1), t = v (mod p).
std::uint64_t crt_flatten(std::uint64_t u, std::uint64_t v, std::uint64_t p);

struct CrtPair {
    std::uint64_t u;  // residue mod p-1
    std::uint64_t v;  // residue mod p
};

CrtPair crt_unflatten(std::uint64_t t, std::uint64_t p);

/// Smallest prime p >= 7 with p = 1 (mod 3) and 4p^2 < N < 5p^2.
/// Throws PrimeNotFound when the window holds no such prime.
std::uint64_t find_window_prime(std::uint64_t N);

}  // namespace sidonkit::numbertheory
