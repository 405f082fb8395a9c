#include "sidonkit/convolution.hpp"

#include <array>
#include <bit>
#include <string>
#include <thread>

#include "sidonkit/error.hpp"

namespace sidonkit::convolution {
namespace {

struct NttPrime {
    std::uint32_t modulus;
    std::uint32_t generator;
};

// All three are c*2^k + 1 with k >= 23 and primitive root 3.
constexpr std::array<NttPrime, 3> kPrimes{{{998244353u, 3u}, {167772161u, 3u}, {469762049u, 3u}}};

std::uint32_t pow_mod32(std::uint64_t base, std::uint64_t exp, std::uint32_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

void ntt(std::vector<std::uint32_t>& a, bool inverse, NttPrime prime) {
    const std::size_t n = a.size();
    const std::uint32_t mod = prime.modulus;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::uint32_t> twiddle(n / 2 + 1);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint32_t w = pow_mod32(prime.generator, (mod - 1) / len, mod);
        if (inverse) w = pow_mod32(w, mod - 2, mod);
        const std::size_t half = len / 2;
        twiddle[0] = 1;
        for (std::size_t k = 1; k < half; ++k) twiddle[k] = static_cast<std::uint32_t>(std::uint64_t{twiddle[k - 1]} * w % mod);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::uint32_t u = a[i + k];
                const std::uint32_t v = static_cast<std::uint32_t>(std::uint64_t{a[i + k + half]} * twiddle[k] % mod);
                const std::uint32_t s = u + v;
                a[i + k] = s >= mod ? s - mod : s;
                a[i + k + half] = u >= v ? u - v : u + mod - v;
            }
        }
    }
    if (inverse) {
        const std::uint64_t n_inv = pow_mod32(n % mod, mod - 2, mod);
        for (auto& x : a) x = static_cast<std::uint32_t>(x * n_inv % mod);
    }
}

std::vector<std::uint32_t> channel(std::span<const std::uint64_t> residues, std::size_t length, unsigned h,
                                   NttPrime prime) {
    std::vector<std::uint32_t> a(length, 0);
    for (auto r : residues) a[r] += 1;
    ntt(a, false, prime);
    for (auto& x : a) x = pow_mod32(x, h, prime.modulus);
    ntt(a, true, prime);
    return a;
}

std::size_t transform_length(std::uint64_t modulus, unsigned h) {
    if (std::has_single_bit(modulus)) return static_cast<std::size_t>(modulus);
    const std::uint64_t linear = std::uint64_t{h} * (modulus - 1) + 1;
    return static_cast<std::size_t>(std::bit_ceil(linear));
}

}  // namespace

bool supports(std::uint64_t modulus, unsigned h) {
    if (modulus == 0 || h == 0) return false;
    if (modulus > kMaxTransformLength) return false;
    return transform_length(modulus, h) <= kMaxTransformLength;
}

std::vector<std::uint64_t> cyclic_power_counts(std::span<const std::uint64_t> residues, std::uint64_t modulus,
                                               unsigned h, unsigned threads) {
    if (!supports(modulus, h)) {
        throw Error(ErrorKind::EngineUnavailable,
                    "transform too large for modulus " + std::to_string(modulus) + " and h=" + std::to_string(h));
    }
    // Largest possible count is |A|^h; it must fit a 64-bit word, which is far
    // below the ~7.9e25 product of the three primes.
    unsigned __int128 bound = 1;
    for (unsigned i = 0; i < h; ++i) {
        bound *= residues.size();
        if (bound > UINT64_MAX) throw Error(ErrorKind::Overflow, "|A|^h exceeds 64-bit counters");
    }
    for (auto r : residues) {
        if (r >= modulus) throw Error(ErrorKind::RangeError, "residue out of range");
    }

    const std::size_t length = transform_length(modulus, h);
    std::array<std::vector<std::uint32_t>, 3> out;
    if (threads > 1) {
        std::array<std::thread, 3> workers;
        for (std::size_t c = 0; c < 3; ++c) {
            workers[c] = std::thread([&, c] { out[c] = channel(residues, length, h, kPrimes[c]); });
        }
        for (auto& w : workers) w.join();
    } else {
        for (std::size_t c = 0; c < 3; ++c) out[c] = channel(residues, length, h, kPrimes[c]);
    }

    // Garner recombination.
    const std::uint64_t m0 = kPrimes[0].modulus;
    const std::uint64_t m1 = kPrimes[1].modulus;
    const std::uint64_t m2 = kPrimes[2].modulus;
    const std::uint64_t inv_m0_mod_m1 = pow_mod32(m0 % m1, m1 - 2, static_cast<std::uint32_t>(m1));
    const std::uint64_t m0m1_mod_m2 = (m0 % m2) * (m1 % m2) % m2;
    const std::uint64_t inv_m0m1_mod_m2 = pow_mod32(m0m1_mod_m2, m2 - 2, static_cast<std::uint32_t>(m2));

    std::vector<std::uint64_t> counts(modulus, 0);
    for (std::size_t i = 0; i < length; ++i) {
        const std::uint64_t r0 = out[0][i];
        const std::uint64_t r1 = out[1][i];
        const std::uint64_t r2 = out[2][i];
        const std::uint64_t t1 = (r1 + m1 - r0 % m1) % m1 * inv_m0_mod_m1 % m1;
        const unsigned __int128 x01 = r0 + static_cast<unsigned __int128>(m0) * t1;  // value mod m0*m1
        const std::uint64_t x01_mod_m2 = static_cast<std::uint64_t>(x01 % m2);
        const std::uint64_t t2 = (r2 + m2 - x01_mod_m2) % m2 * inv_m0m1_mod_m2 % m2;
        const unsigned __int128 value = x01 + static_cast<unsigned __int128>(m0) * m1 * t2;
        if (value == 0) continue;
        if (value > bound) throw Error(ErrorKind::Overflow, "CRT reconstruction exceeded |A|^h");
        counts[i % modulus] += static_cast<std::uint64_t>(value);
    }
    return counts;
}

}  // namespace sidonkit::convolution
