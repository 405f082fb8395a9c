#include "sidonkit/numbertheory.hpp"

#include <array>
#include <string>

#include "sidonkit/error.hpp"

namespace sidonkit::numbertheory {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto q : kWitnesses) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // The first twelve primes form an exact witness set below 3.3e24.
    for (auto a : kWitnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

int legendre(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (legendre(a, p) != 1) {
        throw Error(ErrorKind::InvalidArgument, std::to_string(a) + " is not a square mod " + std::to_string(p));
    }
    std::uint64_t root;
    if (p % 4 == 3) {
        root = pow_mod(a, (p + 1) / 4, p);
    } else {
        std::uint64_t q = p - 1;
        std::uint64_t s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        std::uint64_t z = 2;
        while (legendre(z, p) != -1) ++z;
        std::uint64_t m = s;
        std::uint64_t c = pow_mod(z, q, p);
        std::uint64_t t = pow_mod(a, q, p);
        root = pow_mod(a, (q + 1) / 2, p);
        while (t != 1) {
            std::uint64_t i = 0;
            std::uint64_t t2 = t;
            while (t2 != 1) {
                t2 = mul_mod(t2, t2, p);
                ++i;
            }
            std::uint64_t b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            root = mul_mod(root, b, p);
        }
    }
    return root <= p - root ? root : p - root;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw Error(ErrorKind::RangeError, "zero has no inverse");
    return pow_mod(a, p - 2, p);
}

std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t p) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
    if (g == 0 || g >= p) throw Error(ErrorKind::RangeError, "g must lie in [1, p)");
    std::uint64_t order = p - 1;
    for (auto q : prime_factors(p - 1)) {
        while (order % q == 0 && pow_mod(g, order / q, p) == 1) order /= q;
    }
    return order;
}

bool is_generator(std::uint64_t g, std::uint64_t p) {
    if (g == 0 || g >= p) return false;
    return multiplicative_order(g, p) == p - 1;
}

std::uint64_t primitive_root(std::uint64_t p) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
    if (p == 2) return 1;
    const auto factors = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool generator = true;
        for (auto q : factors) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
    throw Error(ErrorKind::NotPrime, std::to_string(p));  // unreachable for primes
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
}

GeneratorPair::GeneratorPair(std::uint64_t p, std::uint64_t g) : p_(p), g_(g) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
    if (!is_generator(g, p)) {
        throw Error(ErrorKind::NotGenerator, std::to_string(g) + " does not generate F_" + std::to_string(p) + "^*");
    }
}

DlogTable::DlogTable(std::uint64_t p, std::uint64_t g) : p_(p), g_(g) {
    const GeneratorPair checked(p, g);
    if (p > (std::uint64_t{1} << 26)) throw Error(ErrorKind::RangeError, "discrete-log table too large");
    pow_.resize(p - 1);
    log_.assign(p, 0);
    std::uint64_t y = 1;
    for (std::uint64_t x = 0; x + 1 < p; ++x) {
        pow_[x] = y;
        log_[y] = x;
        y = y * g % p;
    }
}

std::uint64_t DlogTable::log(std::uint64_t y) const {
    y %= p_;
    if (y == 0) throw Error(ErrorKind::RangeError, "log of zero");
    return log_[y];
}

std::uint64_t crt_flatten(std::uint64_t u, std::uint64_t v, std::uint64_t p) {
    if (p < 2 || u >= p - 1 || v >= p) {
        throw Error(ErrorKind::RangeError, "crt_flatten(" + std::to_string(u) + ", " + std::to_string(v) + ") out of range for p=" + std::to_string(p));
    }
    // p = 1 (mod p-1), so t = v + p*k with k = u - v (mod p-1).
    const std::uint64_t q = p - 1;
    const std::uint64_t k = (u + q - v % q) % q;
    return v + p * k;
}

CrtPair crt_unflatten(std::uint64_t t, std::uint64_t p) {
    if (p < 2 || t >= (p - 1) * p) throw Error(ErrorKind::RangeError, "crt_unflatten out of range");
    return {t % (p - 1), t % p};
}

std::uint64_t find_window_prime(std::uint64_t N) {
    if (N < 2) throw Error(ErrorKind::RangeError, "N must be >= 2");
    for (std::uint64_t p = 7; 4 * p * p < N; ++p) {
        if (p % 3 != 1 || !is_prime(p)) continue;
        if (N < 5 * p * p) return p;
    }
    throw Error(ErrorKind::PrimeNotFound, "no prime p = 1 (mod 3), p >= 7 with 4p^2 < " + std::to_string(N) + " < 5p^2");
}

}  // namespace sidonkit::numbertheory
