#include "sidonkit/decomposer.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "sidonkit/curveoracle.hpp"
#include "sidonkit/error.hpp"

namespace sidonkit::decomposer {

namespace nt = sidonkit::numbertheory;

bool LiftTarget::valid() const {
    if (p < 7 || N == 0) return false;
    if (K != (p + 3) / 4) return false;
    if (r1 < K || r2 < K || r1 > upper() || r2 > upper()) return false;
    return (r1 + 2 * p * r2) % N == n % N && n < N;
}

namespace {

bool all_distinct(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

std::uint64_t sq(std::uint64_t x, std::uint64_t p) { return x * x % p; }

std::uint64_t et_element(std::uint64_t x, std::uint64_t p) { return x + sq(x, p) * 2 * p; }

}  // namespace

bool replay(const Decomposition& d) {
    if (d.parts.size() != d.coordinates.size() || d.parts.empty() || d.modulus == 0) return false;
    if (d.target >= d.modulus) return false;
    std::uint64_t sum = 0;
    if (d.construction == Construction::Ruzsa) {
        if (d.modulus != (d.p - 1) * d.p) return false;
        for (std::size_t i = 0; i < d.parts.size(); ++i) {
            const std::uint64_t x = d.coordinates[i];
            if (x + 1 >= d.p) return false;
            if (d.parts[i] != nt::crt_flatten(x, nt::pow_mod(d.generator, x, d.p), d.p)) return false;
            sum = (sum + d.parts[i]) % d.modulus;
        }
    } else {
        if (!d.lift || !d.lift->valid() || d.lift->N != d.modulus || d.lift->n != d.target) return false;
        std::uint64_t xs = 0;
        std::uint64_t squares = 0;
        for (std::size_t i = 0; i < d.parts.size(); ++i) {
            const std::uint64_t x = d.coordinates[i];
            if (x >= d.p) return false;
            const std::uint64_t element = et_element(x, d.p);
            if (d.parts[i] != element % d.modulus) return false;
            xs += x;
            squares += sq(x, d.p);
            sum += element;
        }
        if (xs != d.lift->r1 || squares != d.lift->r2) return false;
        if (sum != d.lift->r1 + 2 * d.p * d.lift->r2) return false;
        sum %= d.modulus;
    }
    if (sum != d.target) return false;
    if (d.distinct && !all_distinct(d.parts)) return false;
    return true;
}

RuzsaDecomposer::RuzsaDecomposer(std::uint64_t p, std::uint64_t g) : table_(p, g) {}

Decomposition RuzsaDecomposer::make(std::uint64_t a, std::uint64_t b, std::string mode, bool distinct,
                                    std::vector<std::uint64_t> logs) const {
    const std::uint64_t p = table_.p();
    Decomposition d;
    d.construction = Construction::Ruzsa;
    d.mode = std::move(mode);
    d.p = p;
    d.generator = table_.g();
    d.modulus = (p - 1) * p;
    d.target = nt::crt_flatten(a, b, p);
    d.distinct = distinct;
    for (auto x : logs) d.parts.push_back(nt::crt_flatten(x, table_.pow(x), p));
    d.coordinates = std::move(logs);
    return d;
}

Decomposition RuzsaDecomposer::decompose3(std::uint64_t a, std::uint64_t b, bool require_distinct,
                                          const std::vector<std::uint64_t>& excluded) const {
    const std::uint64_t p = table_.p();
    const std::uint64_t q = p - 1;
    if (a >= q || b >= p) throw Error(ErrorKind::RangeError, "target out of range");
    std::vector<bool> banned(q, false);
    for (auto x : excluded) {
        if (x < q) banned[x] = true;
    }
    for (std::uint64_t x1 = 0; x1 < q; ++x1) {
        if (banned[x1]) continue;
        for (std::uint64_t x2 = 0; x2 < q; ++x2) {
            if (banned[x2] || (require_distinct && x2 == x1)) continue;
            const std::uint64_t z = (b + 2 * p - table_.pow(x1) - table_.pow(x2)) % p;
            if (z == 0) continue;
            const std::uint64_t x3 = table_.log(z);
            if (banned[x3] || (x1 + x2 + x3) % q != a) continue;
            if (require_distinct && (x3 == x1 || x3 == x2)) continue;
            return make(a, b, require_distinct ? "distinct" : "any", require_distinct, {x1, x2, x3});
        }
    }
    throw Error(ErrorKind::NoRepresentation,
                "no 3-term representation of (" + std::to_string(a) + ", " + std::to_string(b) + ") for p=" +
                    std::to_string(p));
}

Decomposition RuzsaDecomposer::decompose4(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t p = table_.p();
    const std::uint64_t q = p - 1;
    if (a >= q || b >= p) throw Error(ErrorKind::RangeError, "target out of range");
    try {
        auto three = decompose3(a, (b + p - 1) % p, true, {0});
        auto logs = three.coordinates;
        logs.push_back(0);
        return make(a, b, "fixed-s4", true, std::move(logs));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoRepresentation) throw;
    }
    for (std::uint64_t x1 = 0; x1 < q; ++x1)
        for (std::uint64_t x2 = 0; x2 < q; ++x2) {
            if (x2 == x1) continue;
            for (std::uint64_t x3 = 0; x3 < q; ++x3) {
                if (x3 == x1 || x3 == x2) continue;
                const std::uint64_t z = (b + 3 * p - table_.pow(x1) - table_.pow(x2) - table_.pow(x3)) % p;
                if (z == 0) continue;
                const std::uint64_t x4 = table_.log(z);
                if (x4 == x1 || x4 == x2 || x4 == x3 || (x1 + x2 + x3 + x4) % q != a) continue;
                return make(a, b, "exhaustive-4", true, {x1, x2, x3, x4});
            }
        }
    throw Error(ErrorKind::NoRepresentation,
                "no 4-term distinct representation of (" + std::to_string(a) + ", " + std::to_string(b) + ") for p=" +
                    std::to_string(p));
}

Decomposition decompose3_ruzsa(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b,
                               bool require_distinct) {
    return RuzsaDecomposer(p, g).decompose3(a, b, require_distinct);
}

Decomposition decompose4_ruzsa(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b) {
    return RuzsaDecomposer(p, g).decompose4(a, b);
}

LiftTarget lift_to_interval(std::uint64_t n, std::uint64_t N, std::uint64_t p) {
    if (p < 7 || p % 3 != 1 || !nt::is_prime(p)) {
        throw Error(ErrorKind::RangeError, "p must be a prime >= 7 with p = 1 (mod 3), got " + std::to_string(p));
    }
    if (!(4 * p * p < N && N < 5 * p * p)) {
        throw Error(ErrorKind::RangeError, "need 4p^2 < N < 5p^2 for N=" + std::to_string(N));
    }
    if (n >= N) throw Error(ErrorKind::RangeError, "n must be reduced mod N");
    LiftTarget t;
    t.p = p;
    t.K = (p + 3) / 4;
    t.n = n;
    t.N = N;
    const std::uint64_t low = t.K * (2 * p + 1);
    const std::uint64_t v = low + (n + N - low % N) % N;
    t.r2 = (v - t.K) / (2 * p);
    t.r1 = v - 2 * p * t.r2;
    if (!t.valid()) throw Error(ErrorKind::RangeError, "lift left the covered interval");
    return t;
}

Decomposition decompose3_ZN(std::uint64_t n, std::uint64_t N, Search search) {
    return decompose3_ZN(n, N, nt::find_window_prime(N), search);
}

Decomposition decompose3_ZN(std::uint64_t n, std::uint64_t N, std::uint64_t p, Search search) {
    const LiftTarget lift = lift_to_interval(n, N, p);
    const auto quadric = curveoracle::enumerate_quadric(
        {p, static_cast<std::int64_t>(lift.r1), static_cast<std::int64_t>(lift.r2)});
    const auto K = static_cast<std::int64_t>(lift.K);
    const auto r1 = static_cast<std::int64_t>(lift.r1);
    const auto r2 = static_cast<std::int64_t>(lift.r2);
    auto in_box = [&](std::uint64_t x) {
        const auto xi = static_cast<std::int64_t>(x);
        const auto si = static_cast<std::int64_t>(sq(x, p));
        return std::llabs(12 * xi - 4 * r1) <= K && std::llabs(12 * si - 4 * r2) <= K;
    };
    for (const auto& [x1, x2] : quadric.points) {
        if (search == Search::Box && !(in_box(x1) && in_box(x2))) continue;
        const std::uint64_t x3 = (lift.r1 % p + 2 * p - x1 - x2) % p;
        if (x1 + x2 + x3 != lift.r1) continue;
        if (sq(x1, p) + sq(x2, p) + sq(x3, p) != lift.r2) continue;
        Decomposition d;
        d.construction = Construction::ErdosTuran;
        d.mode = search == Search::Box ? "box" : "exhaustive";
        d.p = p;
        d.modulus = N;
        d.target = n;
        d.coordinates = {x1, x2, x3};
        for (auto x : d.coordinates) d.parts.push_back(et_element(x, p) % N);
        d.lift = lift;
        return d;
    }
    throw Error(ErrorKind::NoRepresentation, "no exact lift for n=" + std::to_string(n) + " (r1=" +
                                                 std::to_string(lift.r1) + ", r2=" + std::to_string(lift.r2) + ")");
}

}  // namespace sidonkit::decomposer
