#include "sidonkit/curveoracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sidonkit/error.hpp"
#include "sidonkit/numbertheory.hpp"

namespace sidonkit::curveoracle {

namespace nt = sidonkit::numbertheory;
using sidoncore::Distinctness;

void CurveParams::validate() const {
    if (p < 3 || !nt::is_prime(p)) throw Error(ErrorKind::NotOddPrime, std::to_string(p));
    if (b >= p || lambda >= p) throw Error(ErrorKind::RangeError, "b and lambda must be reduced mod p");
    if (lambda == 0) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
}

std::uint64_t curve_point_count(const CurveParams& cp) {
    cp.validate();
    const std::uint64_t p = cp.p;
    std::uint64_t count = 0;
    for (std::uint64_t v = 1; v < p; ++v) {
        const std::uint64_t cube = nt::mul_mod(nt::mul_mod(v, v, p), v, p);
        const std::uint64_t lin = (nt::mul_mod(cp.b, v, p) + cp.lambda) % p;
        const std::uint64_t rhs = (nt::mul_mod(4, cube, p) + nt::mul_mod(lin, lin, p)) % p;
        const int l = nt::legendre(rhs, p);
        count += l == 0 ? 1 : (l == 1 ? 2 : 0);
    }
    return count;
}

std::int64_t hasse_gap(const CurveParams& cp) {
    return static_cast<std::int64_t>(curve_point_count(cp)) - static_cast<std::int64_t>(cp.p);
}

std::int64_t hasse_tolerance(std::uint64_t p) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(p)));
    while (r * r < p) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= p) --r;
    return 2 * static_cast<std::int64_t>(r) + 4;
}

namespace {

bool pairwise_distinct(std::uint64_t x1, std::uint64_t x2, std::uint64_t x3) {
    return x1 != x2 && x1 != x3 && x2 != x3;
}

// Calls f(x1, x2, x3) for every ordered solution of the Ruzsa system for (a, b).
template <class F>
void for_each_solution(const nt::DlogTable& t, std::uint64_t a, std::uint64_t b, F&& f) {
    const std::uint64_t p = t.p();
    const std::uint64_t q = p - 1;
    if (a >= q || b >= p) throw Error(ErrorKind::RangeError, "target out of range");
    for (std::uint64_t x1 = 0; x1 < q; ++x1) {
        for (std::uint64_t x2 = 0; x2 < q; ++x2) {
            const std::uint64_t x3 = (a + 2 * q - x1 - x2) % q;
            if ((t.pow(x1) + t.pow(x2) + t.pow(x3)) % p == b) f(x1, x2, x3);
        }
    }
}

}  // namespace

std::uint64_t triple_rep_count(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b,
                               Distinctness distinct) {
    const nt::DlogTable t(p, g);
    std::uint64_t count = 0;
    for_each_solution(t, a, b, [&](std::uint64_t x1, std::uint64_t x2, std::uint64_t x3) {
        if (distinct == Distinctness::None || pairwise_distinct(x1, x2, x3)) ++count;
    });
    return count;
}

std::vector<std::uint64_t> triple_rep_table(std::uint64_t p, std::uint64_t g, Distinctness distinct) {
    const nt::DlogTable t(p, g);
    const std::uint64_t q = p - 1;
    std::vector<std::uint64_t> table(q * p, 0);
    for (std::uint64_t x1 = 0; x1 < q; ++x1) {
        for (std::uint64_t x2 = 0; x2 < q; ++x2) {
            for (std::uint64_t x3 = 0; x3 < q; ++x3) {
                if (distinct == Distinctness::Pairwise && !pairwise_distinct(x1, x2, x3)) continue;
                const std::uint64_t a = (x1 + x2 + x3) % q;
                const std::uint64_t b = (t.pow(x1) + t.pow(x2) + t.pow(x3)) % p;
                ++table[a * p + b];
            }
        }
    }
    return table;
}

std::uint64_t repeated_coordinate_count(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b) {
    const nt::DlogTable t(p, g);
    std::uint64_t count = 0;
    for_each_solution(t, a, b, [&](std::uint64_t x1, std::uint64_t x2, std::uint64_t x3) {
        if (!pairwise_distinct(x1, x2, x3)) ++count;
    });
    return count;
}

std::uint64_t special_representation_count(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b) {
    const nt::DlogTable t(p, g);
    std::uint64_t count = 0;
    for_each_solution(t, a, b, [&](std::uint64_t x1, std::uint64_t x2, std::uint64_t x3) {
        if (pairwise_distinct(x1, x2, x3) && (x1 == 0 || x2 == 0 || x3 == 0)) ++count;
    });
    return count;
}

namespace {

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
    const auto m = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((v % m) + m) % m);
}

}  // namespace

void QuadricParams::validate() const {
    if (!nt::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
    if (p % 3 != 1) throw Error(ErrorKind::InvalidArgument, "quadric prime must be 1 mod 3, got " + std::to_string(p));
}

bool QuadricParams::reducible() const {
    const std::uint64_t s1 = reduce(r1, p);
    const std::uint64_t lhs = nt::mul_mod(6, reduce(r2, p), p);
    const std::uint64_t rhs = nt::mul_mod(2, nt::mul_mod(s1, s1, p), p);
    return lhs == rhs;
}

QuadricSolutions enumerate_quadric(const QuadricParams& qp) {
    qp.validate();
    const std::uint64_t p = qp.p;
    const std::uint64_t r1 = reduce(qp.r1, p);
    const std::uint64_t r2 = reduce(qp.r2, p);
    const std::uint64_t inv4 = nt::inverse_mod(4, p);

    QuadricSolutions out;
    out.params = qp;
    out.reducible = qp.reducible();
    // For fixed x1 with c = x1 - r1:  2 x2^2 + 2c x2 + (x1^2 + c^2 - r2) = 0,
    // discriminant D = 8 r2 - 8 x1^2 - 4 c^2, roots x2 = (-2c +- sqrt D) / 4.
    for (std::uint64_t x1 = 0; x1 < p; ++x1) {
        const std::uint64_t c = (x1 + p - r1) % p;
        const std::uint64_t x1sq = nt::mul_mod(x1, x1, p);
        const std::uint64_t csq = nt::mul_mod(c, c, p);
        const std::uint64_t d = (nt::mul_mod(8, r2, p) + p - nt::mul_mod(8, x1sq, p) + p - nt::mul_mod(4, csq, p)) % p;
        const int l = nt::legendre(d, p);
        if (l < 0) continue;
        const std::uint64_t s = nt::sqrt_mod(d, p);
        const std::uint64_t minus2c = (p - nt::mul_mod(2, c, p)) % p;
        const std::uint64_t y1 = nt::mul_mod((minus2c + s) % p, inv4, p);
        const std::uint64_t y2 = nt::mul_mod((minus2c + p - s) % p, inv4, p);
        out.points.emplace_back(x1, std::min(y1, y2));
        if (y1 != y2) out.points.emplace_back(x1, std::max(y1, y2));
    }
    return out;
}

TorusCloud torus_points(const QuadricSolutions& solutions) {
    const std::uint64_t p = solutions.params.p;
    TorusCloud cloud;
    cloud.denominator = p;
    cloud.points.reserve(solutions.points.size());
    for (const auto& [x1, x2] : solutions.points) {
        cloud.points.push_back({x1, x2, nt::mul_mod(x1, x1, p), nt::mul_mod(x2, x2, p)});
    }
    return cloud;
}

TorusCloud torus_points(const QuadricParams& qp) { return torus_points(enumerate_quadric(qp)); }

BoxCoverage dyadic_box_coverage(const TorusCloud& cloud, unsigned level) {
    if (level < 1 || level > 6) throw Error(ErrorKind::RangeError, "dyadic level must be in [1, 6]");
    if (cloud.denominator == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    const std::uint64_t side = std::uint64_t{1} << level;
    const std::uint64_t total = side * side * side * side;
    std::vector<bool> hit(total, false);
    std::uint64_t hits = 0;
    for (const auto& pt : cloud.points) {
        std::uint64_t index = 0;
        for (auto num : pt) {
            if (num >= cloud.denominator) throw Error(ErrorKind::RangeError, "torus coordinate outside [0,1)");
            const auto cell = static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) << level) / cloud.denominator);
            index = index * side + cell;
        }
        if (!hit[index]) {
            hit[index] = true;
            ++hits;
        }
    }
    return {total - hits, total};
}

}  // namespace sidonkit::curveoracle
