#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "sidonkit/sidoncore.hpp"

namespace sidonkit::curveoracle {

/// The curve U^2 = 4V^3 + (bV + lambda)^2 over F_p. lambda is g^a for the
/// first coordinate a of a Ruzsa target (a, b).
struct CurveParams {
    std::uint64_t p = 3;
    std::uint64_t b = 0;
    std::uint64_t lambda = 1;

    /// Throws NotOddPrime, RangeError (b or lambda out of range) or
    /// InvalidArgument (lambda == 0).
    void validate() const;
};

/// #{(U, V) in F_p^2 : V != 0, U^2 = 4V^3 + (bV + lambda)^2}, by Euler's criterion per V.
std::uint64_t curve_point_count(const CurveParams& cp);

/// curve_point_count(cp) - p.
std::int64_t hasse_gap(const CurveParams& cp);

/// 2*ceil(sqrt(p)) + 4: the tolerance we test hasse_gap against.
std::int64_t hasse_tolerance(std::uint64_t p);

/// Ordered (x1, x2, x3) in [0, p-1)^3 with x1+x2+x3 = a (mod p-1) and
/// g^x1 + g^x2 + g^x3 = b (mod p). Pairwise restricts to x_i != x_j.
std::uint64_t triple_rep_count(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b,
                               sidoncore::Distinctness distinct = sidoncore::Distinctness::None);

/// Same count for every target at once: entry [a * p + b].
std::vector<std::uint64_t> triple_rep_table(std::uint64_t p, std::uint64_t g,
                                            sidoncore::Distinctness distinct = sidoncore::Distinctness::None);

/// Solutions with x_i = x_j for some i != j.
std::uint64_t repeated_coordinate_count(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b);

/// Pairwise-distinct solutions for (a, b) with some x_i = 0. These are the
/// representations that clash with the fixed fourth summand (0, 1) when a
/// 4-term representation of (a, b + 1) is built from a 3-term one.
std::uint64_t special_representation_count(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b);

/// The quadric x1^2 + x2^2 + (x1 + x2 - r1)^2 = r2 over F_p, p = 1 (mod 3).
struct QuadricParams {
    std::uint64_t p = 7;
    std::int64_t r1 = 0;
    std::int64_t r2 = 0;

    /// Throws NotPrime or InvalidArgument (p != 1 mod 3).
    void validate() const;
    /// 6 r2 = 2 r1^2 (mod p): the curve splits into two lines.
    bool reducible() const;
};

struct QuadricSolutions {
    QuadricParams params;
    bool reducible = false;
    /// All (x1, x2) in [0, p)^2 on the curve, lexicographically sorted.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
};

QuadricSolutions enumerate_quadric(const QuadricParams& qp);

/// Points (x1/p, x2/p, (x1^2)_p/p, (x2^2)_p/p) stored as numerators over a common denominator.
struct TorusCloud {
    std::uint64_t denominator = 1;
    std::vector<std::array<std::uint64_t, 4>> points;
};

TorusCloud torus_points(const QuadricParams& qp);
TorusCloud torus_points(const QuadricSolutions& solutions);

struct BoxCoverage {
    std::uint64_t empty = 0;
    std::uint64_t total = 0;
};

/// Dyadic boxes of side 2^-level in [0,1)^4 that contain no cloud point.
/// level must be in [1, 6].
BoxCoverage dyadic_box_coverage(const TorusCloud& cloud, unsigned level);

}  // namespace sidonkit::curveoracle
