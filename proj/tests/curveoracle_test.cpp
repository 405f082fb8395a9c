#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "sidonkit/curveoracle.hpp"
#include "sidonkit/error.hpp"
#include "sidonkit/numbertheory.hpp"

using namespace sidonkit;
using namespace sidonkit::curveoracle;
using sidoncore::Distinctness;

namespace {

// Independent oracle: count (U, V) pairs directly, no residue test.
std::uint64_t brute_curve_points(std::uint64_t p, std::uint64_t b, std::uint64_t lambda) {
    std::uint64_t count = 0;
    for (std::uint64_t v = 1; v < p; ++v) {
        const std::uint64_t rhs = (4 * v * v % p * v + (b * v + lambda) % p * ((b * v + lambda) % p)) % p;
        for (std::uint64_t u = 0; u < p; ++u) count += (u * u % p == rhs);
    }
    return count;
}

// Independent oracle: full triple loop with powers computed by repeated multiplication.
struct TripleCounts {
    std::uint64_t all = 0, distinct = 0;
};

TripleCounts brute_triples(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b) {
    std::vector<std::uint64_t> pw(p - 1);
    pw[0] = 1;
    for (std::size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * g % p;
    TripleCounts c;
    for (std::uint64_t x1 = 0; x1 + 1 < p; ++x1)
        for (std::uint64_t x2 = 0; x2 + 1 < p; ++x2)
            for (std::uint64_t x3 = 0; x3 + 1 < p; ++x3) {
                if ((x1 + x2 + x3) % (p - 1) != a || (pw[x1] + pw[x2] + pw[x3]) % p != b) continue;
                ++c.all;
                if (x1 != x2 && x1 != x3 && x2 != x3) ++c.distinct;
            }
    return c;
}

std::uint64_t brute_fixed_four(std::uint64_t p, std::uint64_t g, std::uint64_t a, std::uint64_t b) {
    std::vector<std::uint64_t> pw(p - 1);
    pw[0] = 1;
    for (std::size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * g % p;
    std::uint64_t count = 0;
    for (std::uint64_t x1 = 1; x1 + 1 < p; ++x1)
        for (std::uint64_t x2 = 1; x2 + 1 < p; ++x2)
            for (std::uint64_t x3 = 1; x3 + 1 < p; ++x3) {
                if (x1 == x2 || x1 == x3 || x2 == x3) continue;
                if ((x1 + x2 + x3) % (p - 1) == a && (pw[x1] + pw[x2] + pw[x3] + 1) % p == b) ++count;
            }
    return count;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> brute_quadric(std::uint64_t p, std::int64_t r1, std::int64_t r2) {
    const auto P = static_cast<std::int64_t>(p);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::int64_t x1 = 0; x1 < P; ++x1)
        for (std::int64_t x2 = 0; x2 < P; ++x2) {
            const std::int64_t lhs = x1 * x1 + x2 * x2 + (x1 + x2 - r1) * (x1 + x2 - r1) - r2;
            if (((lhs % P) + P) % P == 0) out.emplace_back(x1, x2);
        }
    return out;
}

}  // namespace

TEST(CurveOracle, PointCountExamples) {
    EXPECT_EQ(curve_point_count({7, 0, 1}), 6u);
    EXPECT_EQ(curve_point_count({3, 0, 1}), brute_curve_points(3, 0, 1));
    EXPECT_EQ(hasse_gap({7, 0, 1}), -1);
    EXPECT_THROW(curve_point_count({7, 0, 0}), Error);
    EXPECT_THROW(curve_point_count({9, 0, 1}), Error);
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull})
        for (std::uint64_t b = 0; b < p; ++b)
            for (std::uint64_t l = 1; l < p; ++l) {
                const auto c = curve_point_count({p, b, l});
                ASSERT_EQ(c, brute_curve_points(p, b, l));
                ASSERT_LE(c, 2 * (p - 1));
            }
}

TEST(CurveOracle, TripleExamples) {
    EXPECT_EQ(triple_rep_count(7, 3, 0, 0), 6u);
    EXPECT_EQ(triple_rep_count(7, 3, 0, 0, Distinctness::Pairwise), 6u);
    EXPECT_EQ(repeated_coordinate_count(7, 3, 0, 0), 0u);
    const auto c = brute_triples(5, 2, 0, 3);
    EXPECT_EQ(repeated_coordinate_count(5, 2, 0, 3), c.all - c.distinct);
}

TEST(CurveOracle, TripleCountsMatchBruteForce) {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
        const auto g = numbertheory::primitive_root(p);
        const auto table = triple_rep_table(p, g);
        const auto dtable = triple_rep_table(p, g, Distinctness::Pairwise);
        for (std::uint64_t a = 0; a + 1 < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                const auto c = brute_triples(p, g, a, b);
                ASSERT_EQ(triple_rep_count(p, g, a, b), c.all);
                ASSERT_EQ(triple_rep_count(p, g, a, b, Distinctness::Pairwise), c.distinct);
                ASSERT_EQ(table[a * p + b], c.all);
                ASSERT_EQ(dtable[a * p + b], c.distinct);
            }
    }
}

TEST(CurveOracle, SolutionCountEqualsCurvePointsWithNonzeroV) {
    for (std::uint64_t p = 5; p <= 31; ++p) {
        if (!numbertheory::is_prime(p)) continue;
        const auto g = numbertheory::primitive_root(p);
        const numbertheory::DlogTable t(p, g);
        const auto table = triple_rep_table(p, g);
        for (std::uint64_t a = 0; a + 1 < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b)
                ASSERT_EQ(table[a * p + b], brute_curve_points(p, b, t.pow(a))) << p << " " << a << " " << b;
    }
}

TEST(CurveOracle, RepeatedCoordinatesAtMostNine) {
    for (std::uint64_t p = 5; p <= 31; ++p) {
        if (!numbertheory::is_prime(p)) continue;
        const auto g = numbertheory::primitive_root(p);
        for (std::uint64_t a = 0; a + 1 < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                const auto r = repeated_coordinate_count(p, g, a, b);
                ASSERT_LE(r, 9u);
                ASSERT_EQ(triple_rep_count(p, g, a, b, Distinctness::Pairwise), triple_rep_count(p, g, a, b) - r);
            }
    }
}

TEST(CurveOracle, FixedFourthSummandCorrectionAtMostSix) {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
        const auto g = numbertheory::primitive_root(p);
        for (std::uint64_t a = 0; a + 1 < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                const std::uint64_t shifted = (b + p - 1) % p;
                const auto three = triple_rep_count(p, g, a, shifted, Distinctness::Pairwise);
                const auto four = brute_fixed_four(p, g, a, b);
                const auto special = special_representation_count(p, g, a, shifted);
                ASSERT_EQ(three - four, special);
                ASSERT_LE(special, 6u);
            }
    }
}

TEST(CurveOracle, HasseGapWithinTolerance) {
    EXPECT_EQ(hasse_tolerance(7), 10);
    EXPECT_EQ(hasse_tolerance(101), 26);
    EXPECT_EQ(hasse_tolerance(121), 26);
    std::mt19937_64 rng(101);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 101; p <= 499; ++p)
        if (numbertheory::is_prime(p)) primes.push_back(p);
    for (int i = 0; i < 100; ++i) {
        const auto p = primes[rng() % primes.size()];
        const CurveParams cp{p, rng() % p, 1 + rng() % (p - 1)};
        ASSERT_LE(std::abs(hasse_gap(cp)), hasse_tolerance(p));
    }
}

TEST(CurveOracle, QuadricExamples) {
    const auto q = enumerate_quadric({7, 0, 1});
    const std::set<std::pair<std::uint64_t, std::uint64_t>> pts(q.points.begin(), q.points.end());
    EXPECT_TRUE(pts.count({0, 2}));
    EXPECT_TRUE(pts.count({0, 5}));
    for (const auto& [x1, x2] : pts) EXPECT_TRUE(pts.count({x2, x1}));
    EXPECT_THROW(enumerate_quadric({11, 0, 1}), Error);

    const auto q13 = enumerate_quadric({13, 1, 5});
    EXPECT_FALSE(q13.reducible);
    const auto tol = static_cast<std::size_t>(hasse_tolerance(13));
    EXPECT_GE(q13.points.size() + tol, 13u);
    EXPECT_LE(q13.points.size(), 13u + tol);
    // 6 * 9 = 54 = 2 (mod 13) = 2 * 1^2: two lines through one point.
    const auto lines = enumerate_quadric({13, 1, 9});
    EXPECT_TRUE(lines.reducible);
    EXPECT_EQ(lines.points.size(), 25u);
}

TEST(CurveOracle, QuadricMatchesBruteForce) {
    std::mt19937_64 rng(4);
    for (std::uint64_t p : {7ull, 13ull, 19ull, 31ull, 37ull, 43ull, 61ull, 67ull}) {
        for (int i = 0; i < 20; ++i) {
            const std::int64_t r1 = static_cast<std::int64_t>(rng() % 300) - 100;
            const std::int64_t r2 = static_cast<std::int64_t>(rng() % 300) - 100;
            const auto q = enumerate_quadric({p, r1, r2});
            ASSERT_EQ(q.points, brute_quadric(p, r1, r2)) << p << " " << r1 << " " << r2;
            const std::int64_t P = static_cast<std::int64_t>(p);
            ASSERT_EQ(q.reducible, (((6 * r2 - 2 * r1 * r1) % P) + P) % P == 0);
        }
    }
}

TEST(CurveOracle, TorusPoints) {
    const auto cloud = torus_points(QuadricParams{7, 0, 1});
    EXPECT_EQ(cloud.denominator, 7u);
    EXPECT_EQ(cloud.points.size(), enumerate_quadric({7, 0, 1}).points.size());
    EXPECT_NE(std::find(cloud.points.begin(), cloud.points.end(), std::array<std::uint64_t, 4>{0, 2, 0, 4}),
              cloud.points.end());
    for (const auto& pt : cloud.points)
        for (auto c : pt) EXPECT_LT(c, 7u);
}

TEST(CurveOracle, DyadicCoverage) {
    const auto empty = dyadic_box_coverage(TorusCloud{7, {}}, 1);
    EXPECT_EQ(empty.empty, 16u);
    EXPECT_EQ(empty.total, 16u);

    TorusCloud centers{4, {}};
    for (std::uint64_t i = 0; i < 16; ++i)
        centers.points.push_back({1 + 2 * (i & 1), 1 + 2 * (i >> 1 & 1), 1 + 2 * (i >> 2 & 1), 1 + 2 * (i >> 3 & 1)});
    const auto full = dyadic_box_coverage(centers, 1);
    EXPECT_EQ(full.empty, 0u);
    EXPECT_EQ(full.total, 16u);

    EXPECT_THROW(dyadic_box_coverage(centers, 0), Error);
}

TEST(CurveOracle, DyadicCoverageRegression) {
    // Values frozen from the first enumeration.
    EXPECT_EQ(dyadic_box_coverage(torus_points(QuadricParams{499, 3, 10}), 1).empty, 0u);
    EXPECT_EQ(dyadic_box_coverage(torus_points(QuadricParams{499, 3, 10}), 2).empty, 36u);
}

TEST(CurveOracle, CoverageNonIncreasingInP) {
    std::uint64_t previous = 16;
    for (std::uint64_t p : {103ull, 499ull, 1009ull, 4999ull}) {
        const auto cov = dyadic_box_coverage(torus_points(QuadricParams{p, 3, 10}), 1);
        EXPECT_LE(cov.empty, previous) << p;
        previous = cov.empty;
    }
}
