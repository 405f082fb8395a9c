#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "sidonkit/error.hpp"
#include "sidonkit/numbertheory.hpp"
#include "sidonkit/sidoncore.hpp"

using namespace sidonkit;
using namespace sidonkit::sidoncore;

namespace {

std::vector<std::uint64_t> elems(const ModSet& s) { return {s.elements().begin(), s.elements().end()}; }

ModSet random_modset(std::mt19937_64& rng, std::uint64_t max_n, std::size_t max_size) {
    const std::uint64_t n = 1 + rng() % max_n;
    const std::size_t k = std::min<std::size_t>(n, rng() % (max_size + 1));
    std::set<std::uint64_t> chosen;
    while (chosen.size() < k) chosen.insert(rng() % n);
    return ModSet(n, {chosen.begin(), chosen.end()});
}

// Independent oracle: explicit loops over ordered tuples.
std::vector<std::uint64_t> ordered_oracle(const ModSet& s, unsigned h) {
    const auto e = elems(s);
    const auto n = s.modulus();
    std::vector<std::uint64_t> out(n, 0);
    if (h == 1) {
        for (auto a : e) out[a]++;
    } else if (h == 2) {
        for (auto a : e)
            for (auto b : e) out[(a + b) % n]++;
    } else {
        for (auto a : e)
            for (auto b : e)
                for (auto c : e) out[(a + b + c) % n]++;
    }
    return out;
}

}  // namespace

TEST(SidonCore, ErdosTuranExamples) {
    EXPECT_EQ(elems(erdos_turan_set(3)), (std::vector<std::uint64_t>{0, 7, 8}));
    EXPECT_EQ(elems(erdos_turan_set(5)), (std::vector<std::uint64_t>{0, 11, 14, 42, 43}));
    EXPECT_EQ(erdos_turan_set(5).modulus(), 50u);
    try {
        erdos_turan_set(2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotOddPrime);
    }
    EXPECT_THROW(erdos_turan_set(9), Error);
}

TEST(SidonCore, RuzsaExamples) {
    EXPECT_EQ(elems(ruzsa_set(5, 2)), (std::vector<std::uint64_t>{3, 14, 16, 17}));
    EXPECT_EQ(elems(ruzsa_set(3, 2)), (std::vector<std::uint64_t>{4, 5}));
    const auto s7 = ruzsa_set(7, 5);
    EXPECT_EQ(s7.size(), 6u);
    EXPECT_EQ(s7.modulus(), 42u);
    try {
        ruzsa_set(7, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotGenerator);
    }
}

TEST(SidonCore, IsSidonExamples) {
    EXPECT_TRUE(is_sidon(ModSet(7, {0, 1, 3})).sidon);
    const std::vector<std::uint64_t> four{1, 2, 3, 4};
    const auto w = is_sidon(four, Ambient::integer());
    ASSERT_FALSE(w.sidon);
    ASSERT_TRUE(w.collision.has_value());
    const auto [a, b, c, d] = *w.collision;
    EXPECT_EQ(a + b, c + d);
    EXPECT_NE(std::minmax(a, b), std::minmax(c, d));
    EXPECT_TRUE(is_sidon(std::vector<std::uint64_t>{}, Ambient::integer()).sidon);
    EXPECT_FALSE(is_sidon(std::vector<std::uint64_t>{}, Ambient::integer()).collision.has_value());
}

TEST(SidonCore, WitnessMembersComeFromTheSet) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_modset(rng, 300, 25);
        const auto w = is_sidon(s);
        ASSERT_EQ(w.sidon, !w.collision.has_value());
        if (!w.sidon) {
            const auto [a, b, c, d] = *w.collision;
            for (auto x : {a, b, c, d}) ASSERT_TRUE(s.contains(x));
            ASSERT_EQ((a + b) % s.modulus(), (c + d) % s.modulus());
            ASSERT_NE(std::minmax(a, b), std::minmax(c, d));
        }
    }
}

TEST(SidonCore, B2gBoundExamples) {
    EXPECT_EQ(b2g_bound(std::vector<std::uint64_t>{1, 2, 3, 4}, Ambient::integer()), 2u);
    EXPECT_EQ(b2g_bound(std::vector<std::uint64_t>{}, Ambient::integer()), 0u);
    const auto et = erdos_turan_set(11);
    EXPECT_EQ(b2g_bound(et.elements(), Ambient::integer()), 1u);
}

TEST(SidonCore, B2gMatchesUnorderedPairProfileMax) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_modset(rng, 200, 20);
        const auto profile = rep_profile(s, {.h = 2, .convention = Convention::Unordered});
        ASSERT_EQ(b2g_bound(s.elements(), Ambient::cyclic(s.modulus())), profile.max());
        ASSERT_EQ(is_sidon(s).sidon, profile.max() <= 1);
    }
}

TEST(SidonCore, ErdosTuranSidonUpTo211) {
    for (std::uint64_t p = 3; p <= 211; p += 2) {
        if (!numbertheory::is_prime(p)) continue;
        const auto s = erdos_turan_set(p);
        ASSERT_EQ(s.size(), p);
        ASSERT_LT(s.elements().back(), 2 * p * p);
        ASSERT_TRUE(is_sidon(s.elements(), Ambient::integer()).sidon) << p;
    }
}

TEST(SidonCore, RuzsaSidonUpTo61) {
    for (std::uint64_t p = 3; p <= 61; ++p) {
        if (!numbertheory::is_prime(p)) continue;
        const auto s = ruzsa_set(p, numbertheory::primitive_root(p));
        ASSERT_EQ(s.size(), p - 1);
        ASSERT_TRUE(is_sidon(s).sidon) << p;
    }
}

TEST(SidonCore, ErdosTuranEmbedsIntoLargeCyclicGroups) {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 13ull, 31ull}) {
        const auto s = erdos_turan_set(p);
        for (std::uint64_t N : {4 * p * p + 1, 4 * p * p + 7, 5 * p * p}) {
            ASSERT_TRUE(is_sidon(s.reinterpret(N)).sidon) << p << " " << N;
        }
    }
}

TEST(SidonCore, RepProfileExamples) {
    const ModSet s(7, {0, 1, 3});
    const auto ordered = rep_profile(s, {.h = 2, .convention = Convention::Ordered, .engine = Engine::BruteForce});
    EXPECT_EQ(ordered.counts, (std::vector<std::uint64_t>{1, 2, 1, 2, 2, 0, 1}));
    EXPECT_EQ(ordered.total(), 9u);

    const auto identity = rep_profile(s, {.h = 1});
    EXPECT_EQ(identity.counts, (std::vector<std::uint64_t>{1, 1, 0, 1, 0, 0, 0}));

    const auto triples = rep_profile(s, {.h = 3, .convention = Convention::Unordered});
    EXPECT_EQ(triples.total(), 10u);
}

TEST(SidonCore, RepProfileTotalsFollowConvention) {
    std::mt19937_64 rng(17);
    auto binom = [](std::uint64_t n, std::uint64_t k) {
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_modset(rng, 500, 15);
        const std::uint64_t k = s.size();
        for (unsigned h = 1; h <= 3; ++h) {
            auto total = [&](Convention c, Distinctness d) {
                return rep_profile(s, {.h = h, .convention = c, .distinct = d, .engine = Engine::BruteForce}).total();
            };
            std::uint64_t falling = 1;
            for (unsigned i = 0; i < h; ++i) falling *= (k >= i ? k - i : 0);
            std::uint64_t power = 1;
            for (unsigned i = 0; i < h; ++i) power *= k;
            ASSERT_EQ(total(Convention::Unordered, Distinctness::None), binom(k + h - 1, h));
            ASSERT_EQ(total(Convention::Ordered, Distinctness::None), power);
            ASSERT_EQ(total(Convention::Unordered, Distinctness::Pairwise), k >= h ? binom(k, h) : 0);
            ASSERT_EQ(total(Convention::Ordered, Distinctness::Pairwise), falling);
        }
    }
}

TEST(SidonCore, IntegerModeProfile) {
    const std::vector<std::uint64_t> a{1, 2, 4};
    const auto prof = rep_profile(a, Ambient::integer(), {.h = 2, .convention = Convention::Unordered});
    // sums: 2,3,4,5,6,8
    const std::map<std::uint64_t, std::uint64_t> expected{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {8, 1}};
    for (std::uint64_t t = 0; t < 10; ++t) {
        EXPECT_EQ(prof.count(t), expected.count(t) ? expected.at(t) : 0u) << t;
    }
}

TEST(SidonCore, EnginesAgreeWithIndependentOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_modset(rng, 2000, 60);
        for (unsigned h : {1u, 2u, 3u}) {
            const auto brute = rep_profile(s, {.h = h, .convention = Convention::Ordered, .engine = Engine::BruteForce});
            const auto conv = rep_profile(s, {.h = h, .convention = Convention::Ordered, .engine = Engine::Convolution});
            ASSERT_EQ(brute.counts, conv.counts) << "trial " << trial << " h=" << h;
            if (h <= 3 && s.size() <= 30) ASSERT_EQ(conv.counts, ordered_oracle(s, h));
        }
    }
}

TEST(SidonCore, ConvolutionThreadCountDoesNotChangeResult) {
    std::mt19937_64 rng(3);
    const auto s = random_modset(rng, 5000, 200);
    const auto one = rep_profile(s, {.h = 3, .convention = Convention::Ordered, .threads = 1});
    const auto four = rep_profile(s, {.h = 3, .convention = Convention::Ordered, .threads = 4});
    EXPECT_EQ(one.counts, four.counts);
}

TEST(SidonCore, ConvolutionPowerOfTwoModulus) {
    std::mt19937_64 rng(9);
    std::set<std::uint64_t> chosen;
    while (chosen.size() < 40) chosen.insert(rng() % 1024);
    const ModSet s(1024, {chosen.begin(), chosen.end()});
    const auto conv = rep_profile(s, {.h = 3, .convention = Convention::Ordered, .engine = Engine::Convolution});
    EXPECT_EQ(conv.counts, ordered_oracle(s, 3));
}

TEST(SidonCore, ConvolutionEngineRejectsUnsupportedConventions) {
    const ModSet s(7, {0, 1, 3});
    try {
        rep_profile(s, {.h = 2, .convention = Convention::Unordered, .engine = Engine::Convolution});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EngineUnavailable);
    }
    EXPECT_THROW(rep_profile(std::vector<std::uint64_t>{1, 2}, Ambient::integer(),
                             {.h = 2, .convention = Convention::Ordered, .engine = Engine::Convolution}),
                 Error);
    EXPECT_THROW(rep_profile(s, {.h = 2, .convention = Convention::Ordered, .distinct = Distinctness::Pairwise,
                                 .engine = Engine::Convolution}),
                 Error);
}

TEST(SidonCore, BasisOrderExamples) {
    const ModSet s(7, {0, 1, 3});
    const auto h2 = basis_order_check(s, 2, Repetition::Allowed);
    EXPECT_FALSE(h2.basis);
    EXPECT_EQ(h2.uncovered, (std::vector<std::uint64_t>{5}));
    EXPECT_TRUE(basis_order_check(s, 3, Repetition::Allowed).basis);
    EXPECT_TRUE(basis_order_check(ModSet::full(9), 1, Repetition::Allowed).basis);
    // With distinct summands only 0+1+3 = 4 is available.
    const auto distinct = basis_order_check(s, 3, Repetition::Forbidden);
    EXPECT_FALSE(distinct.basis);
    EXPECT_EQ(distinct.uncovered.size(), 6u);
}

TEST(SidonCore, NoSmallSidonBasisOfOrderTwo) {
    for (std::uint64_t n = 4; n <= 12; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            if (__builtin_popcountll(mask) < 2) continue;
            std::vector<std::uint64_t> e;
            for (std::uint64_t i = 0; i < n; ++i)
                if (mask >> i & 1) e.push_back(i);
            const ModSet s(n, e);
            if (!is_sidon(s).sidon) continue;
            ASSERT_FALSE(basis_order_check(s, 2, Repetition::Allowed).basis) << "N=" << n << " mask=" << mask;
        }
    }
}
