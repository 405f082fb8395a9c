#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "sidonkit/error.hpp"
#include "sidonkit/sunflower.hpp"

using namespace sidonkit;
using namespace sidonkit::sunflower;

namespace {

const std::vector<Tuple> kDisplay = {
    {7, 7, 1, 13, 8},
    {17, 7, 6, 6, 8},
    {8, 7, 18, 8, 8},
    {11, 7, 4, 5, 8},
};

std::vector<Tuple> random_family(std::mt19937_64& rng, std::size_t size, unsigned h, std::uint64_t max) {
    std::set<Tuple> fam;
    while (fam.size() < size) {
        Tuple t(h);
        for (auto& x : t) x = 1 + rng() % max;
        fam.insert(t);
    }
    std::vector<Tuple> out(fam.begin(), fam.end());
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

// Definition-level oracle over every k-subset and every type I of 2-tuples.
bool brute_has_sunflower(const std::vector<Tuple>& fam, std::size_t k) {
    const std::size_t m = fam.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        std::vector<Tuple> chosen;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) chosen.push_back(fam[i]);
        for (unsigned type = 0; type < 4; ++type) {
            bool ok = true;
            for (unsigned pos = 0; pos < 2; ++pos)
                if (type >> pos & 1)
                    for (const auto& x : chosen) ok = ok && x[pos] == chosen[0][pos];
            for (std::size_t a = 0; a < chosen.size() && ok; ++a)
                for (std::size_t b = a + 1; b < chosen.size() && ok; ++b)
                    for (unsigned p = 0; p < 2; ++p)
                        for (unsigned q = 0; q < 2; ++q)
                            if (!(type >> p & 1) && !(type >> q & 1) && chosen[a][p] == chosen[b][q]) ok = false;
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace

TEST(Sunflower, DefinitionExamples) {
    EXPECT_TRUE(is_vectorial_sunflower(kDisplay, {2, 5}));
    EXPECT_FALSE(is_vectorial_sunflower(kDisplay, {}));
    EXPECT_FALSE(is_vectorial_sunflower(kDisplay, {2}));
    EXPECT_TRUE(is_vectorial_sunflower({{1, 2}, {3, 4}}, {}));
    EXPECT_FALSE(is_vectorial_sunflower({{1, 2}, {1, 3}, {2, 3}}, {1}));
    EXPECT_FALSE(is_vectorial_sunflower({{1, 2}, {1, 2}}, {}));
    EXPECT_FALSE(is_vectorial_sunflower({{1, 2}, {3, 4}}, {3}));
}

TEST(Sunflower, SetEmbedding) {
    EXPECT_EQ(set_h_embed({3, 5}), (std::vector<std::uint64_t>{7, 12}));
    EXPECT_EQ(set_h_embed({1, 1, 1}), (std::vector<std::uint64_t>{4, 5, 6}));
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t a = 1; a <= 12; ++a)
        for (std::uint64_t b = 1; b <= 12; ++b)
            for (std::uint64_t c = 1; c <= 12; ++c) {
                const auto s = set_h_embed({a, b, c});
                ASSERT_EQ(s.size(), 3u);
                ASSERT_TRUE(seen.insert(s).second);
                for (auto v : s) {
                    const auto pos = (v - 1) % 3;
                    ASSERT_EQ((v - pos - 1) / 3, (Tuple{a, b, c})[pos]);
                }
            }
}

TEST(Sunflower, Bounds) {
    EXPECT_EQ(classical_bound(2, 3), 8u);
    EXPECT_EQ(vectorial_bound(2, 2), 72u);
    EXPECT_EQ(vectorial_bound(3, 2), 16464u);
    EXPECT_EQ(vectorial_bound(40, 1000), UINT64_MAX);
}

TEST(Sunflower, ClassicalExamples) {
    const auto disjoint = find_classical_sunflower({{1, 2}, {3, 4}, {5, 6}, {7, 8}}, 3);
    ASSERT_TRUE(disjoint);
    EXPECT_TRUE(disjoint->core.empty());
    EXPECT_EQ(disjoint->petal_indices.size(), 3u);

    std::vector<std::vector<std::uint64_t>> pairs;
    for (std::uint64_t a = 1; a <= 5; ++a)
        for (std::uint64_t b = a + 1; b <= 5; ++b) pairs.push_back({a, b});
    const auto found = find_classical_sunflower(pairs, 3);
    ASSERT_TRUE(found);
    EXPECT_EQ(found->core, (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(found->petal_indices, (std::vector<std::size_t>{0, 1, 2}));

    EXPECT_FALSE(find_classical_sunflower({{1, 2}}, 2));
    EXPECT_THROW(find_classical_sunflower({{1, 2}, {1}}, 2), Error);
}

TEST(Sunflower, ClassicalGuaranteeAndPetalStructure) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned h = 2 + trial % 2;
        const std::size_t k = 2 + trial % 3;
        const auto bound = classical_bound(h, k);
        std::set<std::vector<std::uint64_t>> fam;
        while (fam.size() <= bound) {
            std::set<std::uint64_t> s;
            while (s.size() < h) s.insert(1 + rng() % 30);
            fam.emplace(s.begin(), s.end());
        }
        const std::vector<std::vector<std::uint64_t>> sets(fam.begin(), fam.end());
        const auto found = find_classical_sunflower(sets, k);
        ASSERT_TRUE(found) << "h=" << h << " k=" << k;
        ASSERT_EQ(found->petal_indices.size(), k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                std::vector<std::uint64_t> meet;
                const auto& x = sets[found->petal_indices[a]];
                const auto& y = sets[found->petal_indices[b]];
                std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(meet));
                ASSERT_EQ(meet, found->core);
            }
    }
}

TEST(Sunflower, VectorialExamples) {
    const auto display = find_vectorial_sunflower(kDisplay, 4);
    ASSERT_TRUE(display);
    EXPECT_EQ(display->type_set, (std::vector<unsigned>{2, 5}));
    EXPECT_EQ(display->core_values, (std::vector<std::uint64_t>{7, 8}));
    EXPECT_TRUE(is_valid_certificate(kDisplay, *display));
    EXPECT_FALSE(find_vectorial_sunflower(std::vector<Tuple>{{1, 2}}, 2));
    EXPECT_FALSE(find_vectorial_sunflower(kDisplay, 4, {.exact_fallback = false}));
    EXPECT_THROW(find_vectorial_sunflower(std::vector<Tuple>{{1, 2}, {1, 2}}, 2), Error);
}

TEST(Sunflower, GuaranteePairsAboveBound) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 200; ++trial) {
        const auto fam = random_family(rng, 73, 2, 40);
        const auto cert = find_vectorial_sunflower(fam, 2, {.exact_fallback = false});
        ASSERT_TRUE(cert) << trial;
        ASSERT_TRUE(is_valid_certificate(fam, *cert));
    }
}

TEST(Sunflower, GuaranteeTriplesAboveBound) {
    std::mt19937_64 rng(16465);
    for (int trial = 0; trial < 20; ++trial) {
        const auto fam = random_family(rng, 16465, 3, 60);
        const auto t0 = std::chrono::steady_clock::now();
        const auto cert = find_vectorial_sunflower(fam, 2, {.exact_fallback = false});
        const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ASSERT_TRUE(cert) << trial;
        ASSERT_TRUE(is_valid_certificate(fam, *cert));
        ASSERT_LT(dt, 30.0);
    }
}

TEST(Sunflower, ConcentratedFamiliesAboveBound) {
    // Many tuples sharing a coordinate force a non-empty type.
    std::vector<Tuple> fam;
    for (std::uint64_t b = 1; b <= 80; ++b) fam.push_back({5, b});
    for (std::size_t k : {2u, 3u}) {
        const auto cert = find_vectorial_sunflower(fam, k, {.exact_fallback = false});
        ASSERT_TRUE(cert);
        EXPECT_TRUE(is_valid_certificate(fam, *cert));
    }
}

TEST(Sunflower, TinyFamiliesMatchExhaustiveOracle) {
    std::mt19937_64 rng(12);
    int found = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        const std::size_t m = 1 + rng() % 12;
        const auto fam = random_family(rng, m, 2, 4 + rng() % 5);
        const std::size_t k = 2 + rng() % 3;
        const auto cert = find_vectorial_sunflower(fam, k);
        ASSERT_EQ(cert.has_value(), brute_has_sunflower(fam, k)) << trial;
        if (cert) {
            ++found;
            ASSERT_EQ(cert->petal_indices.size(), k);
            ASSERT_TRUE(is_valid_certificate(fam, *cert));
        }
    }
    EXPECT_GT(found, 100);
    EXPECT_LT(found, 1400);
}
