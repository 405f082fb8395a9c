#include "sidonkit/sidoncore.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>

#include "sidonkit/convolution.hpp"
#include "sidonkit/error.hpp"
#include "sidonkit/numbertheory.hpp"

namespace sidonkit::sidoncore {

namespace nt = sidonkit::numbertheory;

ModSet erdos_turan_set(std::uint64_t p) {
    if (p < 3 || !nt::is_prime(p)) throw Error(ErrorKind::NotOddPrime, std::to_string(p));
    std::vector<std::uint64_t> out;
    out.reserve(p);
    for (std::uint64_t x = 0; x < p; ++x) out.push_back(x + (x * x % p) * 2 * p);
    return ModSet(2 * p * p, std::move(out));
}

ModSet ruzsa_set(std::uint64_t p, std::uint64_t g) {
    const nt::GeneratorPair pair(p, g);
    std::vector<std::uint64_t> out;
    out.reserve(p - 1);
    std::uint64_t power = 1;
    for (std::uint64_t x = 0; x + 1 < p; ++x) {
        out.push_back(nt::crt_flatten(x, power, p));
        power = nt::mul_mod(power, g, p);
    }
    return ModSet((p - 1) * p, std::move(out));
}

namespace {

struct PairSum {
    std::uint64_t sum;
    std::uint32_t i;
    std::uint32_t j;
    auto operator<=>(const PairSum&) const = default;
};

std::vector<PairSum> sorted_pair_sums(std::span<const std::uint64_t> elements, Ambient ambient) {
    std::vector<PairSum> sums;
    sums.reserve(elements.size() * (elements.size() + 1) / 2);
    for (std::uint32_t i = 0; i < elements.size(); ++i) {
        for (std::uint32_t j = i; j < elements.size(); ++j) {
            sums.push_back({ambient.reduce(elements[i] + elements[j]), i, j});
        }
    }
    std::sort(sums.begin(), sums.end());
    return sums;
}

}  // namespace

SidonWitness is_sidon(std::span<const std::uint64_t> elements, Ambient ambient) {
    const auto sums = sorted_pair_sums(elements, ambient);
    for (std::size_t k = 1; k < sums.size(); ++k) {
        if (sums[k].sum == sums[k - 1].sum) {
            const auto& a = sums[k - 1];
            const auto& b = sums[k];
            return {false, std::array{elements[a.i], elements[a.j], elements[b.i], elements[b.j]}};
        }
    }
    return {};
}

std::uint64_t b2g_bound(std::span<const std::uint64_t> elements, Ambient ambient) {
    const auto sums = sorted_pair_sums(elements, ambient);
    std::uint64_t best = 0;
    for (std::size_t k = 0; k < sums.size();) {
        std::size_t run = k;
        while (run < sums.size() && sums[run].sum == sums[k].sum) ++run;
        best = std::max<std::uint64_t>(best, run - k);
        k = run;
    }
    return best;
}

std::uint64_t RepProfile::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t RepProfile::max() const {
    return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> RepProfile::nonzero() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::size_t t = 0; t < counts.size(); ++t) {
        if (counts[t] != 0) out.emplace_back(t, counts[t]);
    }
    return out;
}

namespace {

// Nested enumeration over index tuples. Unordered: nondecreasing indices
// (strictly increasing when pairwise distinct). Ordered: every tuple, with
// repeated indices skipped when pairwise distinct is requested.
void brute_force(std::span<const std::uint64_t> elements, Ambient ambient, const ProfileRequest& req,
                 std::vector<std::uint64_t>& counts) {
    const std::size_t n = elements.size();
    const unsigned h = req.h;
    const bool pairwise = req.distinct == Distinctness::Pairwise;
    std::vector<std::size_t> idx(h, 0);
    std::vector<bool> used(n, false);

    std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned depth, std::uint64_t partial) {
        if (depth == h) {
            counts[ambient.reduce(partial)] += 1;
            return;
        }
        std::size_t start = 0;
        if (req.convention == Convention::Unordered && depth > 0) start = idx[depth - 1] + (pairwise ? 1 : 0);
        for (std::size_t i = start; i < n; ++i) {
            if (pairwise && req.convention == Convention::Ordered && used[i]) continue;
            idx[depth] = i;
            used[i] = true;
            rec(depth + 1, ambient.reduce(partial + elements[i]));
            used[i] = false;
        }
    };
    rec(0, 0);
}

}  // namespace

RepProfile rep_profile(std::span<const std::uint64_t> elements, Ambient ambient, const ProfileRequest& request) {
    if (request.h < 1) throw Error(ErrorKind::InvalidArgument, "h must be >= 1");
    if (ambient.is_cyclic() && ambient.modulus == 0) throw Error(ErrorKind::InvalidArgument, "cyclic modulus must be positive");

    RepProfile profile;
    profile.arity = request.h;
    profile.ambient = ambient;
    profile.convention = request.convention;
    profile.distinct = request.distinct;

    const bool convolvable = ambient.is_cyclic() && request.convention == Convention::Ordered &&
                             request.distinct == Distinctness::None &&
                             convolution::supports(ambient.modulus, request.h);
    Engine engine = request.engine;
    if (engine == Engine::Auto) engine = convolvable ? Engine::Convolution : Engine::BruteForce;

    if (engine == Engine::Convolution) {
        if (!convolvable) {
            throw Error(ErrorKind::EngineUnavailable,
                        "convolution engine needs cyclic mode, ordered tuples and no distinctness constraint");
        }
        std::vector<std::uint64_t> residues(elements.begin(), elements.end());
        for (auto& r : residues) r %= ambient.modulus;
        profile.counts = convolution::cyclic_power_counts(residues, ambient.modulus, request.h, request.threads);
        return profile;
    }

    std::size_t size = 0;
    if (ambient.is_cyclic()) {
        size = ambient.modulus;
    } else {
        const std::uint64_t top = elements.empty() ? 0 : *std::max_element(elements.begin(), elements.end());
        size = static_cast<std::size_t>(top * request.h + 1);
    }
    profile.counts.assign(size, 0);
    brute_force(elements, ambient, request, profile.counts);
    return profile;
}

BasisReport basis_order_check(const ModSet& set, unsigned h, Repetition repetition, unsigned threads) {
    ProfileRequest req;
    req.h = h;
    req.threads = threads;
    if (repetition == Repetition::Allowed) {
        req.convention = Convention::Ordered;
    } else {
        req.convention = Convention::Unordered;
        req.distinct = Distinctness::Pairwise;
    }
    const auto profile = rep_profile(set, req);
    BasisReport report;
    for (std::uint64_t t = 0; t < set.modulus(); ++t) {
        if (profile.count(t) == 0) report.uncovered.push_back(t);
    }
    report.basis = report.uncovered.empty();
    return report;
}

}  // namespace sidonkit::sidoncore
