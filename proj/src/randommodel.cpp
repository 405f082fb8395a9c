#include "sidonkit/randommodel.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "sidonkit/error.hpp"

namespace sidonkit::randommodel {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

long double power_weight(std::uint64_t x, long double gamma) {
    return std::exp(-gamma * std::log(static_cast<long double>(x)));
}

// Admissible x in [lo, hi] in ascending order.
template <class F>
void for_each_admissible(const SampleConfig& cfg, std::uint64_t lo, std::uint64_t hi, F&& f) {
    lo = std::max(lo, cfg.m + 1);
    lo = std::max<std::uint64_t>(lo, 1);
    if (lo > hi) return;
    const std::uint64_t N = cfg.modulus();
    if (N == 1) {
        for (std::uint64_t x = lo; x <= hi; ++x) f(x);
        return;
    }
    const auto residues = cfg.residues.elements();
    std::uint64_t base = lo - lo % N;
    for (; base <= hi; base += N) {
        for (auto r : residues) {
            const std::uint64_t x = base + r;
            if (x < lo) continue;
            if (x > hi) return;
            f(x);
        }
    }
}

}  // namespace

double uniform(std::uint64_t seed, std::uint64_t x) noexcept {
    const std::uint64_t z = mix64(mix64(seed + kGolden) ^ (x * kGolden));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index + 1));
}

long double inclusion_probability(std::uint64_t x, const SampleConfig& cfg) {
    if (x == 0) throw Error(ErrorKind::RangeError, "x must be positive");
    if (x <= cfg.m || !cfg.residues.contains(x % cfg.modulus())) return 0;
    return power_weight(x, cfg.gamma.value());
}

IntSeq sample_sequence(const SampleConfig& cfg, unsigned threads) {
    cfg.validate();
    const long double gamma = cfg.gamma.value();
    // x^-gamma is decreasing, so within a block [a, b] the weights lie in
    // [w(b), w(a)] and the exact weight is needed only when u falls in between.
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> out;
        constexpr std::uint64_t kBlock = 256;
        for (std::uint64_t a = lo; a <= hi; a += kBlock) {
            const std::uint64_t b = std::min(hi, a + kBlock - 1);
            const long double w_hi = power_weight(a, gamma);
            const long double w_lo = power_weight(b, gamma);
            for_each_admissible(cfg, a, b, [&](std::uint64_t x) {
                const auto u = static_cast<long double>(uniform(cfg.seed, x));
                if (u >= w_hi) return;
                if (u < w_lo || u < power_weight(x, gamma)) out.push_back(x);
            });
            if (b == hi) break;
        }
        return out;
    };

    std::vector<std::uint64_t> elements;
    threads = std::max(1u, threads);
    if (threads == 1 || cfg.horizon < 4096) {
        elements = run(1, cfg.horizon);
    } else {
        std::vector<std::vector<std::uint64_t>> parts(threads);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = cfg.horizon / threads + 1;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = 1 + t * chunk;
            const std::uint64_t hi = std::min(cfg.horizon, lo + chunk - 1);
            workers.emplace_back([&, t, lo, hi] { parts[t] = run(lo, hi); });
        }
        for (auto& w : workers) w.join();
        for (auto& part : parts) elements.insert(elements.end(), part.begin(), part.end());
    }
    return IntSeq(std::move(elements), cfg.horizon, cfg);
}

Expectation expected_count(const SampleConfig& cfg, std::uint64_t lo, std::uint64_t hi) {
    cfg.validate();
    if (lo == 0) lo = 1;
    if (hi > cfg.horizon) throw Error(ErrorKind::RangeError, "range exceeds horizon");
    Expectation e;
    const long double gamma = cfg.gamma.value();
    for_each_admissible(cfg, lo, hi, [&](std::uint64_t x) {
        const long double q = power_weight(x, gamma);
        e.mean += q;
        e.variance += q * (1 - q);
    });
    return e;
}

}  // namespace sidonkit::randommodel
