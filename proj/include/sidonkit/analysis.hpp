#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sidonkit/deletionlab.hpp"
#include "sidonkit/rational.hpp"
#include "sidonkit/types.hpp"

namespace sidonkit::analysis {

enum class Precision { Double, Extended };

/// Parameters of the two-variable power sums.
struct SumSpec {
    Rational alpha{7, 11};
    Rational beta{7, 11};
    std::uint64_t n = 1;
    std::uint64_t m = 0;
    long double tail_tolerance = 1e-9L;  // tau only
};

/// sum over x, y > m with x + y = n of x^-alpha y^-beta. Zero when n <= 2m + 1.
long double sigma(const SumSpec& spec, Precision precision = Precision::Extended);

struct SeriesValue {
    long double value = 0;
    long double error_bound = 0;  // |value - true sum| <= error_bound
    std::uint64_t cutoff = 0;     // terms summed directly
};

/// sum over x, y > m with x - y = n. The terms are convex and decreasing in y,
/// so the tail past the cutoff Y lies between I(Y) - f(Y)/2 and I(Y + 1/2),
/// where I is the tail integral (an incomplete beta function).
/// Throws NonConvergent when alpha + beta <= 1, InvalidArgument when n = 0 or beta >= 1.
SeriesValue tau(const SumSpec& spec, Precision precision = Precision::Extended);
SeriesValue tau_with_cutoff(const SumSpec& spec, std::uint64_t cutoff);
/// Y^(1-alpha-beta) / (alpha + beta - 1): the cruder majorant of the tail past Y.
long double tau_tail_majorant(const Rational& alpha, const Rational& beta, std::uint64_t cutoff);

/// 2/3 + eps / (9 + 9 eps).
Rational gamma_for_epsilon(const Rational& eps);

/// `points` log-spaced integers in [lo, hi], deduplicated, always containing lo and hi.
std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi, std::size_t points);

struct GridPoint {
    std::uint64_t n = 0;  // (a, b) for the three-factor series
    std::uint64_t m = 0;
    long double value = 0;
    long double normalized = 0;
};

struct RatioReport {
    std::string label;
    long double exponent = 0;  // normalized = value * scale^exponent
    std::vector<GridPoint> points;
    long double sup = 0;
    long double inf = 0;  // over points with a positive value
};

struct LemmaAbReport {
    RatioReport sigma;  // value * (n + m)^(alpha + beta - 1)
    RatioReport tau;
};

LemmaAbReport check_lemma_ab(const Rational& alpha, const Rational& beta, const std::vector<std::uint64_t>& ns,
                             const std::vector<std::uint64_t>& ms, long double tail_tolerance = 1e-9L);

/// sum_{x >= 1} x^-g (x + a)^-g (x + b)^(1 - 2g) with a certified tail.
/// Throws NonConvergent when 4g - 1 <= 1, InvalidArgument unless g < 1 and a, b >= 1.
SeriesValue abab_series(const Rational& gamma, std::uint64_t a, std::uint64_t b, long double tolerance = 1e-7L);

/// Ratio series / (ab)^(1 - 2g) for every pair in both orientations.
RatioReport check_lemma_abab(const Rational& gamma, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                             long double tolerance = 1e-7L);

/// Expected |Q_n(A)| in the untruncated model: a sum over unordered triples with
/// sum n, admissible and pairwise incongruent mod N (no residue condition when N = 1).
long double exact_expectation_Q(std::uint64_t n, const SampleConfig& cfg);

/// Sum over ordered pairs of distinct members of Q_n sharing an element of the
/// probability that both lie in A. Such pairs share exactly one element.
long double exact_delta_Q(std::uint64_t n, const SampleConfig& cfg);

/// value * n^(3 gamma - 2) for the expectation, value * n^(5 gamma - 3) for delta.
RatioReport expectation_Q_report(const std::vector<std::uint64_t>& ns, const SampleConfig& cfg);
RatioReport delta_Q_report(const std::vector<std::uint64_t>& ns, const SampleConfig& cfg);

struct McRow {
    std::int64_t target = 0;
    long double mean = 0;
    long double stderr_ = 0;
    long double normalized = 0;  // mean * (target + m)^exponent
};

struct McRequest {
    deletionlab::FamilyKind kind = deletionlab::FamilyKind::Q;
    std::vector<std::int64_t> targets;
    SampleConfig cfg;               // cfg.seed is replaced by derive_seed(master_seed, trial)
    std::size_t trials = 50;
    std::uint64_t master_seed = 0;
    std::optional<Rational> epsilon;  // R and B
    long double exponent = 0;        // normalization only
    unsigned threads = 1;
};

/// counts[t][i] = |family(A_i)| for target t and trial i. Independent of threads.
std::vector<std::vector<std::uint64_t>> monte_carlo_counts(const McRequest& req);
std::vector<McRow> monte_carlo_family_mean(const McRequest& req);

/// Lower-tail check P(|Q_n| <= mu/2) <= exp(-mu/12) against sampled sequences.
struct TailShadow {
    std::uint64_t n = 0;
    std::size_t trials = 0;
    long double mu = 0;
    long double delta = 0;
    long double frequency = 0;
    long double bound = 0;
    long double stderr_ = 0;  // binomial standard error of the frequency
    bool applicable = false;  // delta < mu
    bool holds = false;       // frequency <= bound + 3 stderr
};

TailShadow janson_shadow(std::uint64_t n, const SampleConfig& cfg, std::size_t trials, std::uint64_t master_seed,
                         unsigned threads = 1);

}  // namespace sidonkit::analysis
