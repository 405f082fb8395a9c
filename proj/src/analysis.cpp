#include "sidonkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "sidonkit/error.hpp"
#include "sidonkit/randommodel.hpp"

namespace sidonkit::analysis {

namespace {

template <class T>
T power(T x, T e) {
    return std::exp(e * std::log(x));
}

template <class T>
T sigma_sum(const SumSpec& s) {
    const T a = static_cast<T>(s.alpha.value());
    const T b = static_cast<T>(s.beta.value());
    T total = 0;
    for (std::uint64_t x = s.m + 1; x + s.m + 1 <= s.n; ++x) {
        const auto y = s.n - x;
        total += std::exp(-a * std::log(static_cast<T>(x)) - b * std::log(static_cast<T>(y)));
    }
    return total;
}

void check_tau(const SumSpec& s) {
    if (s.alpha + s.beta <= Rational(1)) throw Error(ErrorKind::NonConvergent, "alpha + beta must exceed 1");
    if (s.n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (s.beta >= Rational(1) || s.alpha >= Rational(1))
        throw Error(ErrorKind::InvalidArgument, "alpha and beta must be below 1");
    if (!(s.tail_tolerance > 0)) throw Error(ErrorKind::InvalidArgument, "tail tolerance must be positive");
}

long double tau_term(const SumSpec& s, std::uint64_t y) {
    const long double a = s.alpha.value();
    const long double b = s.beta.value();
    return std::exp(-a * std::log(static_cast<long double>(y + s.n)) - b * std::log(static_cast<long double>(y)));
}

// Integral of (y + n)^-alpha y^-beta over [z, inf). With u = n / (y + n) it is
// n^(1 - s) B_u0(s - 1, 1 - beta), u0 = n / (z + n), s = alpha + beta.
long double tau_tail_integral(const SumSpec& s, long double z) {
    const long double a = s.alpha.value();
    const long double b = s.beta.value();
    const long double n = static_cast<long double>(s.n);
    const long double u0 = n / (z + n);
    return std::pow(n, 1 - a - b) * boost::math::beta(a + b - 1, 1 - b, u0);
}

struct Bracket {
    long double value;
    long double error;
};

Bracket tau_tail(const SumSpec& s, std::uint64_t cutoff) {
    const long double z = static_cast<long double>(cutoff);
    const long double lo = tau_tail_integral(s, z) - tau_term(s, cutoff) / 2;
    const long double hi = tau_tail_integral(s, z + 0.5L);
    return {(lo + hi) / 2, (hi - lo) / 2};
}

long double abab_term(long double g, long double a, long double b, long double x) {
    return std::exp(-g * std::log(x) - g * std::log(x + a) + (1 - 2 * g) * std::log(x + b));
}

// Tail of the three-factor series past X, with f(x) <= x^-t and
// f(x) >= x^-t (1 - c/x), c = g a + (2g - 1) b, t = 4g - 1.
Bracket abab_tail(long double g, long double a, long double b, long double X) {
    const long double t = 4 * g - 1;
    const long double c = g * a + (2 * g - 1) * b;
    const long double hi = std::pow(X + 0.5L, 1 - t) / (t - 1);
    const long double lo = std::pow(X, 1 - t) / (t - 1) - std::pow(X, -t) / 2 - c * std::pow(X, -t) / t;
    return {(lo + hi) / 2, (hi - lo) / 2};
}

void finish(RatioReport& r) {
    bool any = false;
    for (const auto& p : r.points) {
        r.sup = std::max(r.sup, p.normalized);
        if (p.value > 0) {
            r.inf = any ? std::min(r.inf, p.normalized) : p.normalized;
            any = true;
        }
    }
}

struct Admissible {
    std::vector<std::uint64_t> xs;   // ascending
    std::vector<long double> q;      // indexed by x, 0 if not admissible
};

Admissible admissible_upto(std::uint64_t n, const SampleConfig& cfg) {
    Admissible a;
    a.q.assign(n + 1, 0);
    for (std::uint64_t x = cfg.m + 1; x <= n; ++x) {
        const long double q = randommodel::inclusion_probability(x, cfg);
        if (q > 0) {
            a.q[x] = q;
            a.xs.push_back(x);
        }
    }
    return a;
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t)
        workers.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) f(i);
        });
    for (auto& w : workers) w.join();
}

}  // namespace

long double sigma(const SumSpec& spec, Precision precision) {
    if (spec.n <= 2 * spec.m + 1) return 0;
    if (precision == Precision::Double) return sigma_sum<double>(spec);
    return sigma_sum<long double>(spec);
}

SeriesValue tau_with_cutoff(const SumSpec& spec, std::uint64_t cutoff) {
    check_tau(spec);
    cutoff = std::max(cutoff, spec.m + 1);
    long double partial = 0;
    for (std::uint64_t y = spec.m + 1; y <= cutoff; ++y) partial += tau_term(spec, y);
    const auto tail = tau_tail(spec, cutoff);
    return {partial + tail.value, tail.error, cutoff};
}

SeriesValue tau(const SumSpec& spec, Precision precision) {
    check_tau(spec);
    std::uint64_t cutoff = std::max<std::uint64_t>(spec.m + 1, 64);
    long double partial = 0;
    std::uint64_t done = spec.m;
    for (;;) {
        for (std::uint64_t y = done + 1; y <= cutoff; ++y)
            partial += precision == Precision::Double
                           ? static_cast<long double>(static_cast<double>(tau_term(spec, y)))
                           : tau_term(spec, y);
        done = cutoff;
        const auto tail = tau_tail(spec, cutoff);
        if (tail.error <= spec.tail_tolerance) return {partial + tail.value, tail.error, cutoff};
        if (cutoff > (1ull << 40)) throw Error(ErrorKind::NonConvergent, "tail tolerance not reachable");
        cutoff *= 2;
    }
}

long double tau_tail_majorant(const Rational& alpha, const Rational& beta, std::uint64_t cutoff) {
    const long double s = (alpha + beta).value();
    if (s <= 1) throw Error(ErrorKind::NonConvergent, "alpha + beta must exceed 1");
    return std::pow(static_cast<long double>(cutoff), 1 - s) / (s - 1);
}

Rational gamma_for_epsilon(const Rational& eps) {
    return Rational(2, 3) + eps / (Rational(9) + Rational(9) * eps);
}

std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi, std::size_t points) {
    if (lo == 0 || lo > hi) throw Error(ErrorKind::InvalidArgument, "grid needs 0 < lo <= hi");
    std::vector<std::uint64_t> out{lo};
    if (points >= 2) {
        const long double step = std::log(static_cast<long double>(hi) / lo) / (points - 1);
        for (std::size_t i = 1; i + 1 < points; ++i)
            out.push_back(static_cast<std::uint64_t>(std::llround(lo * std::exp(step * i))));
    }
    out.push_back(hi);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LemmaAbReport check_lemma_ab(const Rational& alpha, const Rational& beta, const std::vector<std::uint64_t>& ns,
                             const std::vector<std::uint64_t>& ms, long double tail_tolerance) {
    LemmaAbReport r;
    const long double e = (alpha + beta - Rational(1)).value();
    r.sigma.label = "sigma " + alpha.str() + "," + beta.str();
    r.tau.label = "tau " + alpha.str() + "," + beta.str();
    r.sigma.exponent = r.tau.exponent = e;
    for (auto m : ms)
        for (auto n : ns) {
            const SumSpec spec{alpha, beta, n, m, tail_tolerance};
            const long double scale = std::pow(static_cast<long double>(n + m), e);
            const long double s = sigma(spec);
            r.sigma.points.push_back({n, m, s, s * scale});
            const long double t = tau(spec).value;
            r.tau.points.push_back({n, m, t, t * scale});
        }
    finish(r.sigma);
    finish(r.tau);
    return r;
}

SeriesValue abab_series(const Rational& gamma, std::uint64_t a, std::uint64_t b, long double tolerance) {
    if (Rational(4) * gamma - Rational(1) <= Rational(1))
        throw Error(ErrorKind::NonConvergent, "4 gamma - 1 must exceed 1");
    if (gamma >= Rational(1)) throw Error(ErrorKind::InvalidArgument, "gamma must be below 1");
    if (a == 0 || b == 0) throw Error(ErrorKind::InvalidArgument, "a and b must be positive");
    const long double g = gamma.value();
    const long double la = static_cast<long double>(a);
    const long double lb = static_cast<long double>(b);
    // The first-order lower bound needs X >= g a and X >= (2g - 1) b.
    std::uint64_t cutoff = std::max<std::uint64_t>(1024, 2 * std::max(a, b));
    long double partial = 0;
    std::uint64_t done = 0;
    for (;;) {
        for (std::uint64_t x = done + 1; x <= cutoff; ++x) partial += abab_term(g, la, lb, static_cast<long double>(x));
        done = cutoff;
        const auto tail = abab_tail(g, la, lb, static_cast<long double>(cutoff));
        if (tail.error <= tolerance) return {partial + tail.value, tail.error, cutoff};
        if (cutoff > (1ull << 36)) throw Error(ErrorKind::NonConvergent, "tolerance not reachable");
        cutoff *= 2;
    }
}

RatioReport check_lemma_abab(const Rational& gamma, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                             long double tolerance) {
    RatioReport r;
    r.label = "abab " + gamma.str();
    r.exponent = (Rational(2) * gamma - Rational(1)).value();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> all;
    for (auto [a, b] : pairs) {
        all.emplace_back(a, b);
        if (a != b) all.emplace_back(b, a);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (auto [a, b] : all) {
        const long double v = abab_series(gamma, a, b, tolerance).value;
        const long double scale = std::pow(static_cast<long double>(a) * static_cast<long double>(b), r.exponent);
        r.points.push_back({a, b, v, v * scale});
    }
    finish(r);
    return r;
}

long double exact_expectation_Q(std::uint64_t n, const SampleConfig& cfg) {
    cfg.validate();
    if (n <= 3 * cfg.m + 3) return 0;
    const auto adm = admissible_upto(n, cfg);
    const std::uint64_t N = cfg.modulus();
    long double total = 0;
    const auto& xs = adm.xs;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto x1 = xs[i];
        if (3 * x1 + 3 > n) break;
        long double inner = 0;
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const auto x2 = xs[j];
            if (x1 + 2 * x2 >= n) break;
            const auto x3 = n - x1 - x2;
            const long double q3 = adm.q[x3];
            if (q3 == 0) continue;
            if (N > 1) {
                const auto r1 = x1 % N, r2 = x2 % N, r3 = x3 % N;
                if (r1 == r2 || r1 == r3 || r2 == r3) continue;
            }
            inner += adm.q[x2] * q3;
        }
        total += adm.q[x1] * inner;
    }
    return total;
}

long double exact_delta_Q(std::uint64_t n, const SampleConfig& cfg) {
    cfg.validate();
    if (n <= 3 * cfg.m + 3) return 0;
    const auto adm = admissible_upto(n, cfg);
    const std::uint64_t N = cfg.modulus();
    long double total = 0;
    for (auto x : adm.xs) {
        if (x >= n) break;
        const std::uint64_t rest = n - x;
        long double s1 = 0;
        long double s2 = 0;
        for (auto y : adm.xs) {
            if (2 * y >= rest) break;
            const auto z = rest - y;
            if (y == x || z == x || adm.q[z] == 0) continue;
            if (N > 1) {
                const auto rx = x % N, ry = y % N, rz = z % N;
                if (rx == ry || rx == rz || ry == rz) continue;
            }
            const long double w = adm.q[y] * adm.q[z];
            s1 += w;
            s2 += w * w;
        }
        total += adm.q[x] * (s1 * s1 - s2);
    }
    return total;
}

RatioReport expectation_Q_report(const std::vector<std::uint64_t>& ns, const SampleConfig& cfg) {
    RatioReport r;
    r.label = "expectation Q gamma=" + cfg.gamma.str();
    r.exponent = (Rational(3) * cfg.gamma - Rational(2)).value();
    for (auto n : ns) {
        const long double v = exact_expectation_Q(n, cfg);
        r.points.push_back({n, cfg.m, v, v * std::pow(static_cast<long double>(n), r.exponent)});
    }
    finish(r);
    return r;
}

RatioReport delta_Q_report(const std::vector<std::uint64_t>& ns, const SampleConfig& cfg) {
    RatioReport r;
    r.label = "delta Q gamma=" + cfg.gamma.str();
    r.exponent = (Rational(5) * cfg.gamma - Rational(3)).value();
    for (auto n : ns) {
        const long double v = exact_delta_Q(n, cfg);
        r.points.push_back({n, cfg.m, v, v * std::pow(static_cast<long double>(n), r.exponent)});
    }
    finish(r);
    return r;
}

std::vector<std::vector<std::uint64_t>> monte_carlo_counts(const McRequest& req) {
    if (req.trials < 2) throw Error(ErrorKind::InvalidArgument, "at least two trials are required");
    req.cfg.validate();
    std::vector<std::vector<std::uint64_t>> counts(req.targets.size(), std::vector<std::uint64_t>(req.trials));
    parallel_for(req.trials, req.threads, [&](std::size_t i) {
        SampleConfig cfg = req.cfg;
        cfg.seed = randommodel::derive_seed(req.master_seed, i);
        const auto A = randommodel::sample_sequence(cfg);
        for (std::size_t t = 0; t < req.targets.size(); ++t) {
            const deletionlab::FamilySpec spec{req.kind, req.targets[t], cfg.modulus(), req.epsilon};
            counts[t][i] = deletionlab::enumerate_family(A, spec).size();
        }
    });
    return counts;
}

std::vector<McRow> monte_carlo_family_mean(const McRequest& req) {
    const auto counts = monte_carlo_counts(req);
    std::vector<McRow> rows;
    for (std::size_t t = 0; t < req.targets.size(); ++t) {
        long double sum = 0;
        for (auto c : counts[t]) sum += c;
        const long double mean = sum / req.trials;
        long double ss = 0;
        for (auto c : counts[t]) ss += (c - mean) * (c - mean);
        const long double sd = std::sqrt(ss / (req.trials - 1));
        const long double shift = static_cast<long double>(req.targets[t]) + static_cast<long double>(req.cfg.m);
        rows.push_back({req.targets[t], mean, sd / std::sqrt(static_cast<long double>(req.trials)),
                        mean * std::pow(std::max(shift, 1.0L), req.exponent)});
    }
    return rows;
}

TailShadow janson_shadow(std::uint64_t n, const SampleConfig& cfg, std::size_t trials, std::uint64_t master_seed,
                         unsigned threads) {
    TailShadow s;
    s.n = n;
    s.trials = trials;
    s.mu = exact_expectation_Q(n, cfg);
    s.delta = exact_delta_Q(n, cfg);
    McRequest req;
    req.kind = deletionlab::FamilyKind::Q;
    req.targets = {static_cast<std::int64_t>(n)};
    req.cfg = cfg;
    req.trials = trials;
    req.master_seed = master_seed;
    req.threads = threads;
    const auto counts = monte_carlo_counts(req).front();
    std::size_t low = 0;
    for (auto c : counts)
        if (static_cast<long double>(c) <= s.mu / 2) ++low;
    s.frequency = static_cast<long double>(low) / trials;
    s.bound = std::exp(-s.mu / 12);
    s.stderr_ = std::sqrt(s.bound * (1 - s.bound) / trials);
    s.applicable = s.delta < s.mu;
    s.holds = s.frequency <= s.bound + 3 * s.stderr_;
    return s;
}

}  // namespace sidonkit::analysis
