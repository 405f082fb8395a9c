#include "sidonkit/deletionlab.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "sidonkit/error.hpp"

namespace sidonkit::deletionlab {

std::string_view to_string(FamilyKind kind) noexcept {
    switch (kind) {
        case FamilyKind::Q: return "Q";
        case FamilyKind::R: return "R";
        case FamilyKind::T: return "T";
        case FamilyKind::B: return "B";
        case FamilyKind::U2: return "U2";
        case FamilyKind::U3: return "U3";
        case FamilyKind::V2: return "V2";
        case FamilyKind::V3: return "V3";
        case FamilyKind::W: return "W";
        case FamilyKind::Custom: return "custom";
    }
    return "custom";
}

FamilyKind parse_family_kind(std::string_view name) {
    for (auto k : {FamilyKind::Q, FamilyKind::R, FamilyKind::T, FamilyKind::B, FamilyKind::U2, FamilyKind::U3,
                   FamilyKind::V2, FamilyKind::V3, FamilyKind::W, FamilyKind::Custom}) {
        if (to_string(k) == name) return k;
    }
    throw Error(ErrorKind::UnsupportedKind, "unknown family kind '" + std::string(name) + "'");
}

unsigned arity(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Q: return 3;
        case FamilyKind::R: return 4;
        case FamilyKind::T: return 8;
        case FamilyKind::B: return 7;
        case FamilyKind::U2: return 2;
        case FamilyKind::U3: return 3;
        case FamilyKind::V2: return 2;
        case FamilyKind::V3: return 3;
        case FamilyKind::W: return 5;
        case FamilyKind::Custom: break;
    }
    throw Error(ErrorKind::UnsupportedKind, "custom families have no fixed arity");
}

bool is_set_family(FamilyKind kind) noexcept { return kind == FamilyKind::Q || kind == FamilyKind::R; }

std::string VectorFamily::convention() const { return is_set_family(kind) ? "unordered-set" : "ordered-tuple"; }

void FamilySpec::validate() const {
    if (kind == FamilyKind::Custom) throw Error(ErrorKind::UnsupportedKind, "custom families cannot be enumerated");
    if (modulus == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    const bool needs_eps = kind == FamilyKind::R || kind == FamilyKind::B;
    if (needs_eps != epsilon.has_value()) {
        throw Error(ErrorKind::InvalidArgument, "epsilon is required for R and B and only for them");
    }
    if (epsilon && !(*epsilon > Rational(0) && *epsilon < Rational(1))) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
    }
    const bool signed_ok = kind == FamilyKind::V2 || kind == FamilyKind::V3;
    if (target < 0 && !signed_ok) throw Error(ErrorKind::InvalidArgument, "target must be nonnegative");
}

std::uint64_t floor_power(std::uint64_t n, const Rational& eps) {
    using boost::multiprecision::cpp_int;
    if (eps.num() < 0) throw Error(ErrorKind::InvalidArgument, "exponent must be nonnegative");
    const auto p = static_cast<unsigned>(eps.num());
    const auto q = static_cast<unsigned>(eps.den());
    const cpp_int bound = boost::multiprecision::pow(cpp_int(n), p);
    std::uint64_t lo = 0, hi = std::max<std::uint64_t>(n, 1);
    if (eps.num() > eps.den()) throw Error(ErrorKind::InvalidArgument, "exponent must be at most 1");
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (boost::multiprecision::pow(cpp_int(mid), q) <= bound) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

namespace {

// Residue conditions are switched off for N = 1.
struct Residues {
    std::uint64_t N;
    bool congruent(std::uint64_t a, std::uint64_t b) const { return N == 1 || a % N == b % N; }
    bool incongruent(std::uint64_t a, std::uint64_t b) const { return N == 1 || a % N != b % N; }
};

bool same_pair(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return std::minmax(a, b) == std::minmax(c, d);
}

struct Lookup {
    std::span<const std::uint64_t> a;
    bool has(std::int64_t x) const {
        return x > 0 && std::binary_search(a.begin(), a.end(), static_cast<std::uint64_t>(x));
    }
};

// sum -> ordered pairs (u, v) of elements with u + v = sum.
using PairIndex = std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>>;

PairIndex ordered_pair_index(std::span<const std::uint64_t> a) {
    PairIndex index;
    for (auto u : a)
        for (auto v : a) index[u + v].emplace_back(u, v);
    return index;
}

std::vector<Tuple> q_members(std::span<const std::uint64_t> a, std::uint64_t n, Residues res) {
    const Lookup has{a};
    std::vector<Tuple> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const auto x3 = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(a[i] + a[j]);
            if (x3 <= static_cast<std::int64_t>(a[j])) break;
            if (!has.has(x3)) continue;
            const auto z = static_cast<std::uint64_t>(x3);
            if (res.incongruent(a[i], a[j]) && res.incongruent(a[i], z) && res.incongruent(a[j], z)) {
                out.push_back({a[i], a[j], z});
            }
        }
    }
    return out;
}

std::vector<Tuple> r_members(std::span<const std::uint64_t> a, std::uint64_t n, Residues res, std::uint64_t small) {
    const Lookup has{a};
    std::vector<Tuple> out;
    for (std::size_t i = 0; i < a.size() && a[i] <= small; ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (!res.incongruent(a[i], a[j])) continue;
            for (std::size_t k = j + 1; k < a.size(); ++k) {
                const auto x4 = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(a[i] + a[j] + a[k]);
                if (x4 <= static_cast<std::int64_t>(a[k])) break;
                if (!has.has(x4)) continue;
                const auto z = static_cast<std::uint64_t>(x4);
                if (res.incongruent(a[i], a[k]) && res.incongruent(a[j], a[k]) && res.incongruent(a[i], z) &&
                    res.incongruent(a[j], z) && res.incongruent(a[k], z)) {
                    out.push_back({a[i], a[j], a[k], z});
                }
            }
        }
    return out;
}

std::vector<Tuple> t_members(std::span<const std::uint64_t> a, std::uint64_t n, Residues res) {
    const auto q = q_members(a, n, res);
    if (q.empty()) return {};
    const auto index = ordered_pair_index(a);
    std::vector<Tuple> out;
    for (const auto& set : q) {
        std::array<std::uint64_t, 3> perm{set[0], set[1], set[2]};
        do {
            const auto [x1, x2, x3] = perm;
            for (auto x4 : a) {
                const auto it = index.find(x1 + x4);
                std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
                for (const auto& [u, v] : it->second) {
                    if (res.congruent(u, x1) && res.congruent(v, x4) && !same_pair(u, v, x1, x4)) pairs.emplace_back(u, v);
                }
                for (const auto& [x5, x6] : pairs)
                    for (const auto& [x7, x8] : pairs) {
                        if (same_pair(x5, x6, x7, x8)) continue;
                        out.push_back({x1, x2, x3, x4, x5, x6, x7, x8});
                    }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

std::vector<Tuple> b_members(std::span<const std::uint64_t> a, std::uint64_t n, Residues res, std::uint64_t small) {
    const auto r = r_members(a, n, res, small);
    if (r.empty()) return {};
    const auto index = ordered_pair_index(a);
    std::vector<Tuple> out;
    for (const auto& set : r) {
        std::array<std::uint64_t, 4> perm{set[0], set[1], set[2], set[3]};
        do {
            const auto [x1, x2, x3, x4] = perm;
            for (auto x5 : a) {
                for (const auto& [x6, x7] : index.find(x1 + x5)->second) {
                    if (res.congruent(x6, x1) && res.congruent(x7, x5) && !same_pair(x1, x5, x6, x7)) {
                        out.push_back({x1, x2, x3, x4, x5, x6, x7});
                    }
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

bool distinct(std::initializer_list<std::uint64_t> xs) {
    std::vector<std::uint64_t> v(xs);
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

VectorFamily enumerate_family(std::span<const std::uint64_t> A, const FamilySpec& spec) {
    spec.validate();
    if (!std::is_sorted(A.begin(), A.end()) || std::adjacent_find(A.begin(), A.end()) != A.end()) {
        throw Error(ErrorKind::InvalidArgument, "sequence must be strictly increasing");
    }
    VectorFamily family;
    family.kind = spec.kind;
    family.arity = arity(spec.kind);
    family.target = spec.target;
    const Residues res{spec.modulus};
    const Lookup has{A};
    const std::int64_t r = spec.target;
    auto& out = family.members;

    switch (spec.kind) {
        case FamilyKind::Q: out = q_members(A, static_cast<std::uint64_t>(r), res); break;
        case FamilyKind::R:
            out = r_members(A, static_cast<std::uint64_t>(r), res, floor_power(static_cast<std::uint64_t>(r), *spec.epsilon));
            break;
        case FamilyKind::T: out = t_members(A, static_cast<std::uint64_t>(r), res); break;
        case FamilyKind::B:
            out = b_members(A, static_cast<std::uint64_t>(r), res, floor_power(static_cast<std::uint64_t>(r), *spec.epsilon));
            break;
        case FamilyKind::U2:
            for (auto x1 : A) {
                const auto x2 = r - static_cast<std::int64_t>(x1);
                if (has.has(x2) && static_cast<std::uint64_t>(x2) != x1) out.push_back({x1, static_cast<std::uint64_t>(x2)});
            }
            break;
        case FamilyKind::V2:
            for (auto x1 : A) {
                const auto x2 = static_cast<std::int64_t>(x1) - r;
                if (has.has(x2) && static_cast<std::uint64_t>(x2) != x1) out.push_back({x1, static_cast<std::uint64_t>(x2)});
            }
            break;
        case FamilyKind::U3:
            for (auto x1 : A)
                for (auto x2 : A) {
                    const auto x3 = r - static_cast<std::int64_t>(x1 + x2);
                    if (!has.has(x3)) continue;
                    const auto z = static_cast<std::uint64_t>(x3);
                    if (distinct({x1, x2, z})) out.push_back({x1, x2, z});
                }
            break;
        case FamilyKind::V3:
            for (auto x1 : A)
                for (auto x2 : A) {
                    const auto x3 = static_cast<std::int64_t>(x1 + x2) - r;
                    if (!has.has(x3)) continue;
                    const auto z = static_cast<std::uint64_t>(x3);
                    if (distinct({x1, x2, z})) out.push_back({x1, x2, z});
                }
            break;
        case FamilyKind::W: {
            const auto index = ordered_pair_index(A);
            for (auto x4 : A) {
                const auto it = index.find(static_cast<std::uint64_t>(r) + x4);
                if (it == index.end()) continue;
                for (const auto& [x5, x6] : it->second)
                    for (const auto& [x7, x8] : it->second)
                        if (distinct({x4, x5, x6, x7, x8})) out.push_back({x4, x5, x6, x7, x8});
            }
            break;
        }
        case FamilyKind::Custom: break;
    }
    std::sort(out.begin(), out.end());
    return family;
}

namespace {

struct PairAtSum {
    std::uint64_t sum, u, v;
    auto operator<=>(const PairAtSum&) const = default;
};

// One lifting pass: removes every element of every pair whose sum is shared
// by at least `crowd` distinct unordered pairs.
std::vector<RemovalWitness> lift_pass(std::span<const std::uint64_t> a, std::size_t crowd) {
    std::vector<PairAtSum> pairs;
    pairs.reserve(a.size() * (a.size() + 1) / 2);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) pairs.push_back({a[i] + a[j], a[i], a[j]});
    std::sort(pairs.begin(), pairs.end());

    std::map<std::uint64_t, Tuple> witness;
    for (std::size_t k = 0; k < pairs.size();) {
        std::size_t end = k;
        while (end < pairs.size() && pairs[end].sum == pairs[k].sum) ++end;
        if (end - k >= crowd) {
            for (std::size_t i = k; i < end; ++i) {
                // Other pairs at this sum, taken in order, complete the witness.
                std::vector<std::size_t> others;
                for (std::size_t j = k; j < end && others.size() + 1 < crowd; ++j)
                    if (j != i) others.push_back(j);
                for (const auto& [x, y] : {std::pair{pairs[i].u, pairs[i].v}, std::pair{pairs[i].v, pairs[i].u}}) {
                    if (witness.count(x)) continue;
                    Tuple t{x, y};
                    for (auto j : others) {
                        t.push_back(pairs[j].u);
                        t.push_back(pairs[j].v);
                    }
                    witness.emplace(x, std::move(t));
                }
            }
        }
        k = end;
    }
    std::vector<RemovalWitness> out;
    for (auto& [x, t] : witness) out.push_back({x, std::move(t)});
    return out;
}

LiftResult lift(const IntSeq& A, std::size_t crowd, bool to_fixpoint) {
    std::vector<std::uint64_t> current(A.elements().begin(), A.elements().end());
    LiftResult result;
    result.passes = 0;
    while (true) {
        auto removed = lift_pass(current, crowd);
        ++result.passes;
        if (removed.empty()) break;
        std::vector<std::uint64_t> next;
        std::size_t r = 0;
        for (auto x : current) {
            while (r < removed.size() && removed[r].element < x) ++r;
            if (r < removed.size() && removed[r].element == x) continue;
            next.push_back(x);
        }
        for (auto& w : removed) result.removed.push_back(std::move(w));
        current = std::move(next);
        if (!to_fixpoint) break;
    }
    std::sort(result.removed.begin(), result.removed.end(),
              [](const RemovalWitness& l, const RemovalWitness& r) { return l.element < r.element; });
    result.survivors = IntSeq(std::move(current), A.horizon(), A.provenance());
    return result;
}

}  // namespace

LiftResult sidon_lift(const IntSeq& A, bool to_fixpoint) { return lift(A, 2, to_fixpoint); }
LiftResult b2_2_lift(const IntSeq& A, bool to_fixpoint) { return lift(A, 3, to_fixpoint); }

bool replay_sidon_witness(const IntSeq& original, const RemovalWitness& w) {
    if (w.tuple.size() != 4 || w.tuple[0] != w.element) return false;
    for (auto x : w.tuple)
        if (!original.contains(x)) return false;
    const auto& t = w.tuple;
    return t[0] + t[1] == t[2] + t[3] && !same_pair(t[0], t[1], t[2], t[3]);
}

bool replay_b22_witness(const IntSeq& original, const RemovalWitness& w) {
    if (w.tuple.size() != 6 || w.tuple[0] != w.element) return false;
    for (auto x : w.tuple)
        if (!original.contains(x)) return false;
    const auto& t = w.tuple;
    if (t[0] + t[1] != t[2] + t[3] || t[2] + t[3] != t[4] + t[5]) return false;
    return !same_pair(t[0], t[1], t[2], t[3]) && !same_pair(t[2], t[3], t[4], t[5]) &&
           !same_pair(t[0], t[1], t[4], t[5]);
}

AuditReport destruction_audit(const IntSeq& A, std::uint64_t n, std::uint64_t N, AuditMode mode,
                              std::optional<Rational> epsilon) {
    AuditReport report;
    report.mode = mode;
    report.n = n;
    const auto target = static_cast<std::int64_t>(n);
    if (mode == AuditMode::QT) {
        const auto lifted = b2_2_lift(A).survivors;
        report.before = enumerate_family(A, {FamilyKind::Q, target, N, std::nullopt}).size();
        report.after = enumerate_family(lifted, {FamilyKind::Q, target, N, std::nullopt}).size();
        report.obstruction = enumerate_family(A, {FamilyKind::T, target, N, std::nullopt}).size();
    } else {
        const Rational eps = epsilon.value_or(Rational(1, 2));
        const auto lifted = sidon_lift(A).survivors;
        report.before = enumerate_family(A, {FamilyKind::R, target, N, eps}).size();
        report.after = enumerate_family(lifted, {FamilyKind::R, target, N, eps}).size();
        report.obstruction = enumerate_family(A, {FamilyKind::B, target, N, eps}).size();
    }
    report.holds = report.after + report.obstruction >= report.before;
    return report;
}

namespace {

bool disjoint(const Tuple& a, const Tuple& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i; else ++j;
    }
    return true;
}

bool search(const std::vector<Tuple>& sets, std::size_t k, std::size_t start, std::vector<std::size_t>& chosen) {
    if (chosen.size() == k) return true;
    for (std::size_t i = start; i + (k - chosen.size()) <= sets.size(); ++i) {
        bool ok = true;
        for (auto c : chosen) {
            if (!disjoint(sets[c], sets[i])) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        chosen.push_back(i);
        if (search(sets, k, i + 1, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_kdsv(const std::vector<Tuple>& members, std::size_t k) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
    std::vector<Tuple> sets;
    sets.reserve(members.size());
    for (const auto& m : members) {
        Tuple s = m;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sets.push_back(std::move(s));
    }
    std::vector<std::size_t> chosen;
    if (search(sets, k, 0, chosen)) return chosen;
    return std::nullopt;
}

}  // namespace sidonkit::deletionlab
