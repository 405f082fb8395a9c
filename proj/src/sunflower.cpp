#include "sidonkit/sunflower.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "sidonkit/error.hpp"

namespace sidonkit::sunflower {

namespace {

using Set = std::vector<std::uint64_t>;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

bool disjoint_sorted(const Set& a, const Set& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i;
        else ++j;
    }
    return true;
}

Set sorted_unique(Set s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// Coordinates outside the type, as a sorted set.
Set free_part(const Tuple& x, const std::vector<bool>& in_type) {
    Set s;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!in_type[i]) s.push_back(x[i]);
    return sorted_unique(std::move(s));
}

unsigned check_family(const std::vector<Tuple>& family) {
    if (family.empty()) return 0;
    const auto h = static_cast<unsigned>(family.front().size());
    for (const auto& x : family)
        if (x.size() != h) throw Error(ErrorKind::InvalidArgument, "family members must share one arity");
    std::vector<Tuple> sorted = family;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorKind::InvalidArgument, "family members must be distinct");
    return h;
}

struct Found {
    Set core;
    std::vector<std::size_t> petals;
};

// sets[idx] are the remaining (sorted) sets; all have the same size.
std::optional<Found> erdos_rado(const std::vector<Set>& sets, const std::vector<std::size_t>& idx, std::size_t k) {
    if (idx.size() < k) return std::nullopt;
    std::vector<std::size_t> chosen;
    Set used;
    for (auto i : idx) {
        if (!disjoint_sorted(sets[i], used)) continue;
        chosen.push_back(i);
        used.insert(used.end(), sets[i].begin(), sets[i].end());
        std::sort(used.begin(), used.end());
        if (chosen.size() == k) return Found{{}, chosen};
    }
    if (used.empty()) return std::nullopt;

    std::unordered_map<std::uint64_t, std::size_t> freq;
    for (auto i : idx)
        for (auto x : sets[i])
            if (std::binary_search(used.begin(), used.end(), x)) ++freq[x];
    std::uint64_t best = 0;
    std::size_t best_count = 0;
    for (auto x : used) {
        const auto c = freq[x];
        if (c > best_count) best = x, best_count = c;
    }
    if (best_count < k) return std::nullopt;

    std::vector<Set> reduced(sets.size());
    std::vector<std::size_t> next;
    for (auto i : idx) {
        if (!std::binary_search(sets[i].begin(), sets[i].end(), best)) continue;
        reduced[i] = sets[i];
        reduced[i].erase(std::lower_bound(reduced[i].begin(), reduced[i].end(), best));
        next.push_back(i);
    }
    auto found = erdos_rado(reduced, next, k);
    if (!found) return std::nullopt;
    found->core.insert(std::upper_bound(found->core.begin(), found->core.end(), best), best);
    return found;
}

std::optional<SunflowerCert> constructive(const std::vector<Tuple>& family, unsigned h, std::size_t k) {
    const std::size_t need = (static_cast<std::size_t>(h) * h - h + 1) * (k - 1) + 1;
    std::vector<Set> embedded;
    embedded.reserve(family.size());
    for (const auto& x : family) embedded.push_back(set_h_embed(x));
    const auto classical = find_classical_sunflower(embedded, need);
    if (!classical) return std::nullopt;

    std::vector<bool> in_type(h, false);
    SunflowerCert cert;
    for (auto c : classical->core) {
        const auto pos = static_cast<unsigned>((c - 1) % h);
        in_type[pos] = true;
    }
    const auto& first = family[classical->petal_indices.front()];
    for (unsigned i = 0; i < h; ++i)
        if (in_type[i]) {
            cert.type_set.push_back(i + 1);
            cert.core_values.push_back(first[i]);
        }

    auto order = classical->petal_indices;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return family[a] < family[b]; });
    std::vector<Set> free(family.size());
    for (auto i : order) free[i] = free_part(family[i], in_type);
    std::vector<bool> alive(family.size(), false);
    for (auto i : order) alive[i] = true;
    for (auto i : order) {
        if (!alive[i]) continue;
        cert.petal_indices.push_back(i);
        if (cert.petal_indices.size() == k) break;
        for (auto j : order)
            if (j != i && alive[j] && !disjoint_sorted(free[i], free[j])) alive[j] = false;
        alive[i] = false;
    }
    if (cert.petal_indices.size() < k) return std::nullopt;
    std::sort(cert.petal_indices.begin(), cert.petal_indices.end());
    return cert;
}

std::optional<SunflowerCert> exhaustive(const std::vector<Tuple>& family, unsigned h, std::size_t k) {
    std::vector<std::uint32_t> masks(1u << h);
    std::iota(masks.begin(), masks.end(), 0u);
    std::stable_sort(masks.begin(), masks.end(),
                     [](auto a, auto b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    for (auto mask : masks) {
        std::vector<bool> in_type(h);
        for (unsigned i = 0; i < h; ++i) in_type[i] = mask >> i & 1;
        std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> groups;
        for (std::size_t j = 0; j < family.size(); ++j) {
            std::vector<std::uint64_t> key;
            for (unsigned i = 0; i < h; ++i)
                if (in_type[i]) key.push_back(family[j][i]);
            groups[key].push_back(j);
        }
        for (const auto& [key, members] : groups) {
            if (members.size() < k) continue;
            std::vector<Tuple> projected;
            for (auto j : members) projected.push_back(free_part(family[j], in_type));
            const auto hit = deletionlab::find_kdsv(projected, k);
            if (!hit) continue;
            SunflowerCert cert;
            for (auto p : *hit) cert.petal_indices.push_back(members[p]);
            std::sort(cert.petal_indices.begin(), cert.petal_indices.end());
            for (unsigned i = 0; i < h; ++i)
                if (in_type[i]) cert.type_set.push_back(i + 1);
            cert.core_values = key;
            return cert;
        }
    }
    return std::nullopt;
}

}  // namespace

bool is_vectorial_sunflower(const std::vector<Tuple>& members, const std::vector<unsigned>& type_set) {
    if (members.empty()) return true;
    const auto h = members.front().size();
    std::vector<bool> in_type(h, false);
    for (auto i : type_set) {
        if (i == 0 || i > h || in_type[i - 1]) return false;
        in_type[i - 1] = true;
    }
    try {
        check_family(members);
    } catch (const Error&) {
        return false;
    }
    for (const auto& x : members)
        for (std::size_t i = 0; i < h; ++i)
            if (in_type[i] && x[i] != members.front()[i]) return false;
    std::vector<Set> free;
    for (const auto& x : members) free.push_back(free_part(x, in_type));
    for (std::size_t a = 0; a < free.size(); ++a)
        for (std::size_t b = a + 1; b < free.size(); ++b)
            if (!disjoint_sorted(free[a], free[b])) return false;
    return true;
}

bool is_valid_certificate(const std::vector<Tuple>& family, const SunflowerCert& cert) {
    if (cert.type_set.size() != cert.core_values.size()) return false;
    std::vector<Tuple> members;
    for (auto i : cert.petal_indices) {
        if (i >= family.size()) return false;
        members.push_back(family[i]);
    }
    if (!is_vectorial_sunflower(members, cert.type_set)) return false;
    for (std::size_t t = 0; t < cert.type_set.size(); ++t)
        for (const auto& x : members)
            if (x[cert.type_set[t] - 1] != cert.core_values[t]) return false;
    return true;
}

std::vector<std::uint64_t> set_h_embed(const Tuple& x) {
    const auto h = x.size();
    std::vector<std::uint64_t> out;
    out.reserve(h);
    for (std::size_t i = 0; i < h; ++i) {
        if (x[i] > (UINT64_MAX - h) / h) throw Error(ErrorKind::Overflow, "coordinate too large to embed");
        out.push_back(h * x[i] + i + 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<ClassicalSunflower> find_classical_sunflower(const std::vector<std::vector<std::uint64_t>>& sets,
                                                           std::size_t k) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
    std::vector<Set> normal;
    normal.reserve(sets.size());
    for (const auto& s : sets) {
        normal.push_back(sorted_unique(s));
        if (normal.back().size() != normal.front().size())
            throw Error(ErrorKind::InvalidArgument, "sets must share one size");
    }
    {
        auto sorted = normal;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::InvalidArgument, "sets must be distinct");
    }
    if (normal.empty()) return std::nullopt;
    if (k == 1) return ClassicalSunflower{normal.front(), {0}};

    std::vector<std::size_t> idx(normal.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto found = erdos_rado(normal, idx, k);
    if (!found) return std::nullopt;
    std::sort(found->petals.begin(), found->petals.end());
    return ClassicalSunflower{found->core, found->petals};
}

std::uint64_t classical_bound(unsigned h, std::size_t k) {
    std::uint64_t r = 1;
    for (unsigned i = 2; i <= h; ++i) r = sat_mul(r, i);
    for (unsigned i = 0; i < h; ++i) r = sat_mul(r, k - 1);
    return r;
}

std::uint64_t vectorial_bound(unsigned h, std::size_t k) {
    std::uint64_t r = 1;
    for (unsigned i = 2; i <= h; ++i) r = sat_mul(r, i);
    const std::uint64_t base = sat_mul(static_cast<std::uint64_t>(h) * h - h + 1, k);
    for (unsigned i = 0; i < h; ++i) r = sat_mul(r, base);
    return r;
}

std::optional<SunflowerCert> find_vectorial_sunflower(const std::vector<Tuple>& family, std::size_t k,
                                                      VectorialOptions opts) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
    const unsigned h = check_family(family);
    if (family.size() < k) return std::nullopt;
    if (h == 0) return k == 1 ? std::optional<SunflowerCert>(SunflowerCert{{0}, {}, {}}) : std::nullopt;
    if (auto cert = constructive(family, h, k)) return cert;
    if (opts.exact_fallback) return exhaustive(family, h, k);
    return std::nullopt;
}

}  // namespace sidonkit::sunflower
