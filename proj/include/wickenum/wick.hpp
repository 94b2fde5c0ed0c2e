// Gaussian expectation of products of matrix-entry symbols, evaluated by
// enumerating proper pairings: positions p, q match iff their directed edges
// are mutual reverses, each pair contributing a factor 1/N.
#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "wickenum/algebra.hpp"

namespace wickenum {

using DirectedEdge = std::pair<int, int>;  // 1-based vertex indices

// Multiset of directed edges; items kept sorted so equal multisets compare
// and hash identically.
struct EdgeMultiset {
    std::vector<DirectedEdge> items;

    EdgeMultiset() = default;
    explicit EdgeMultiset(std::vector<DirectedEdge> edges) : items(std::move(edges)) {
        std::sort(items.begin(), items.end());
    }
    size_t size() const { return items.size(); }
    bool operator==(const EdgeMultiset&) const = default;
};

// A pairing is a perfect matching of positions into mutually reversed pairs.
using Pairing = std::vector<std::pair<int, int>>;

inline std::vector<Pairing> enumerate_pairings(const EdgeMultiset& ms) {
    std::vector<Pairing> out;
    size_t n = ms.items.size();
    if (n % 2 != 0) return out;
    std::vector<int> partner(n, -1);
    Pairing current;
    auto rec = [&](auto&& self, size_t first) -> void {
        while (first < n && partner[first] >= 0) ++first;
        if (first == n) {
            out.push_back(current);
            return;
        }
        DirectedEdge want{ms.items[first].second, ms.items[first].first};
        for (size_t q = first + 1; q < n; ++q) {
            if (partner[q] >= 0 || ms.items[q] != want) continue;
            partner[first] = static_cast<int>(q);
            partner[q] = static_cast<int>(first);
            current.emplace_back(static_cast<int>(first), static_cast<int>(q));
            self(self, first + 1);
            current.pop_back();
            partner[first] = partner[q] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

namespace detail {

inline int64_t count_pairings_uncached(const EdgeMultiset& ms) {
    size_t n = ms.items.size();
    if (n % 2 != 0) return 0;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, size_t first) -> int64_t {
        while (first < n && used[first]) ++first;
        if (first == n) return 1;
        used[first] = true;
        DirectedEdge want{ms.items[first].second, ms.items[first].first};
        int64_t total = 0;
        for (size_t q = first + 1; q < n; ++q) {
            if (used[q] || ms.items[q] != want) continue;
            used[q] = true;
            total += self(self, first + 1);
            used[q] = false;
        }
        used[first] = false;
        return total;
    };
    return rec(rec, 0);
}

// Memo key: vertices renamed by first occurrence in the sorted item list.
// Any function of the multiset is a sound key; renaming just lets isomorphic
// multisets share entries most of the time.
inline uint64_t relabel_key(const EdgeMultiset& ms) {
    int next = 1;
    int map[16] = {0};
    uint64_t key = 1;  // leading 1 guards against length collisions
    for (const auto& [a, b] : ms.items) {
        if (map[a] == 0) map[a] = next++;
        if (map[b] == 0) map[b] = next++;
        key = key * 241 + static_cast<uint64_t>(map[a]) * 16 + static_cast<uint64_t>(map[b]);
    }
    return key;
}

}  // namespace detail

// Number of proper pairings. The cache is thread-local: deterministic results
// without cross-thread coordination.
inline int64_t proper_pairing_count(const EdgeMultiset& ms) {
    if (ms.items.size() % 2 != 0) return 0;
    bool small_indices = true;
    for (const auto& [a, b] : ms.items)
        if (a > 15 || b > 15 || a < 1 || b < 1) small_indices = false;
    if (!small_indices || ms.items.size() > 24) return detail::count_pairings_uncached(ms);

    thread_local std::unordered_map<uint64_t, int64_t> memo;
    uint64_t key = detail::relabel_key(ms);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int64_t count = detail::count_pairings_uncached(ms);
    memo.emplace(key, count);
    return count;
}

// <prod over I of M_e> = (#proper pairings) * N^{-|I|/2}, N kept symbolic.
inline ExactPoly wick_value(const EdgeMultiset& ms) {
    int64_t count = proper_pairing_count(ms);
    if (count == 0) return ExactPoly();
    ExactPoly r;
    r.add_term(Monomial::variable(Var::dim(), -static_cast<int>(ms.items.size() / 2)),
               rational(count));
    return r;
}

// Linear extension to polynomials: each term's entry part is replaced by its
// Wick value; scalar variables (x, y, z, z_k and symbolic N) pass through.
inline ExactPoly integrate(const ExactPoly& f) {
    ExactPoly out;
    for (const auto& [m, c] : f.terms()) {
        std::vector<DirectedEdge> edges;
        for (const auto& [v, e] : m.factors()) {
            if (v.cls() != VarClass::Entry) continue;
            for (int k = 0; k < e; ++k) edges.emplace_back(v.entry_row(), v.entry_col());
        }
        if (edges.empty()) {
            out.add_term(m, c);
            continue;
        }
        ExactPoly value = wick_value(EdgeMultiset(std::move(edges)));
        if (value.zero()) continue;
        out += value.shifted(m.without_class(VarClass::Entry), c);
    }
    return out;
}

}  // namespace wickenum
