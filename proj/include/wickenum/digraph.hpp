// The complete digraph on vertices 1..dim and its edge-subset structure:
// eulerian sets, weak components, closed-trail decompositions, and
// decompositions into vertex-simple directed cycles.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "wickenum/algebra.hpp"
#include "wickenum/wick.hpp"

namespace wickenum {

// Subset of the dim^2 directed edges, as a 64-bit mask (dim <= 8).
struct EdgeSet {
    int dim = 0;
    uint64_t bits = 0;

    EdgeSet() = default;
    explicit EdgeSet(int d) : dim(d) {
        if (d < 0 || d > 8) throw ScaleExceeded("EdgeSet dimension must be 0..8");
    }
    EdgeSet(int d, const std::vector<DirectedEdge>& edges) : EdgeSet(d) {
        for (const auto& [i, j] : edges) insert(i, j);
    }

    int index(int i, int j) const { return (i - 1) * dim + (j - 1); }
    bool contains(int i, int j) const { return bits >> index(i, j) & 1; }
    void insert(int i, int j) { bits |= uint64_t(1) << index(i, j); }
    void erase(int i, int j) { bits &= ~(uint64_t(1) << index(i, j)); }
    int size() const { return __builtin_popcountll(bits); }
    bool empty() const { return bits == 0; }

    std::vector<DirectedEdge> edges() const {
        std::vector<DirectedEdge> out;
        out.reserve(size());
        for (uint64_t b = bits; b;) {
            int id = __builtin_ctzll(b);
            b &= b - 1;
            out.emplace_back(id / dim + 1, id % dim + 1);
        }
        return out;
    }

    bool symmetric() const {
        for (const auto& [i, j] : edges())
            if (!contains(j, i)) return false;
        return true;
    }
    bool has_loop() const {
        for (int v = 1; v <= dim; ++v)
            if (contains(v, v)) return true;
        return false;
    }

    Monomial entry_monomial() const {
        Monomial::Factors f;
        for (const auto& [i, j] : edges()) f.emplace_back(Var::entry(i, j), 1);
        return Monomial::from_factors(std::move(f));
    }

    EdgeMultiset multiset() const { return EdgeMultiset(edges()); }

    bool operator==(const EdgeSet&) const = default;
};

inline bool is_eulerian(const EdgeSet& a) {
    int in[9] = {0}, out[9] = {0};
    for (const auto& [i, j] : a.edges()) {
        ++out[i];
        ++in[j];
    }
    for (int v = 1; v <= a.dim; ++v)
        if (in[v] != out[v]) return false;
    return true;
}

// Maximal edge classes inducing connected underlying undirected graphs.
inline std::vector<EdgeSet> components(const EdgeSet& a) {
    int root[9];
    for (int v = 0; v <= a.dim; ++v) root[v] = v;
    auto find = [&](int v) {
        while (root[v] != v) v = root[v] = root[root[v]];
        return v;
    };
    auto edges = a.edges();
    for (const auto& [i, j] : edges) root[find(i)] = find(j);
    std::vector<EdgeSet> out;
    int slot[9] = {0};
    for (int v = 1; v <= a.dim; ++v) slot[v] = -1;
    for (const auto& [i, j] : edges) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back(a.dim);
        }
        out[slot[r]].insert(i, j);
    }
    return out;
}

namespace detail {

// All vertex-simple directed cycles with min_len <= length <= max_len, as
// edge masks. Loops never appear (min_len >= 2). Each cycle is found once,
// rooted at its minimal vertex.
inline std::vector<uint64_t> simple_cycles(int dim, int min_len, int max_len) {
    std::vector<uint64_t> out;
    EdgeSet probe(dim);
    std::vector<int> path;
    std::vector<bool> used(dim + 1, false);
    auto rec = [&](auto&& self, int start, uint64_t mask) -> void {
        int head = path.back();
        if (static_cast<int>(path.size()) >= min_len) {
            out.push_back(mask | (uint64_t(1) << probe.index(head, start)));
        }
        if (static_cast<int>(path.size()) == max_len) return;
        for (int next = start + 1; next <= dim; ++next) {
            if (used[next]) continue;
            used[next] = true;
            path.push_back(next);
            self(self, start, mask | (uint64_t(1) << probe.index(head, next)));
            path.pop_back();
            used[next] = false;
        }
    };
    for (int start = 1; start <= dim; ++start) {
        for (int second = start + 1; second <= dim; ++second) {
            used[start] = used[second] = true;
            path = {start, second};
            rec(rec, start, uint64_t(1) << probe.index(start, second));
            used[start] = used[second] = false;
        }
    }
    return out;
}

}  // namespace detail

// Every loop-free eulerian subset with at most max_edges edges, each exactly
// once, in ascending bit-mask order. An eulerian set is exactly a disjoint
// union of vertex-simple directed cycles of length >= 2; unions are collected
// and dekeyed since one set can decompose many ways.
inline std::vector<EdgeSet> enumerate_eulerian(int dim, int max_edges) {
    if (dim > 8) throw ScaleExceeded("enumerate_eulerian: dim > 8");
    auto cycles = detail::simple_cycles(dim, 2, std::min(max_edges, dim));
    std::set<uint64_t> seen;
    seen.insert(0);
    auto rec = [&](auto&& self, size_t from, uint64_t mask, int edges_left) -> void {
        for (size_t k = from; k < cycles.size(); ++k) {
            uint64_t c = cycles[k];
            int len = __builtin_popcountll(c);
            if (len > edges_left || (mask & c)) continue;
            uint64_t next = mask | c;
            seen.insert(next);
            self(self, k + 1, next, edges_left - len);
        }
    };
    rec(rec, 0, 0, max_edges);
    std::vector<EdgeSet> out;
    out.reserve(seen.size());
    for (uint64_t b : seen) {
        EdgeSet s(dim);
        s.bits = b;
        out.push_back(s);
    }
    return out;
}

// The set of all r >= 1 such that q splits into exactly r nonempty closed
// trails; {0} for the empty set, empty for non-eulerian q.
inline std::set<int> trail_decomposition_r_values(const EdgeSet& q) {
    if (q.empty()) return {0};
    if (!is_eulerian(q)) return {};
    std::set<int> out;
    int max_r = q.size() / 2;
    EdgeSet rest = q;
    auto decompose = [&](auto&& self, int trails) -> void {
        if (rest.empty()) {
            out.insert(trails);
            return;
        }
        if (static_cast<int>(out.size()) == max_r) return;  // all values found
        // root the next trail at the least unused edge
        auto first = rest.edges().front();
        rest.erase(first.first, first.second);
        auto walk = [&](auto&& ext, int head) -> void {
            if (head == first.first) self(self, trails + 1);
            for (int next = 1; next <= q.dim; ++next) {
                if (next == head || !rest.contains(head, next)) continue;
                rest.erase(head, next);
                ext(ext, next);
                rest.insert(head, next);
            }
        };
        walk(walk, first.second);
        rest.insert(first.first, first.second);
    };
    decompose(decompose, 0);
    return out;
}

using DirectedCycle = std::vector<int>;            // vertex sequence, minimal vertex first
using CycleDecomposition = std::vector<DirectedCycle>;

namespace detail {

// Partition search rooted at the least unused edge, so each unordered
// decomposition is produced exactly once. Vertex-simplicity is scoped to the
// cycle under construction; later cycles may revisit its vertices.
template <typename Sink>
void cycle_decompositions_rec(EdgeSet& rest, int min_len, CycleDecomposition& current,
                              Sink& sink) {
    if (rest.empty()) {
        sink(current);
        return;
    }
    auto first = rest.edges().front();
    int start = first.first;
    std::vector<bool> used(rest.dim + 1, false);
    DirectedCycle path = {start, first.second};
    used[start] = used[first.second] = true;
    rest.erase(first.first, first.second);
    auto extend = [&](auto&& ext) -> void {
        int head = path.back();
        if (static_cast<int>(path.size()) >= min_len && rest.contains(head, start)) {
            rest.erase(head, start);
            current.push_back(path);
            cycle_decompositions_rec(rest, min_len, current, sink);
            current.pop_back();
            rest.insert(head, start);
        }
        for (int next = 1; next <= rest.dim; ++next) {
            if (used[next] || !rest.contains(head, next)) continue;
            used[next] = true;
            path.push_back(next);
            rest.erase(head, next);
            ext(ext);
            rest.insert(head, next);
            path.pop_back();
            used[next] = false;
        }
    };
    extend(extend);
    rest.insert(first.first, first.second);
}

template <typename Sink>
void cycle_decompositions(const EdgeSet& q, int min_len, Sink&& sink) {
    if (!is_eulerian(q)) return;
    EdgeSet rest = q;
    CycleDecomposition current;
    cycle_decompositions_rec(rest, min_len, current, sink);
}

}  // namespace detail

// All unordered partitions of q into vertex-simple directed cycles of length
// >= min_len. Empty when q is not decomposable (not "even" for min_len 3).
inline std::vector<CycleDecomposition> enumerate_cycle_decompositions(const EdgeSet& q,
                                                                      int min_len = 3) {
    std::vector<CycleDecomposition> out;
    if (q.empty()) {
        out.push_back({});
        return out;
    }
    detail::cycle_decompositions(q, min_len, [&](const CycleDecomposition& d) { out.push_back(d); });
    return out;
}

inline int64_t count_cycle_decompositions(const EdgeSet& q, int min_len = 3) {
    if (q.empty()) return 1;
    int64_t n = 0;
    detail::cycle_decompositions(q, min_len, [&](const CycleDecomposition&) { ++n; });
    return n;
}

inline bool is_even(const EdgeSet& q) {
    if (q.empty()) return true;  // vacuous union of cycles
    bool found = false;
    detail::cycle_decompositions(q, 3, [&](const CycleDecomposition&) { found = true; });
    return found;
}

}  // namespace wickenum
