// Exhaustive small-graph census machinery: isomorph-free generation by
// canonical-code minimization, automorphism orders, trail double covers,
// directed cycle double covers, planarity, the labelled planar-graph oracle,
// and the census-side closed forms.
#pragma once

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "wickenum/algebra.hpp"

namespace wickenum {

struct NotConnected : std::runtime_error {
    NotConnected() : std::runtime_error("graph is not connected") {}
};
struct InvalidCover : std::runtime_error {
    explicit InvalidCover(const std::string& what) : std::runtime_error(what) {}
};

// Simple graph on vertices 1..n, edges as a bit mask over the C(n,2) vertex
// pairs in lexicographic order.
struct SimpleGraph {
    int n = 0;
    uint32_t mask = 0;

    SimpleGraph() = default;
    explicit SimpleGraph(int vertices) : n(vertices) {
        if (n < 0 || n > 8) throw ScaleExceeded("SimpleGraph supports up to 8 vertices");
    }
    SimpleGraph(int vertices, const std::vector<std::pair<int, int>>& edges)
        : SimpleGraph(vertices) {
        for (auto [i, j] : edges) add_edge(i, j);
    }

    int pair_index(int i, int j) const {  // requires 1 <= i < j <= n
        return (i - 1) * (2 * n - i) / 2 + (j - i - 1);
    }
    void add_edge(int i, int j) {
        if (i > j) std::swap(i, j);
        mask |= uint32_t(1) << pair_index(i, j);
    }
    bool has_edge(int i, int j) const {
        if (i == j) return false;
        if (i > j) std::swap(i, j);
        return mask >> pair_index(i, j) & 1;
    }
    int edge_count() const { return __builtin_popcount(mask); }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (has_edge(i, j)) out.emplace_back(i, j);
        return out;
    }

    std::vector<int> degrees() const {
        std::vector<int> d(n + 1, 0);
        for (auto [i, j] : edges()) {
            ++d[i];
            ++d[j];
        }
        return d;
    }
    bool spanning() const {  // no vertex of degree 0
        auto d = degrees();
        for (int v = 1; v <= n; ++v)
            if (d[v] == 0) return false;
        return true;
    }

    bool connected() const {
        if (n == 0) return true;
        std::vector<int> root(n + 1);
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int v) {
            while (root[v] != v) v = root[v] = root[root[v]];
            return v;
        };
        for (auto [i, j] : edges()) root[find(i)] = find(j);
        int r = find(1);
        for (int v = 2; v <= n; ++v)
            if (find(v) != r) return false;
        return true;
    }

    uint32_t remapped_mask(const std::vector<int>& perm) const {  // perm[v] = image of v
        uint32_t out = 0;
        for (auto [i, j] : edges()) {
            int a = perm[i], b = perm[j];
            if (a > b) std::swap(a, b);
            out |= uint32_t(1) << pair_index(a, b);
        }
        return out;
    }

    bool operator==(const SimpleGraph&) const = default;
    bool operator<(const SimpleGraph& o) const {
        return n != o.n ? n < o.n : mask < o.mask;
    }
};

namespace detail {

template <typename Visit>
void for_each_permutation(int n, Visit&& visit) {
    std::vector<int> perm(n + 1);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        visit(perm);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

}  // namespace detail

// Lexicographically least edge mask over all vertex permutations.
inline uint32_t canonical_mask(const SimpleGraph& g) {
    uint32_t best = g.mask;
    detail::for_each_permutation(g.n, [&](const std::vector<int>& perm) {
        best = std::min(best, g.remapped_mask(perm));
    });
    return best;
}

inline SimpleGraph canonical_form(const SimpleGraph& g) {
    SimpleGraph c(g.n);
    c.mask = canonical_mask(g);
    return c;
}

inline int64_t automorphism_order(const SimpleGraph& g) {
    int64_t count = 0;
    detail::for_each_permutation(g.n, [&](const std::vector<int>& perm) {
        if (g.remapped_mask(perm) == g.mask) ++count;
    });
    return count;
}

enum class GraphFilter { All, Connected, Nimple };

// One canonical representative per isomorphism class of graphs spanning
// exactly n vertices (every vertex of degree >= 1). The single-vertex graph
// counts for All/Connected; it is not nimple. max_edges < 0 means unbounded.
inline std::vector<SimpleGraph> generate_graphs_exact(int n, GraphFilter filter,
                                                      int max_edges = -1) {
    if (n > 8) throw ScaleExceeded("generate_graphs: more than 8 vertices");
    std::vector<SimpleGraph> out;
    if (n == 0) return out;
    if (n == 1) {
        if (filter != GraphFilter::Nimple) out.push_back(SimpleGraph(1));
        return out;
    }
    int bits = n * (n - 1) / 2;
    std::set<uint32_t> seen;
    for (uint32_t mask = 0; mask < (uint32_t(1) << bits); ++mask) {
        if (max_edges >= 0 && __builtin_popcount(mask) > max_edges) continue;
        SimpleGraph g(n);
        g.mask = mask;
        if (!g.spanning()) continue;
        if (filter == GraphFilter::Connected && !g.connected()) continue;
        uint32_t canon = canonical_mask(g);
        if (canon == mask) {
            SimpleGraph c(n);
            c.mask = canon;
            out.push_back(c);
        }
    }
    return out;
}

// Classes with at most n_max vertices (cumulative over the exact-span size).
inline std::vector<SimpleGraph> generate_graphs(int n_max, GraphFilter filter,
                                                int max_edges = -1) {
    std::vector<SimpleGraph> out;
    for (int n = 1; n <= n_max; ++n) {
        auto part = generate_graphs_exact(n, filter, max_edges);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// ---- trail double covers -------------------------------------------------
//
// A TDC is a partition of the doubled directed edge set into closed trails;
// trails are unpointed circular sequences and the collection is unordered.
// Each trail is rooted at its least unused directed edge, so every TDC is
// produced exactly once.

// Connected pieces, relabelled onto 1..k each.
inline std::vector<SimpleGraph> graph_components(const SimpleGraph& g) {
    std::vector<int> root(g.n + 1);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int v) {
        while (root[v] != v) v = root[v] = root[root[v]];
        return v;
    };
    auto edges = g.edges();
    for (auto [i, j] : edges) root[find(i)] = find(j);
    std::map<int, std::vector<int>> members;  // only vertices with degree >= 1 matter here
    auto deg = g.degrees();
    for (int v = 1; v <= g.n; ++v)
        if (deg[v] > 0) members[find(v)].push_back(v);
    std::vector<SimpleGraph> out;
    for (const auto& [r, verts] : members) {
        std::map<int, int> relabel;
        for (size_t k = 0; k < verts.size(); ++k) relabel[verts[k]] = static_cast<int>(k) + 1;
        SimpleGraph c(static_cast<int>(verts.size()));
        for (auto [i, j] : edges)
            if (find(i) == r) c.add_edge(relabel[i], relabel[j]);
        out.push_back(c);
    }
    return out;
}

namespace detail {

struct DirectedAvail {
    bool avail[9][9] = {};
    int dim = 0;
    int remaining = 0;

    explicit DirectedAvail(const SimpleGraph& g) : dim(g.n) {
        for (auto [i, j] : g.edges()) {
            avail[i][j] = avail[j][i] = true;
            remaining += 2;
        }
    }
    std::pair<int, int> least() const {
        for (int i = 1; i <= dim; ++i)
            for (int j = 1; j <= dim; ++j)
                if (avail[i][j]) return {i, j};
        return {0, 0};
    }
};

template <typename Sink>
void tdc_rec(DirectedAvail& st, int trails, Sink& sink) {
    if (st.remaining == 0) {
        sink(trails);
        return;
    }
    auto [a, b] = st.least();
    st.avail[a][b] = false;
    st.remaining -= 2;  // provisional: root edge + eventual closure bookkeeping below
    st.remaining += 1;  // root edge only
    auto walk = [&](auto&& self, int head) -> void {
        if (head == a) tdc_rec(st, trails + 1, sink);
        for (int next = 1; next <= st.dim; ++next) {
            if (!st.avail[head][next]) continue;
            st.avail[head][next] = false;
            --st.remaining;
            self(self, next);
            ++st.remaining;
            st.avail[head][next] = true;
        }
    };
    walk(walk, b);
    st.avail[a][b] = true;
    st.remaining += 1;
}

}  // namespace detail

// count of TDCs indexed by their number of trails
inline std::map<int, int64_t> tdc_counts_by_trails(const SimpleGraph& g) {
    if (g.n > 6 || g.edge_count() > 9)
        throw ScaleExceeded("tdc enumeration bounded to n <= 6, e <= 9");
    std::map<int, int64_t> out;
    detail::DirectedAvail st(g);
    auto sink = [&](int trails) { ++out[trails]; };
    detail::tdc_rec(st, 0, sink);
    return out;
}

inline int64_t enumerate_tdc(const SimpleGraph& g, int r) {
    auto counts = tdc_counts_by_trails(g);
    auto it = counts.find(r);
    return it == counts.end() ? 0 : it->second;
}

// r-values achievable by some TDC (used by the census sums; exercised against
// the digraph module's independent decomposition search in tests). Computed
// per connected component and combined by sum, which also covers carriers on
// up to 8 vertices whose components stay within the enumeration bounds.
inline std::set<int> tdc_trail_values(const SimpleGraph& g) {
    std::set<int> out;
    out.insert(0);
    for (const auto& comp : graph_components(g)) {
        std::set<int> next;
        for (const auto& [r, c] : tdc_counts_by_trails(comp))
            for (int base : out) next.insert(base + r);
        out = std::move(next);
    }
    if (g.edge_count() > 0) out.erase(0);
    return out;
}

// ---- directed cycle double covers -----------------------------------------

using VertexCycle = std::vector<int>;     // vertex sequence, canonical rotation
using Dcdc = std::vector<VertexCycle>;    // sorted set of cycles

inline VertexCycle canonical_rotation(VertexCycle c) {
    auto best = c;
    for (size_t s = 1; s < c.size(); ++s) {
        std::rotate(c.begin(), c.begin() + 1, c.end());
        if (c < best) best = c;
    }
    return best;
}

inline bool has_bridge(const SimpleGraph& g) {
    auto edges = g.edges();
    for (const auto& [i, j] : edges) {
        // does removing {i,j} disconnect i from j?
        std::vector<int> stack{i};
        std::vector<bool> seen(g.n + 1, false);
        seen[i] = true;
        bool reached = false;
        while (!stack.empty() && !reached) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 1; w <= g.n; ++w) {
                if (seen[w] || !g.has_edge(v, w)) continue;
                if (v == i && w == j) continue;
                seen[w] = true;
                if (w == j) reached = true;
                stack.push_back(w);
            }
        }
        if (!reached) return true;
    }
    return false;
}

namespace detail {

template <typename Sink>
void dcdc_rec(DirectedAvail& st, Dcdc& current, Sink& sink) {
    if (st.remaining == 0) {
        Dcdc sorted = current;
        std::sort(sorted.begin(), sorted.end());
        sink(sorted);
        return;
    }
    auto [a, b] = st.least();
    st.avail[a][b] = false;
    --st.remaining;
    std::vector<bool> used(st.dim + 1, false);
    used[a] = used[b] = true;
    VertexCycle path{a, b};
    auto extend = [&](auto&& self) -> void {
        int head = path.back();
        if (path.size() >= 3 && st.avail[head][a]) {
            st.avail[head][a] = false;
            --st.remaining;
            current.push_back(canonical_rotation(path));
            dcdc_rec(st, current, sink);
            current.pop_back();
            ++st.remaining;
            st.avail[head][a] = true;
        }
        for (int next = 1; next <= st.dim; ++next) {
            if (used[next] || !st.avail[head][next]) continue;
            used[next] = true;
            path.push_back(next);
            st.avail[head][next] = false;
            --st.remaining;
            self(self);
            ++st.remaining;
            st.avail[head][next] = true;
            path.pop_back();
            used[next] = false;
        }
    };
    extend(extend);
    ++st.remaining;
    st.avail[a][b] = true;
}

}  // namespace detail

// All DCDCs: partitions of the doubled edge set into vertex-simple directed
// cycles of length >= 3. Empty for graphs with a bridge.
inline std::vector<Dcdc> enumerate_dcdc(const SimpleGraph& g) {
    if (g.n > 6) throw ScaleExceeded("dcdc enumeration bounded to n <= 6");
    std::vector<Dcdc> out;
    if (g.edge_count() == 0) return out;
    if (has_bridge(g)) return out;
    detail::DirectedAvail st(g);
    Dcdc current;
    auto sink = [&](const Dcdc& d) { out.push_back(d); };
    detail::dcdc_rec(st, current, sink);
    return out;
}

inline int64_t count_dcdc(const SimpleGraph& g) {
    if (g.n > 6) throw ScaleExceeded("dcdc enumeration bounded to n <= 6");
    if (g.edge_count() == 0) return 0;
    if (has_bridge(g)) return 0;
    int64_t n = 0;
    detail::DirectedAvail st(g);
    Dcdc current;
    auto sink = [&](const Dcdc&) { ++n; };
    detail::dcdc_rec(st, current, sink);
    return n;
}

inline void validate_dcdc(const SimpleGraph& g, const Dcdc& c) {
    int cover[9][9] = {};
    for (const auto& cyc : c) {
        if (cyc.size() < 3) throw InvalidCover("cycle shorter than three");
        std::set<int> distinct(cyc.begin(), cyc.end());
        if (distinct.size() != cyc.size()) throw InvalidCover("cycle repeats a vertex");
        for (size_t k = 0; k < cyc.size(); ++k) {
            int u = cyc[k], v = cyc[(k + 1) % cyc.size()];
            if (!g.has_edge(u, v)) throw InvalidCover("cycle leaves the host graph");
            ++cover[u][v];
        }
    }
    for (auto [i, j] : g.edges())
        if (cover[i][j] != 1 || cover[j][i] != 1)
            throw InvalidCover("edge not covered once per direction");
}

inline Dcdc apply_permutation(const Dcdc& c, const std::vector<int>& perm) {
    Dcdc out;
    for (const auto& cyc : c) {
        VertexCycle mapped;
        mapped.reserve(cyc.size());
        for (int v : cyc) mapped.push_back(perm[v]);
        out.push_back(canonical_rotation(mapped));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline int64_t aut_order_with_dcdc(const SimpleGraph& g, const Dcdc& c) {
    validate_dcdc(g, c);
    int64_t count = 0;
    detail::for_each_permutation(g.n, [&](const std::vector<int>& perm) {
        if (g.remapped_mask(perm) != g.mask) return;
        if (apply_permutation(c, perm) == c) ++count;
    });
    return count;
}

// DCDC orbits under Aut(G): one representative per isomorphism class of
// (G, C) with G fixed.
inline std::vector<Dcdc> dcdc_orbit_representatives(const SimpleGraph& g) {
    auto all = enumerate_dcdc(g);
    std::set<Dcdc> covered;
    std::vector<Dcdc> reps;
    std::vector<std::vector<int>> auts;
    detail::for_each_permutation(g.n, [&](const std::vector<int>& perm) {
        if (g.remapped_mask(perm) == g.mask) auts.push_back(perm);
    });
    for (const auto& c : all) {
        if (covered.count(c)) continue;
        reps.push_back(c);
        for (const auto& perm : auts) covered.insert(apply_permutation(c, perm));
    }
    return reps;
}

// ---- planarity -------------------------------------------------------------

inline bool is_planar(const SimpleGraph& g) {
    if (!g.connected()) throw NotConnected();
    if (g.n <= 2) return true;
    if (g.edge_count() > 3 * g.n - 6) return false;
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS> bg(g.n);
    for (auto [i, j] : g.edges()) boost::add_edge(i - 1, j - 1, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

// Euler face count for connected planar graphs.
inline int faces_if_planar(const SimpleGraph& g) {
    if (!is_planar(g)) throw std::domain_error("faces_if_planar on a non-planar graph");
    return g.edge_count() - g.n + 2;
}

// Labelled counts: p_row(n)[r] = number of labelled connected simple graphs
// on n vertices with planar embeddings with r faces (edge count n + r - 2).
inline std::vector<int64_t> planar_labelled_counts(int n) {
    if (n > 7) throw ScaleExceeded("labelled planar oracle bounded to n <= 7");
    std::vector<int64_t> row;
    if (n == 0) return row;
    int max_r = n == 1 ? 1 : 3 * n - 6 - n + 2;
    row.assign(std::max(max_r + 1, 2), 0);
    if (n == 1) {
        row[1] = 1;  // single vertex, one face
        return row;
    }
    int bits = n * (n - 1) / 2;
    for (uint32_t mask = 0; mask < (uint32_t(1) << bits); ++mask) {
        SimpleGraph g(n);
        g.mask = mask;
        if (!g.connected()) continue;
        int e = g.edge_count();
        int r = e - n + 2;
        if (r < 1 || r >= static_cast<int>(row.size())) continue;
        if (!is_planar(g)) continue;
        ++row[r];
    }
    return row;
}

inline int64_t p_oracle(int n, int r) {
    auto row = planar_labelled_counts(n);
    if (r < 0 || r >= static_cast<int>(row.size())) return 0;
    return row[r];
}

// ---- census-side closed forms ----------------------------------------------

// sum over isomorphism classes [G] of nimple graphs admitting a TDC with r
// closed trails and 2 e(G) <= max_edges directed carrier edges:
//   y^{e(G)} N(N-1)...(N-|V|+1) / (|Aut(G)| N^{e(G)})
inline ExactPoly rhs_main7(int r, int max_edges) {
    if (r == 0) return ExactPoly(1);  // empty-graph class only
    ExactPoly out;
    int e_max = max_edges / 2;
    for (int n = 2; n <= std::min(2 * e_max, 8); ++n) {
        for (const auto& g : generate_graphs_exact(n, GraphFilter::Nimple, e_max)) {
            if (!tdc_trail_values(g).count(r)) continue;
            int e = g.edge_count();
            Rational aut(automorphism_order(g));
            ExactPoly term = (1 / aut) * falling_factorial(n);
            Monomial shift = Monomial::variable(Var::y(), e) * Monomial::variable(Var::dim(), -e);
            out += term.shifted(shift, rational(1));
        }
    }
    return out;
}

// sum over isomorphism classes of (nimple G, specified DCDC C), |V| <= n_max:
//   N(N-1)...(N-|V|+1) / (|Aut(G,C)| N^{e(G)})
inline ExactPoly rhs_main2(int n_max) {
    if (n_max > 6) throw ScaleExceeded("rhs_main2 bounded to n_max <= 6");
    ExactPoly out;
    for (int n = 3; n <= n_max; ++n) {
        for (const auto& g : generate_graphs_exact(n, GraphFilter::Nimple)) {
            auto reps = dcdc_orbit_representatives(g);
            if (reps.empty()) continue;
            int e = g.edge_count();
            ExactPoly ff = falling_factorial(n);
            for (const auto& c : reps) {
                Rational stab(aut_order_with_dcdc(g, c));
                ExactPoly term = (1 / stab) * ff;
                out += term.shifted(Monomial::variable(Var::dim(), -e), rational(1));
            }
        }
    }
    return out;
}

}  // namespace wickenum
