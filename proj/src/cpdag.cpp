#include "cgm/cpdag.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgm {

std::vector<std::tuple<int, int, int>> v_structures(const CausalGraph& g) {
    const int n = g.node_count();
    std::vector<std::tuple<int, int, int>> out;
    for (int b = 0; b < n; ++b) {
        for (int a = 0; a < n; ++a) {
            if (a == b || !g.edge(a, b) || g.edge(b, a)) continue;
            for (int c = a + 1; c < n; ++c) {
                if (c == b || !g.edge(c, b) || g.edge(b, c)) continue;
                if (g.edge(a, c) || g.edge(c, a)) continue;  // shielded
                out.emplace_back(a, b, c);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Mark per ordered cell: a partially directed working graph.
// directed(i,j) means i -> j is compelled; und(i,j)=und(j,i) marks an
// unresolved edge.
struct Pdag {
    int n;
    std::vector<char> dir;  // n*n, 1 iff compelled i -> j
    std::vector<char> und;  // n*n, symmetric

    explicit Pdag(int n) : n(n), dir(static_cast<std::size_t>(n) * n, 0), und(static_cast<std::size_t>(n) * n, 0) {}

    bool d(int i, int j) const { return dir[static_cast<std::size_t>(i) * n + j]; }
    bool u(int i, int j) const { return und[static_cast<std::size_t>(i) * n + j]; }
    bool adjacent(int i, int j) const { return d(i, j) || d(j, i) || u(i, j); }

    void orient(int i, int j) {
        und[static_cast<std::size_t>(i) * n + j] = und[static_cast<std::size_t>(j) * n + i] = 0;
        dir[static_cast<std::size_t>(i) * n + j] = 1;
    }
};

// Orientation-propagation rules, applied to a fixpoint:
//   R1: a -> b, b - c, a and c non-adjacent        =>  b -> c
//   R2: a -> b -> c, a - c                         =>  a -> c
//   R3: a - b, a - c, a - d, c -> b, d -> b,
//       c and d non-adjacent                       =>  a -> b
// Starting from the v-structure orientations of a DAG these three rules
// compel exactly the edges shared by every member of the class.
bool apply_rules_once(Pdag& p) {
    const int n = p.n;
    bool changed = false;

    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
            if (!p.u(b, c)) continue;
            // R1
            for (int a = 0; a < n; ++a)
                if (a != c && p.d(a, b) && !p.adjacent(a, c)) {
                    p.orient(b, c);
                    changed = true;
                    break;
                }
        }

    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            if (!p.u(a, c)) continue;
            // R2
            for (int b = 0; b < n; ++b)
                if (p.d(a, b) && p.d(b, c)) {
                    p.orient(a, c);
                    changed = true;
                    break;
                }
        }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!p.u(a, b)) continue;
            // R3
            bool done = false;
            for (int c = 0; c < n && !done; ++c) {
                if (!p.u(a, c) || !p.d(c, b)) continue;
                for (int d = c + 1; d < n && !done; ++d) {
                    if (!p.u(a, d) || !p.d(d, b)) continue;
                    if (p.adjacent(c, d)) continue;
                    p.orient(a, b);
                    changed = true;
                    done = true;
                }
            }
        }

    return changed;
}

}  // namespace

CausalGraph dag_to_cpdag(const CausalGraph& g) {
    if (g.kind() != GraphKind::Dag) throw std::invalid_argument("dag_to_cpdag: input is not a DAG");
    const int n = g.node_count();

    Pdag p(n);
    for (auto [i, j] : g.skeleton_pairs()) {
        p.und[static_cast<std::size_t>(i) * n + j] = 1;
        p.und[static_cast<std::size_t>(j) * n + i] = 1;
    }
    for (auto [a, b, c] : v_structures(g)) {
        p.orient(a, b);
        p.orient(c, b);
    }
    while (apply_rules_once(p)) {
    }

    BitMatrix adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (p.d(i, j)) adj.set(i, j);
            if (p.u(i, j)) adj.set(i, j);
        }
    return CausalGraph::make(g.labels(), std::move(adj));
}

std::vector<CausalGraph> enumerate_mec(const CausalGraph& g, int max_undirected) {
    if (g.kind() == GraphKind::Digraph) throw std::invalid_argument("enumerate_mec: input is cyclic");
    const auto undirected = g.undirected_pairs();
    const int m = static_cast<int>(undirected.size());
    if (m > max_undirected)
        throw std::invalid_argument("enumerate_mec: " + std::to_string(m) + " undirected edges exceed the limit of " +
                                    std::to_string(max_undirected));
    const int n = g.node_count();

    BitMatrix strict(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.edge(i, j) && !g.undirected(i, j)) strict.set(i, j);

    auto adjacent_in_skeleton = [&](int a, int b) { return g.edge(a, b) || g.edge(b, a); };

    // A collider is new iff some freshly oriented edge x -> b meets another
    // parent w of b with w, x non-adjacent; existing v-structures never
    // involve a previously undirected edge, so only these triples can differ.
    auto introduces_collider = [&](const BitMatrix& adj, const std::vector<std::pair<int, int>>& oriented) {
        for (auto [x, b] : oriented) {
            for (int w = 0; w < n; ++w) {
                if (w == x || w == b || !adj.get(w, b) || adj.get(b, w)) continue;
                if (!adjacent_in_skeleton(w, x)) return true;
            }
        }
        return false;
    };

    std::vector<CausalGraph> members;
    std::vector<std::pair<int, int>> oriented(m);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
        BitMatrix adj = strict;
        for (int e = 0; e < m; ++e) {
            auto [lo, hi] = undirected[e];
            // Bit order is chosen so ascending `bits` is lexicographic on the
            // orientation vector (0 = lo -> hi).
            if (bits >> (m - 1 - e) & 1)
                oriented[e] = {hi, lo};
            else
                oriented[e] = {lo, hi};
            adj.set(oriented[e].first, oriented[e].second);
        }
        if (!is_acyclic(adj)) continue;
        if (introduces_collider(adj, oriented)) continue;
        members.push_back(CausalGraph::make(g.labels(), std::move(adj)));
    }
    return members;
}

}  // namespace cgm
