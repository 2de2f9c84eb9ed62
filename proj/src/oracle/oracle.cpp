#include "cgm/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cgm::oracle {

namespace {

/// Plain adjacency-list view; children[u] lists v with an asserted u -> v.
struct Lists {
    int n;
    std::vector<std::vector<int>> children;
    std::vector<std::vector<int>> parents;

    explicit Lists(const CausalGraph& g) : n(g.node_count()), children(n), parents(n) {
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (g.edge(u, v)) {
                    children[u].push_back(v);
                    parents[v].push_back(u);
                }
    }
};

void collect_descendants(const Lists& g, int u, int skip_expansion, std::vector<char>& seen) {
    if (seen[u]) return;
    seen[u] = 1;
    if (u == skip_expansion) return;
    for (int v : g.children[u]) collect_descendants(g, v, skip_expansion, seen);
}

/// Reachability u ~> v; `skip_expansion`'s outgoing edges are ignored.
bool reaches(const Lists& g, int from, int to, int skip_expansion) {
    std::vector<char> seen(g.n, 0);
    collect_descendants(g, from, skip_expansion, seen);
    return seen[to];
}

EdgeMark mark_for(const CausalGraph& g, int u, int v) {
    const bool fwd = g.edge(u, v), bwd = g.edge(v, u);
    if (fwd && bwd) return EdgeMark::Undirected;
    return fwd ? EdgeMark::Forward : EdgeMark::Backward;
}

struct PathSearch {
    const CausalGraph& g;
    const Lists& lists;
    int target;
    const std::vector<char>& controlled;
    bool stop_at_first;

    std::vector<int> path;
    std::vector<char> on_path;
    std::vector<PathWitness> found;

    PathWitness witness() const {
        PathWitness w;
        w.nodes = path;
        for (std::size_t s = 0; s + 1 < path.size(); ++s) {
            // Marks follow the traversal direction: the backward phase walks
            // against edges, so the edge really points at the earlier node.
            const int a = path[s], b = path[s + 1];
            w.edge_marks.push_back(mark_for(g, a, b));
        }
        for (int v : path)
            if (controlled[v]) {
                w.blocked_by = v;
                break;
            }
        return w;
    }

    bool prune(int v) const { return stop_at_first && controlled[v]; }

    // Phase 1 walks from i against edge directions; at any node past i the
    // walk may turn around once and follow edge directions to j.
    bool backward(int v) {
        for (int p : lists.parents[v]) {
            if (on_path[p] || prune(p)) continue;
            path.push_back(p);
            on_path[p] = 1;
            if (p == target) {
                found.push_back(witness());
                if (stop_at_first) return true;
            } else if (backward(p) || forward_from(p)) {
                return true;
            }
            on_path[p] = 0;
            path.pop_back();
        }
        return false;
    }

    bool forward_from(int apex) {
        for (int c : lists.children[apex]) {
            if (on_path[c] || prune(c)) continue;
            path.push_back(c);
            on_path[c] = 1;
            if (c == target) {
                found.push_back(witness());
                if (stop_at_first) return true;
            } else if (forward_from(c)) {
                return true;
            }
            on_path[c] = 0;
            path.pop_back();
        }
        return false;
    }
};

std::vector<PathWitness> search_confounding(const CausalGraph& g, int i, int j, const NodeSet& z,
                                            bool stop_at_first) {
    const int n = g.node_count();
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw std::invalid_argument("confounding path search: bad node pair");
    std::vector<char> controlled(n, 0);
    for (int v : z) controlled[v] = 1;

    Lists lists(g);
    PathSearch search{g, lists, j, controlled, stop_at_first, {}, std::vector<char>(n, 0), {}};
    search.path.push_back(i);
    search.on_path[i] = 1;
    search.backward(i);
    return std::move(search.found);
}

}  // namespace

ReachabilityMatrix reach_oracle(const CausalGraph& g) {
    const int n = g.node_count();
    Lists lists(g);
    BitMatrix reach(n);
    for (int u = 0; u < n; ++u) {
        std::vector<char> seen(n, 0);
        collect_descendants(lists, u, -1, seen);
        for (int v = 0; v < n; ++v)
            if (seen[v]) reach.set(u, v);
        reach.set(u, u);
    }
    return {n, std::move(reach)};
}

std::optional<PathWitness> find_unblocked_confounding_path(const CausalGraph& g, int i, int j, const NodeSet& z) {
    auto hits = search_confounding(g, i, j, z, /*stop_at_first=*/true);
    if (hits.empty()) return std::nullopt;
    return hits.front();
}

std::vector<PathWitness> confounding_paths(const CausalGraph& g, int i, int j, const NodeSet& z) {
    return search_confounding(g, i, j, z, /*stop_at_first=*/false);
}

bool adjustment_valid_oracle(const CausalGraph& truth, int i, int j, const NodeSet& z) {
    const int n = truth.node_count();
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("adjustment_valid_oracle: bad node index");
    if (i == j) throw std::invalid_argument("adjustment_valid_oracle: cause and effect coincide");
    for (int v : z)
        if (v == i) throw std::invalid_argument("adjustment_valid_oracle: cause node cannot be controlled");

    NodeSet zs = z;
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

    // Screen 1: collider opening. Controlled nodes leak to their parents;
    // the opening is sequential in ascending order and reads parents off the
    // already-opened graph.
    {
        Lists opened(truth);
        for (int v : zs) {
            std::vector<int> parents = opened.parents[v];
            for (int p : parents) {
                auto& ch = opened.children[v];
                if (std::find(ch.begin(), ch.end(), p) == ch.end()) {
                    ch.push_back(p);
                    opened.parents[p].push_back(v);
                }
            }
        }
        for (int v : zs)
            if (reaches(opened, i, v, j) && reaches(opened, v, j, j)) return false;
    }

    // Screen 2: any surviving confounding-shaped path.
    if (find_unblocked_confounding_path(truth, i, j, zs)) return false;

    // Screen 3: a controlled node descending from i (not through j).
    {
        Lists lists(truth);
        std::vector<char> seen(n, 0);
        collect_descendants(lists, i, j, seen);
        for (int v : zs)
            if (v != i && seen[v]) return false;
    }
    return true;
}

long ced_oracle(const CausalGraph& truth, const CausalGraph& pred, int max_nodes) {
    if (truth.node_count() != pred.node_count()) throw std::invalid_argument("ced_oracle: node count mismatch");
    const int n = truth.node_count();
    if (n > max_nodes)
        throw std::invalid_argument("ced_oracle: " + std::to_string(n) + " nodes exceed the enumeration budget of " +
                                    std::to_string(max_nodes));

    const auto g_reach = reach_oracle(truth);
    const auto a_reach = reach_oracle(pred);

    long total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (g_reach.get(i, j) != a_reach.get(i, j)) {
                ++total;
                continue;
            }
            NodeSet z;
            for (int p = 0; p < n; ++p)
                if (pred.edge(p, i)) z.push_back(p);
            if (!adjustment_valid_oracle(truth, i, j, z)) ++total;
        }
    return total;
}

namespace {

/// Colliders a -> b <- c (a < c, a and c non-adjacent) of a fully or
/// partially directed graph; undirected entries do not participate.
std::set<std::tuple<int, int, int>> collider_set(const CausalGraph& g) {
    std::set<std::tuple<int, int, int>> out;
    const int n = g.node_count();
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
            if (a == b || !g.edge(a, b) || g.edge(b, a)) continue;
            for (int c = a + 1; c < n; ++c) {
                if (c == b || !g.edge(c, b) || g.edge(b, c)) continue;
                if (g.edge(a, c) || g.edge(c, a)) continue;
                out.insert({a, b, c});
            }
        }
    return out;
}

}  // namespace

std::vector<CausalGraph> mec_oracle(const CausalGraph& g, int max_skeleton_edges) {
    const auto skeleton = g.skeleton_pairs();
    const int m = static_cast<int>(skeleton.size());
    if (m > max_skeleton_edges)
        throw std::invalid_argument("mec_oracle: " + std::to_string(m) + " skeleton edges exceed the budget of " +
                                    std::to_string(max_skeleton_edges));
    const auto base_colliders = collider_set(g);
    const int n = g.node_count();

    std::vector<CausalGraph> members;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
        BitMatrix adj(n);
        for (int e = 0; e < m; ++e) {
            auto [lo, hi] = skeleton[e];
            if (bits >> (m - 1 - e) & 1)
                adj.set(hi, lo);
            else
                adj.set(lo, hi);
        }
        if (!is_acyclic(adj)) continue;
        auto candidate = CausalGraph::make(g.labels(), std::move(adj));
        if (collider_set(candidate) != base_colliders) continue;
        members.push_back(std::move(candidate));
    }
    return members;
}

}  // namespace cgm::oracle
