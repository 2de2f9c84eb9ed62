#pragma once

#include <random>
#include <vector>

#include "cgm/graph.hpp"
#include "cgm/random_dag.hpp"

namespace fixtures {

// Chain a -> b -> c.
inline cgm::CausalGraph chain3() { return cgm::parse_edge_list("a -> b\nb -> c"); }

// Chain with its second edge reversed: a -> b <- c (a collider at b).
inline cgm::CausalGraph chain3_rev23() { return cgm::parse_edge_list("a -> b\nc -> b"); }

// Chain with the second edge deleted.
inline cgm::CausalGraph chain3_drop() { return cgm::parse_edge_list("a -> b\nnode c"); }

// Fully reversed chain c -> b -> a; same equivalence class as chain3.
// Node declarations pin the a, b, c positional order shared by all fixtures.
inline cgm::CausalGraph chain3_full_rev() { return cgm::parse_edge_list("node a\nnode b\nb -> a\nc -> b"); }

// Collider a -> c <- b.
inline cgm::CausalGraph collider3() { return cgm::parse_edge_list("node a\nnode b\na -> c\nb -> c"); }

// Undirected chain a - b - c.
inline cgm::CausalGraph und3() { return cgm::parse_edge_list("a -- b\nb -- c"); }

inline cgm::CausalGraph und2() { return cgm::parse_edge_list("a -- b"); }

inline cgm::CausalGraph edgeless(int n) {
    return cgm::CausalGraph::make(cgm::BitMatrix(n));
}

/// Every labelled DAG on n nodes (all acyclic 0/1 assignments of the
/// off-diagonal cells). 25 graphs for n = 3, 543 for n = 4.
inline std::vector<cgm::CausalGraph> all_dags(int n) {
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) cells.emplace_back(i, j);
    std::vector<cgm::CausalGraph> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells.size()); ++bits) {
        cgm::BitMatrix adj(n);
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (bits >> c & 1) adj.set(cells[c].first, cells[c].second);
        if (!cgm::is_acyclic(adj)) continue;
        out.push_back(cgm::CausalGraph::make(std::move(adj)));
    }
    return out;
}

/// Arbitrary digraph (possibly cyclic, possibly with symmetric pairs);
/// each off-diagonal cell is set independently.
inline cgm::CausalGraph random_digraph(int n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    cgm::BitMatrix adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && coin(rng)) adj.set(i, j);
    return cgm::CausalGraph::make(std::move(adj));
}

inline cgm::CausalGraph random_dag_sample(int n, double density, std::mt19937_64& rng) {
    return cgm::random_dag(n, density, rng());
}

}  // namespace fixtures
