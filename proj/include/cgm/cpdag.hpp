#pragma once

#include <tuple>
#include <vector>

#include "cgm/graph.hpp"

namespace cgm {

/// Colliders a -> b <- c with a, c non-adjacent, normalized to a < c.
/// Only strictly directed edges participate.
std::vector<std::tuple<int, int, int>> v_structures(const CausalGraph& g);

/// Completed partially directed representative of the input DAG's
/// equivalence class: same skeleton, v-structure edges kept directed,
/// orientations propagated to a fixpoint, everything else stored as
/// undirected (symmetric) pairs.
CausalGraph dag_to_cpdag(const CausalGraph& g);

/// All consistent extensions of a partially directed graph: acyclic full
/// orientations of the undirected edges that introduce no new v-structure.
/// Output order is lexicographic on the orientation bit-vector over the
/// undirected pairs sorted by (i, j).
///
/// Throws when the number of undirected edges exceeds `max_undirected`
/// (enumeration would be exponential past that point).
std::vector<CausalGraph> enumerate_mec(const CausalGraph& g, int max_undirected = 16);

}  // namespace cgm
