#pragma once

#include <optional>
#include <vector>

#include "cgm/graph.hpp"
#include "cgm/reachability.hpp"

namespace cgm::oracle {

/// Slow definition-level re-implementations used by the test suites as an
/// anti-drift anchor. Everything here works on plain adjacency lists with
/// recursive searches and explicit path enumeration; nothing is shared with
/// the bit-matrix code paths beyond the graph type itself.

/// Depth-first closure with a reflexive diagonal.
ReachabilityMatrix reach_oracle(const CausalGraph& g);

enum class EdgeMark { Forward, Backward, Undirected };

/// A concrete simple path, kept as evidence for why a check fired.
struct PathWitness {
    std::vector<int> nodes;            // consecutive nodes, adjacent in g
    std::vector<EdgeMark> edge_marks;  // one mark per step
    std::optional<int> blocked_by;     // first controlled node on the path, if any
};

/// Searches for a simple path of confounding shape i <- ... <- k -> ... -> j
/// (the apex k may be j itself, giving i <- ... <- j) that avoids every node
/// of z. Such a path is exactly what the fast confounder screen detects.
std::optional<PathWitness> find_unblocked_confounding_path(const CausalGraph& g, int i, int j, const NodeSet& z);

/// All confounding-shaped simple paths between i and j, each annotated with
/// the first node of z lying on it (blocked_by empty means unblocked).
std::vector<PathWitness> confounding_paths(const CausalGraph& g, int i, int j, const NodeSet& z);

/// Reference adjustment-set check; agrees with adjustment_valid() by
/// construction of the same three screens from their definitions:
///   1. after opening the colliders of z (ascending, reading parents off the
///      partially opened graph) and discarding j's outgoing edges, no z may
///      be reachable from i while also reaching j;
///   2. no confounding-shaped path from i to j may avoid z entirely;
///   3. no member of z may be a descendant of i when walks through j's
///      outgoing edges are discarded.
/// Exponential in the worst case; intended for small n.
bool adjustment_valid_oracle(const CausalGraph& truth, int i, int j, const NodeSet& z);

/// Literal evaluation of the effect distance: closure disagreements counted
/// entrywise, plus one per agreeing ordered pair whose predicted parent set
/// fails the reference check. Guarded by a node budget.
long ced_oracle(const CausalGraph& truth, const CausalGraph& pred, int max_nodes = 8);

/// Brute force over every orientation of the skeleton: keeps the acyclic
/// ones whose collider set matches the input's exactly.
std::vector<CausalGraph> mec_oracle(const CausalGraph& g, int max_skeleton_edges = 16);

}  // namespace cgm::oracle
