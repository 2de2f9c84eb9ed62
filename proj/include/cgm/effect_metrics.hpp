#pragma once

#include <cstdint>
#include <string_view>

#include "cgm/bitmatrix.hpp"
#include "cgm/graph.hpp"

namespace cgm {

/// Parents of node i: every z with an asserted edge z -> i. Under the
/// symmetric encoding this automatically includes undirected neighbours.
NodeSet parents_in(const CausalGraph& g, int i);

/// Outcome of the three-screen adjustment check, in check order. The first
/// failing screen is reported.
enum class AdjustmentFailure { None, OpenedColliderPath, UnblockedConfoundingPath, DescendantInZ };

std::string_view to_string(AdjustmentFailure f);

struct AdjustmentCheck {
    int cause = -1;   // i
    int effect = -1;  // j
    NodeSet z;
    bool valid = false;
    AdjustmentFailure failure = AdjustmentFailure::None;
};

/// The three controlled reachability matrices behind the adjustment check
/// for a pair (i, j) and control set Z, all built from the truth graph:
///
///   t_reach -- rows and columns of Z zeroed, row i zeroed, then closure.
///              Detects surviving common ancestors of i and j.
///   h_reach -- for each z in Z (ascending), edges z -> parents(z) added,
///              reading parents off the already-modified matrix; then row j
///              zeroed, then closure. Models the flow a controlled collider
///              opens up.
///   m_reach -- row j zeroed, closure, then the (i,i) and (j,j) diagonal
///              entries cleared. Reads off descendants of i that do not pass
///              through j's outgoing edges.
struct ControlledReach {
    BitMatrix t_reach;
    BitMatrix h_reach;
    BitMatrix m_reach;
};

ControlledReach controlled_reach(const CausalGraph& truth, int i, int j, const NodeSet& z);

/// Decides whether controlling `z` in `truth` licenses reading off the
/// effect of i on j. `z` is typically the predicted parent set of i and may
/// contain j itself: a controlled node is removed from the graph, so
/// controlling j blocks every path to it.
///
/// Screens, in order, with early exit:
///   1. collider opening:  sum_z h_reach[i][z] * h_reach[z][j] > 0
///   2. confounding:       sum_k t_reach[k][i] * t_reach[k][j] > 0
///      (the reflexive diagonal makes k = j flag "i descends from j")
///   3. descendant screen: some z in Z with m_reach[i][z] = 1
///
/// Errors: i == j, i in z, indices out of range.
AdjustmentCheck adjustment_valid(const CausalGraph& truth, int i, int j, const NodeSet& z);

struct CedBreakdown {
    long structural = 0;    // L1 distance between the reachability closures
    long intervention = 0;  // pairs with agreeing closure bits whose
                            // predicted parent set fails the check in truth
    long total = 0;
};

/// Causal effect distance: reachability L1 term plus, for every ordered pair
/// (i, j) with agreeing closure bits, one count if the predicted parent set
/// of i is not a usable control set for (i, j) in the truth graph.
/// Accepts DAGs, CPDAGs and cyclic predictions. `jobs` only parallelizes;
/// results are identical for any value.
long ced(const CausalGraph& truth, const CausalGraph& pred, int jobs = 1);
CedBreakdown ced_breakdown(const CausalGraph& truth, const CausalGraph& pred, int jobs = 1);

/// Count over all ordered pairs (i, j) of failed adjustment checks with the
/// predicted parent set; no structural term. Both graphs must be DAGs
/// (use sid_range for CPDAG predictions).
long sid(const CausalGraph& truth, const CausalGraph& pred, int jobs = 1);

struct SidInterval {
    long lo = 0;
    long hi = 0;
};

/// Min and max of sid(truth, m) over the consistent extensions of the
/// predicted graph. Throws when the extension enumeration limit is hit;
/// ced handles such graphs directly.
SidInterval sid_range(const CausalGraph& truth, const CausalGraph& pred, int max_undirected = 16, int jobs = 1);

/// Reachability L1 distance alone (ced's structural term).
long kd(const CausalGraph& truth, const CausalGraph& pred);

/// Reachability agreement over the truth skeleton:
/// 1 - (masked closure L1) / |E| where the mask is the symmetric skeleton
/// indicator of the truth graph and |E| counts its nonzero ordered entries.
/// Requires at least one truth edge.
double cbc(const CausalGraph& truth, const CausalGraph& pred);

}  // namespace cgm
