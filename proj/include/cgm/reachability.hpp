#pragma once

#include "cgm/bitmatrix.hpp"
#include "cgm/graph.hpp"

namespace cgm {

/// Descendant-closure matrix with a reflexive diagonal: reach(i,j) = 1 iff
/// j = i or a directed path i -> ... -> j exists (undirected edges are
/// traversable both ways under the symmetric encoding). The diagonal is part
/// of the contract; the effect metrics rely on it.
struct ReachabilityMatrix {
    int n = 0;
    BitMatrix reach;

    bool get(int i, int j) const { return reach.get(i, j); }
};

ReachabilityMatrix reachability(const CausalGraph& g);

}  // namespace cgm
