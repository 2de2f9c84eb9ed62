#include "cgm/reachability.hpp"

namespace cgm {

ReachabilityMatrix reachability(const CausalGraph& g) {
    return {g.node_count(), transitive_closure(g.adj())};
}

}  // namespace cgm
