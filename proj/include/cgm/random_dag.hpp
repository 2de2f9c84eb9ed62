#pragma once

#include <cstdint>

#include "cgm/graph.hpp"

namespace cgm {

/// Random DAG with exactly floor(density * n*(n-1)/2) edges.
///
/// Construction: draw a uniform random topological order, then sample that
/// many distinct order-respecting node pairs uniformly. Fully deterministic
/// for a given (n, density, seed).
CausalGraph random_dag(int n, double density, std::uint64_t seed);

}  // namespace cgm
