#include "cgm/random_dag.hpp"

#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cgm {

namespace {

// Rejection-sampled bounded draw; keeps the stream independent of the
// standard library's distribution implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % k;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % k;
}

}  // namespace

CausalGraph random_dag(int n, double density, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_dag: need at least 2 nodes");
    if (density < 0.0 || density > 1.0) throw std::invalid_argument("random_dag: density must be in [0, 1]");

    std::mt19937_64 rng(seed);

    // Uniform random topological order.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[bounded(rng, static_cast<std::uint64_t>(i) + 1)]);

    // All order-respecting position pairs; partial shuffle picks the budget.
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

    const auto total = static_cast<long long>(pairs.size());
    const auto budget = static_cast<long long>(density * static_cast<double>(total));
    for (long long k = 0; k < budget; ++k) {
        const auto pick = k + static_cast<long long>(bounded(rng, static_cast<std::uint64_t>(total - k)));
        std::swap(pairs[k], pairs[pick]);
    }

    BitMatrix adj(n);
    for (long long k = 0; k < budget; ++k) adj.set(order[pairs[k].first], order[pairs[k].second]);
    return CausalGraph::make(std::move(adj));
}

}  // namespace cgm
