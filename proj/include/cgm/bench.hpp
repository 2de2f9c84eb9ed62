#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cgm {

struct BenchRow {
    int n = 0;
    std::uint64_t seed = 0;
    long edges = 0;
    long ced_value = 0;
    double elapsed_ms = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::vector<std::pair<int, double>> median_ms;  // per size, ascending n
    double loglog_slope = 0;                        // least-squares fit of log median vs log n
};

/// Effect-distance scaling run: for every (size, seed) two independent
/// random DAGs are generated at the given edge density and the ced call is
/// timed. Short runs are repeated internally and the per-call mean reported,
/// so small sizes yield stable numbers.
BenchResult bench_ced(const std::vector<int>& sizes, double density, int seeds, int jobs = 1);

/// CSV with header "n,seed,edges,ced,elapsed_ms".
std::string bench_csv(const BenchResult& result);

}  // namespace cgm
