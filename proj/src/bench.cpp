#include "cgm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cgm/effect_metrics.hpp"
#include "cgm/random_dag.hpp"

namespace cgm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(int n, std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(static_cast<std::uint64_t>(n) * 0x100000001b3ULL + seed) + stream);
}

}  // namespace

BenchResult bench_ced(const std::vector<int>& sizes, double density, int seeds, int jobs) {
    if (seeds < 1) throw std::invalid_argument("bench_ced: need at least one seed");
    std::vector<int> ordered = sizes;
    std::sort(ordered.begin(), ordered.end());

    BenchResult result;
    for (int n : ordered) {
        if (n < 2) throw std::invalid_argument("bench_ced: sizes must be >= 2");
        std::vector<double> times;
        for (int s = 0; s < seeds; ++s) {
            const CausalGraph truth = random_dag(n, density, derive_seed(n, s, 1));
            const CausalGraph pred = random_dag(n, density, derive_seed(n, s, 2));

            // Repeat sub-millisecond runs and report the per-call mean; the
            // value itself is deterministic across repetitions.
            long value = 0;
            int reps = 0;
            const auto start = std::chrono::steady_clock::now();
            std::chrono::duration<double, std::milli> spent{0};
            do {
                value = ced(truth, pred, jobs);
                ++reps;
                spent = std::chrono::steady_clock::now() - start;
            } while (spent.count() < 20.0 && reps < 1000);
            const double per_call = spent.count() / reps;

            result.rows.push_back({n, static_cast<std::uint64_t>(s), truth.entry_count(), value, per_call});
            times.push_back(per_call);
        }
        std::sort(times.begin(), times.end());
        const std::size_t mid = times.size() / 2;
        const double median =
            times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
        result.median_ms.emplace_back(n, median);
    }

    // Least-squares slope of log(median) against log(n).
    if (result.median_ms.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double count = static_cast<double>(result.median_ms.size());
        for (auto [n, ms] : result.median_ms) {
            const double x = std::log(static_cast<double>(n));
            const double y = std::log(std::max(ms, 1e-9));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        result.loglog_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    }
    return result;
}

std::string bench_csv(const BenchResult& result) {
    std::string out = "n,seed,edges,ced,elapsed_ms\n";
    char buf[160];
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%llu,%ld,%ld,%.6f\n", row.n,
                      static_cast<unsigned long long>(row.seed), row.edges, row.ced_value, row.elapsed_ms);
        out += buf;
    }
    return out;
}

}  // namespace cgm
