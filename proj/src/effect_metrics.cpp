#include "cgm/effect_metrics.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

#include "cgm/cpdag.hpp"
#include "cgm/reachability.hpp"

namespace cgm {

std::string_view to_string(AdjustmentFailure f) {
    switch (f) {
        case AdjustmentFailure::None: return "none";
        case AdjustmentFailure::OpenedColliderPath: return "opened_collider_path";
        case AdjustmentFailure::UnblockedConfoundingPath: return "unblocked_confounding_path";
        case AdjustmentFailure::DescendantInZ: return "descendant_in_z";
    }
    return "?";
}

NodeSet parents_in(const CausalGraph& g, int i) {
    if (i < 0 || i >= g.node_count()) throw std::invalid_argument("parents_in: node index out of range");
    NodeSet parents;
    for (int z = 0; z < g.node_count(); ++z)
        if (g.edge(z, i)) parents.push_back(z);
    return parents;
}

namespace {

void require_same_nodes(const CausalGraph& truth, const CausalGraph& pred, const char* op) {
    if (truth.node_count() != pred.node_count())
        throw std::invalid_argument(std::string(op) + ": node count mismatch (" + std::to_string(truth.node_count()) +
                                    " vs " + std::to_string(pred.node_count()) + ")");
}

NodeSet normalized(NodeSet z) {
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());
    return z;
}

}  // namespace

ControlledReach controlled_reach(const CausalGraph& truth, int i, int j, const NodeSet& z) {
    const int n = truth.node_count();
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("controlled_reach: node index out of range");

    BitMatrix t = truth.adj();
    for (int v : z) {
        t.zero_row(v);
        t.zero_column(v);
    }
    t.zero_row(i);
    t = transitive_closure(std::move(t));

    BitMatrix h = truth.adj();
    for (int v : z) {
        // Parents are read off the already-modified matrix, so earlier
        // openings feed later ones; ascending order keeps this reproducible.
        for (int p = 0; p < n; ++p)
            if (h.get(p, v)) h.set(v, p);
    }
    h.zero_row(j);
    h = transitive_closure(std::move(h));

    BitMatrix m = truth.adj();
    m.zero_row(j);
    m = transitive_closure(std::move(m));
    m.set(i, i, false);
    m.set(j, j, false);

    return {std::move(t), std::move(h), std::move(m)};
}

AdjustmentCheck adjustment_valid(const CausalGraph& truth, int i, int j, const NodeSet& z_in) {
    const int n = truth.node_count();
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("adjustment_valid: node index out of range");
    if (i == j) throw std::invalid_argument("adjustment_valid: cause and effect coincide");
    const NodeSet z = normalized(z_in);
    for (int v : z) {
        if (v < 0 || v >= n) throw std::invalid_argument("adjustment_valid: control node out of range");
        if (v == i) throw std::invalid_argument("adjustment_valid: cause node cannot be controlled");
    }

    AdjustmentCheck result;
    result.cause = i;
    result.effect = j;
    result.z = z;

    const ControlledReach cr = controlled_reach(truth, i, j, z);

    for (int v : z)
        if (cr.h_reach.get(i, v) && cr.h_reach.get(v, j)) {
            result.failure = AdjustmentFailure::OpenedColliderPath;
            return result;
        }

    for (int k = 0; k < n; ++k)
        if (cr.t_reach.get(k, i) && cr.t_reach.get(k, j)) {
            result.failure = AdjustmentFailure::UnblockedConfoundingPath;
            return result;
        }

    for (int v : z)
        if (cr.m_reach.get(i, v)) {
            result.failure = AdjustmentFailure::DescendantInZ;
            return result;
        }

    result.valid = true;
    return result;
}

namespace {

// Batch evaluator for the per-pair adjustment checks. Verdicts are bitwise
// identical to adjustment_valid(); the closures are replaced by per-pair
// breadth-first sweeps so an n x n pair loop stays near O(n^2) words per
// pair instead of a full matrix power.
class PairCheckEngine {
public:
    PairCheckEngine(const CausalGraph& truth, const CausalGraph& pred)
        : n_(truth.node_count()),
          words_(truth.adj().words_per_row()),
          adj_(truth.adj()),
          adj_t_(truth.adj().transposed()),
          pred_parents_(pred.adj().transposed()) {}

    /// Counts ordered pairs (i, j), i != j, accepted by `filter` whose
    /// predicted parent set fails the check. Splitting across threads does
    /// not change the sum.
    long count_invalid(const std::function<bool(int, int)>& filter, int jobs) const {
        jobs = std::max(1, jobs);
        if (jobs == 1) {
            long count = 0;
            Scratch s(n_, words_);
            for (int i = 0; i < n_; ++i) count += count_for_cause(i, filter, s);
            return count;
        }
        std::atomic<long> total{0};
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        workers.reserve(jobs);
        for (int t = 0; t < jobs; ++t)
            workers.emplace_back([&] {
                Scratch s(n_, words_);
                long local = 0;
                for (int i = next.fetch_add(1); i < n_; i = next.fetch_add(1)) local += count_for_cause(i, filter, s);
                total += local;
            });
        for (auto& w : workers) w.join();
        return total.load();
    }

private:
    using Row = std::vector<std::uint64_t>;

    struct Scratch {
        Scratch(int n, int words)
            : zmask(words), hmat(static_cast<std::size_t>(n) * words), hmat_t(static_cast<std::size_t>(n) * words),
              visited(words), other(words), acc(words), bwd_i(words) {}
        Row zmask;
        Row hmat, hmat_t;  // collider-opened copy of the truth graph
        Row visited, other, acc, bwd_i;
        std::vector<int> stack;
        std::vector<int> zlist;
    };

    static bool bit(const Row& r, int v) { return (r[v >> 6] >> (v & 63)) & 1u; }
    static void set_bit(Row& r, int v) { r[v >> 6] |= std::uint64_t{1} << (v & 63); }

    // Forward sweep from `start`; `skip` is reachable but never expanded
    // (its outgoing edges are treated as deleted). rows(u, out) fills the
    // neighbour word block of u.
    template <typename RowFn>
    void sweep(int start, int skip, Row& visited, std::vector<int>& stack, const RowFn& rows, Row& buf) const {
        std::fill(visited.begin(), visited.end(), 0);
        set_bit(visited, start);
        stack.clear();
        stack.push_back(start);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            if (u == skip) continue;
            rows(u, buf);
            for (int w = 0; w < words_; ++w) {
                std::uint64_t fresh = buf[w] & ~visited[w];
                visited[w] |= fresh;
                while (fresh) {
                    stack.push_back(w * 64 + std::countr_zero(fresh));
                    fresh &= fresh - 1;
                }
            }
        }
    }

    // Predecessor rows of the confounder-screen graph: rows and columns of Z
    // zeroed, row i zeroed.
    auto t_pred_rows(int i, Scratch& s) const {
        return [this, i, &s](int u, Row& out) {
            if (bit(s.zmask, u)) {
                std::fill(out.begin(), out.end(), 0);
                return;
            }
            auto r = adj_t_.row(u);
            for (int w = 0; w < words_; ++w) out[w] = r[w] & ~s.zmask[w];
            out[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
        };
    }

    long count_for_cause(int i, const std::function<bool(int, int)>& filter, Scratch& s) const {
        bool any = false;
        for (int j = 0; j < n_ && !any; ++j) any = (j != i && filter(i, j));
        if (!any) return 0;

        // Control set = predicted parents of i.
        auto zsrc = pred_parents_.row(i);
        std::copy(zsrc.begin(), zsrc.end(), s.zmask.begin());
        s.zlist.clear();
        for (int w = 0; w < words_; ++w) {
            std::uint64_t block = s.zmask[w];
            while (block) {
                s.zlist.push_back(w * 64 + std::countr_zero(block));
                block &= block - 1;
            }
        }

        if (!s.zlist.empty()) build_opened(s);

        // Backward reach of i in the controlled graph depends on j in no
        // way; compute it once per cause node.
        sweep(i, -1, s.bwd_i, s.stack, t_pred_rows(i, s), s.acc);

        long invalid = 0;
        for (int j = 0; j < n_; ++j) {
            if (j == i || !filter(i, j)) continue;
            if (!check_pair(i, j, s)) ++invalid;
        }
        return invalid;
    }

    // Collider opening for the H screen; depends on Z only, so it is done
    // once per cause node. Mirrors controlled_reach's sequential update.
    void build_opened(Scratch& s) const {
        for (int r = 0; r < n_; ++r) {
            auto src = adj_.row(r);
            auto srct = adj_t_.row(r);
            std::copy(src.begin(), src.end(), s.hmat.begin() + static_cast<std::size_t>(r) * words_);
            std::copy(srct.begin(), srct.end(), s.hmat_t.begin() + static_cast<std::size_t>(r) * words_);
        }
        for (int z : s.zlist) {
            auto* hrow = s.hmat.data() + static_cast<std::size_t>(z) * words_;
            const auto* parents = s.hmat_t.data() + static_cast<std::size_t>(z) * words_;
            for (int w = 0; w < words_; ++w) {
                std::uint64_t fresh = parents[w] & ~hrow[w];
                hrow[w] |= parents[w];
                while (fresh) {
                    const int p = w * 64 + std::countr_zero(fresh);
                    fresh &= fresh - 1;
                    s.hmat_t[static_cast<std::size_t>(p) * words_ + (z >> 6)] |= std::uint64_t{1} << (z & 63);
                }
            }
        }
    }

    bool check_pair(int i, int j, Scratch& s) const {
        // Screen 1: does controlling Z open an i -> z -> j bridge?
        if (!s.zlist.empty()) {
            sweep(i, j, s.visited, s.stack,
                  [&](int u, Row& out) {
                      const auto* r = s.hmat.data() + static_cast<std::size_t>(u) * words_;
                      std::copy(r, r + words_, out.begin());
                  },
                  s.acc);
            sweep(j, -1, s.other, s.stack,
                  [&](int u, Row& out) {
                      const auto* r = s.hmat_t.data() + static_cast<std::size_t>(u) * words_;
                      std::copy(r, r + words_, out.begin());
                  },
                  s.acc);
            for (int w = 0; w < words_; ++w)
                if (s.visited[w] & s.other[w] & s.zmask[w]) return false;
        }

        // Screen 2: common ancestors of i and j surviving the controls
        // (s.bwd_i holds the ancestors of i, precomputed per cause node).
        sweep(j, -1, s.other, s.stack, t_pred_rows(i, s), s.acc);
        for (int w = 0; w < words_; ++w)
            if (s.bwd_i[w] & s.other[w]) return false;

        // Screen 3: controlled nodes that descend from i (paths continuing
        // through j's outgoing edges do not count).
        if (!s.zlist.empty()) {
            sweep(i, j, s.visited, s.stack,
                  [&](int u, Row& out) {
                      auto r = adj_.row(u);
                      std::copy(r.begin(), r.end(), out.begin());
                  },
                  s.acc);
            s.visited[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
            for (int w = 0; w < words_; ++w)
                if (s.visited[w] & s.zmask[w]) return false;
        }
        return true;
    }

    int n_;
    int words_;
    const BitMatrix& adj_;
    BitMatrix adj_t_;
    BitMatrix pred_parents_;
};

}  // namespace

CedBreakdown ced_breakdown(const CausalGraph& truth, const CausalGraph& pred, int jobs) {
    require_same_nodes(truth, pred, "ced");
    const BitMatrix g_reach = transitive_closure(truth.adj());
    const BitMatrix a_reach = transitive_closure(pred.adj());

    CedBreakdown out;
    out.structural = g_reach.l1_distance(a_reach);

    PairCheckEngine engine(truth, pred);
    out.intervention =
        engine.count_invalid([&](int i, int j) { return g_reach.get(i, j) == a_reach.get(i, j); }, jobs);
    out.total = out.structural + out.intervention;
    return out;
}

long ced(const CausalGraph& truth, const CausalGraph& pred, int jobs) {
    return ced_breakdown(truth, pred, jobs).total;
}

long sid(const CausalGraph& truth, const CausalGraph& pred, int jobs) {
    require_same_nodes(truth, pred, "sid");
    if (truth.kind() == GraphKind::Cpdag)
        throw std::invalid_argument("sid: CPDAG truth is not supported");
    if (truth.kind() == GraphKind::Digraph) throw std::invalid_argument("sid: truth graph is cyclic");
    if (pred.kind() == GraphKind::Cpdag)
        throw std::invalid_argument("sid: predicted graph has undirected edges (use sid_range)");
    if (pred.kind() == GraphKind::Digraph) throw std::invalid_argument("sid: predicted graph is cyclic");

    PairCheckEngine engine(truth, pred);
    return engine.count_invalid([](int, int) { return true; }, jobs);
}

SidInterval sid_range(const CausalGraph& truth, const CausalGraph& pred, int max_undirected, int jobs) {
    require_same_nodes(truth, pred, "sid_range");
    if (truth.kind() != GraphKind::Dag) throw std::invalid_argument("sid_range: truth must be a DAG");
    if (pred.kind() == GraphKind::Digraph) throw std::invalid_argument("sid_range: predicted graph is cyclic");

    const auto members = enumerate_mec(pred, max_undirected);
    if (members.empty()) throw std::invalid_argument("sid_range: predicted graph has no consistent extension");

    SidInterval interval{std::numeric_limits<long>::max(), std::numeric_limits<long>::min()};
    for (const auto& m : members) {
        const long s = sid(truth, m, jobs);
        interval.lo = std::min(interval.lo, s);
        interval.hi = std::max(interval.hi, s);
    }
    return interval;
}

long kd(const CausalGraph& truth, const CausalGraph& pred) {
    require_same_nodes(truth, pred, "kd");
    return transitive_closure(truth.adj()).l1_distance(transitive_closure(pred.adj()));
}

double cbc(const CausalGraph& truth, const CausalGraph& pred) {
    require_same_nodes(truth, pred, "cbc");
    const int n = truth.node_count();

    BitMatrix mask(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (truth.edge(i, j) || truth.edge(j, i)) mask.set(i, j);
    const long entries = mask.popcount();
    if (entries == 0) throw std::invalid_argument("cbc: truth graph has no edges");

    const BitMatrix g_reach = transitive_closure(truth.adj());
    const BitMatrix a_reach = transitive_closure(pred.adj());
    long masked_diff = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (mask.get(i, j) && g_reach.get(i, j) != a_reach.get(i, j)) ++masked_diff;

    const double score = 1.0 - static_cast<double>(masked_diff) / static_cast<double>(entries);
    return std::clamp(score, 0.0, 1.0);
}

}  // namespace cgm
