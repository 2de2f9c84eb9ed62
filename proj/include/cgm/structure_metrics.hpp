#pragma once

#include <cstdint>
#include <string>

#include "cgm/graph.hpp"

namespace cgm {

/// Edit tally between two DAGs over unordered node pairs.
///   fa -- falsely added    (prediction has an edge, truth has none)
///   fd -- falsely deleted  (truth has an edge, prediction has none)
///   fr -- falsely reversed (both have the pair, opposite direction)
struct EditCounts {
    long fa = 0;
    long fd = 0;
    long fr = 0;
};

/// Requires both graphs to be DAGs on the same node count; the edit taxonomy
/// is only defined for fully oriented edges.
EditCounts edit_counts(const CausalGraph& truth, const CausalGraph& pred);

/// Entrywise L1 distance between the adjacency matrices. Defined for any
/// pair of graphs (DAG, CPDAG or cyclic) with the same node count; under the
/// symmetric encoding a reversal costs 2, a missing or undirected-instead-of
/// -directed edge costs 1, and an undirected edge where none belongs costs 2.
long csd(const CausalGraph& truth, const CausalGraph& pred);

/// Weighted edit count alpha*FA + beta*FD + gamma*FR.
double se_like(const CausalGraph& truth, const CausalGraph& pred, double alpha, double beta, double gamma);

/// Named weightings of the edit count.
enum class SePreset { Shd, Dshd, Hd, EditDistance, ReversedEdges, Mre, RelErr };

struct SeWeights {
    double alpha, beta, gamma;
};

/// Weights for a preset; Mre scales by 1/n^2 and therefore needs the node
/// count. Hd and RelErr share Dshd's weights but stay distinct names so
/// reports stay readable.
SeWeights se_weights(SePreset preset, int n);

long shd(const CausalGraph& truth, const CausalGraph& pred);
long dshd(const CausalGraph& truth, const CausalGraph& pred);

/// SHD between class representatives: DAG inputs are first converted with
/// dag_to_cpdag, CPDAG inputs are used as-is; each unordered pair then
/// contributes 1 unless its mark pattern (absent / i->j / j->i / undirected)
/// matches exactly. Cyclic inputs are rejected.
long shd_c(const CausalGraph& truth, const CausalGraph& pred);

/// Ordered-pair confusion counts; tp + fp + fn + tn = n*(n-1).
struct ClassificationCounts {
    long tp = 0, fp = 0, fn = 0, tn = 0;

    // 0/0 conventions: precision/tpr/f1 are 0 when their denominator is 0,
    // fpr is 0 when fp + tn = 0.
    double precision() const { return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp); }
    double tpr() const { return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn); }
    double fpr() const { return fp + tn == 0 ? 0.0 : static_cast<double>(fp) / (fp + tn); }
    double f1() const { return 2 * tp + fp + fn == 0 ? 0.0 : 2.0 * tp / (2.0 * tp + fp + fn); }
};

ClassificationCounts classification_metrics(const CausalGraph& truth, const CausalGraph& pred);

}  // namespace cgm
