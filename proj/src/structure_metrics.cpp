#include "cgm/structure_metrics.hpp"

#include <stdexcept>

#include "cgm/cpdag.hpp"

namespace cgm {

namespace {

void require_same_nodes(const CausalGraph& truth, const CausalGraph& pred, const char* op) {
    if (truth.node_count() != pred.node_count())
        throw std::invalid_argument(std::string(op) + ": node count mismatch (" + std::to_string(truth.node_count()) +
                                    " vs " + std::to_string(pred.node_count()) + ")");
}

void require_dag(const CausalGraph& g, const char* op, const char* which) {
    if (g.kind() == GraphKind::Cpdag)
        throw std::invalid_argument(std::string(op) + ": " + which + " graph has undirected edges");
    if (g.kind() == GraphKind::Digraph)
        throw std::invalid_argument(std::string(op) + ": " + which + " graph is cyclic");
}

}  // namespace

EditCounts edit_counts(const CausalGraph& truth, const CausalGraph& pred) {
    require_same_nodes(truth, pred, "edit_counts");
    require_dag(truth, "edit_counts", "truth");
    require_dag(pred, "edit_counts", "predicted");

    EditCounts counts;
    const int n = truth.node_count();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool t_fwd = truth.edge(i, j), t_bwd = truth.edge(j, i);
            const bool p_fwd = pred.edge(i, j), p_bwd = pred.edge(j, i);
            const bool t_any = t_fwd || t_bwd, p_any = p_fwd || p_bwd;
            if (t_any && p_any) {
                if (t_fwd != p_fwd) ++counts.fr;
            } else if (t_any) {
                ++counts.fd;
            } else if (p_any) {
                ++counts.fa;
            }
        }
    }
    return counts;
}

long csd(const CausalGraph& truth, const CausalGraph& pred) {
    require_same_nodes(truth, pred, "csd");
    return truth.adj().l1_distance(pred.adj());
}

double se_like(const CausalGraph& truth, const CausalGraph& pred, double alpha, double beta, double gamma) {
    const EditCounts c = edit_counts(truth, pred);
    return alpha * c.fa + beta * c.fd + gamma * c.fr;
}

SeWeights se_weights(SePreset preset, int n) {
    switch (preset) {
        case SePreset::Shd: return {1, 1, 1};
        case SePreset::Dshd: return {1, 1, 2};
        case SePreset::Hd: return {1, 1, 2};
        case SePreset::EditDistance: return {1, 1, 1};
        case SePreset::ReversedEdges: return {0, 0, 1};
        case SePreset::Mre: {
            const double s = 1.0 / (static_cast<double>(n) * n);
            return {s, s, 2 * s};
        }
        case SePreset::RelErr: return {1, 1, 2};
    }
    throw std::invalid_argument("se_weights: unknown preset");
}

long shd(const CausalGraph& truth, const CausalGraph& pred) {
    const EditCounts c = edit_counts(truth, pred);
    return c.fa + c.fd + c.fr;
}

long dshd(const CausalGraph& truth, const CausalGraph& pred) {
    const EditCounts c = edit_counts(truth, pred);
    return c.fa + c.fd + 2 * c.fr;
}

long shd_c(const CausalGraph& truth, const CausalGraph& pred) {
    require_same_nodes(truth, pred, "shd_c");
    if (truth.kind() == GraphKind::Digraph) throw std::invalid_argument("shd_c: truth graph is cyclic");
    if (pred.kind() == GraphKind::Digraph) throw std::invalid_argument("shd_c: predicted graph is cyclic");

    const CausalGraph t = truth.kind() == GraphKind::Dag ? dag_to_cpdag(truth) : truth;
    const CausalGraph p = pred.kind() == GraphKind::Dag ? dag_to_cpdag(pred) : pred;

    long mismatches = 0;
    const int n = t.node_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (t.edge(i, j) != p.edge(i, j) || t.edge(j, i) != p.edge(j, i)) ++mismatches;
    return mismatches;
}

ClassificationCounts classification_metrics(const CausalGraph& truth, const CausalGraph& pred) {
    require_same_nodes(truth, pred, "classification_metrics");
    require_dag(truth, "classification_metrics", "truth");
    require_dag(pred, "classification_metrics", "predicted");

    ClassificationCounts c;
    const int n = truth.node_count();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool t = truth.edge(i, j), p = pred.edge(i, j);
            if (t && p)
                ++c.tp;
            else if (!t && p)
                ++c.fp;
            else if (t && !p)
                ++c.fn;
            else
                ++c.tn;
        }
    return c;
}

}  // namespace cgm
