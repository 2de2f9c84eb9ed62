#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cgm/bitmatrix.hpp"

namespace cgm {

/// Raised for malformed input files (CSV / edge list).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structural class of a graph, verified at construction.
///
/// Dag      -- fully oriented, acyclic, no symmetric entry pairs.
/// Cpdag    -- symmetric pairs encode undirected edges; the strictly
///             directed remainder is acyclic.
/// Digraph  -- anything else with a zero diagonal (some predictors emit
///             cyclic graphs; they are accepted and classified here).
enum class GraphKind { Dag, Cpdag, Digraph };

std::string_view to_string(GraphKind kind);

using NodeSet = std::vector<int>;

/// Node-labelled boolean adjacency matrix. adj(i,j) = 1 asserts the directed
/// edge i -> j; an undirected edge is stored as the symmetric pair
/// adj(i,j) = adj(j,i) = 1. Immutable after construction.
class CausalGraph {
public:
    /// Validates the matrix (square, zero diagonal, labels distinct and of
    /// matching length) and infers the kind.
    static CausalGraph make(std::vector<std::string> labels, BitMatrix adj);

    /// Convenience: labels generated as x0..x(n-1).
    static CausalGraph make(BitMatrix adj);

    int node_count() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const BitMatrix& adj() const { return adj_; }
    GraphKind kind() const { return kind_; }

    bool edge(int i, int j) const { return adj_.get(i, j); }

    /// Count of asserted directed entries (an undirected edge counts twice).
    long entry_count() const { return adj_.popcount(); }

    /// True iff the pair is stored symmetrically (undirected under the
    /// double-entry encoding).
    bool undirected(int i, int j) const { return adj_.get(i, j) && adj_.get(j, i); }

    bool has_undirected_edges() const;

    /// Unordered skeleton pairs (i < j) that carry any edge mark.
    std::vector<std::pair<int, int>> skeleton_pairs() const;

    /// Undirected pairs only (i < j).
    std::vector<std::pair<int, int>> undirected_pairs() const;

    int index_of(const std::string& label) const;

    /// Reorders nodes so that labels()[perm[k]] moves to position k.
    CausalGraph permuted(const std::vector<int>& perm) const;

private:
    CausalGraph(std::vector<std::string> labels, BitMatrix adj, GraphKind kind)
        : n_(adj.size()), labels_(std::move(labels)), adj_(std::move(adj)), kind_(kind) {}

    int n_;
    std::vector<std::string> labels_;
    BitMatrix adj_;
    GraphKind kind_;
};

/// True iff the directed graph induced by `adj` has no directed cycle
/// (symmetric pairs count as 2-cycles).
bool is_acyclic(const BitMatrix& adj);

/// Parses a 0/1 adjacency CSV. When `has_header` is set the first row gives
/// the node labels; otherwise labels are generated. Cells must be 0 or 1,
/// the matrix square, the diagonal zero.
CausalGraph parse_adjacency_csv(std::string_view text, bool has_header);

/// Header auto-detection: the first row is treated as a header iff any of
/// its cells is not a bare 0/1.
struct LoadedGraph {
    CausalGraph graph;
    bool labeled;  // true when labels came from the file itself
};
LoadedGraph parse_adjacency_csv_auto(std::string_view text);

/// Edge-list format: one declaration per nonempty line.
///   u -> v    directed edge
///   u -- v    undirected edge (stored symmetrically)
///   node u    declares an isolated node
/// Node order is first-appearance order. Conflicting redeclarations of a
/// pair (both directions directed, or directed plus undirected) are errors.
CausalGraph parse_edge_list(std::string_view text);

std::string to_csv(const CausalGraph& g, bool with_header);
std::string to_edge_list(const CausalGraph& g);

/// Detects edge-list vs CSV content and parses accordingly.
LoadedGraph parse_graph_auto(std::string_view text);

}  // namespace cgm
