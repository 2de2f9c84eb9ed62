#include "cgm/graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cgm {

std::string_view to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Dag: return "DAG";
        case GraphKind::Cpdag: return "CPDAG";
        case GraphKind::Digraph: return "digraph";
    }
    return "?";
}

bool is_acyclic(const BitMatrix& adj) {
    const int n = adj.size();
    std::vector<int> indegree(n, 0);
    for (int i = 0; i < n; ++i) {
        auto r = adj.row(i);
        for (int w = 0; w < adj.words_per_row(); ++w) {
            std::uint64_t block = r[w];
            while (block) {
                ++indegree[w * 64 + std::countr_zero(block)];
                block &= block - 1;
            }
        }
    }

    std::vector<int> queue;
    queue.reserve(n);
    for (int i = 0; i < n; ++i)
        if (indegree[i] == 0) queue.push_back(i);

    int removed = 0;
    while (!queue.empty()) {
        const int u = queue.back();
        queue.pop_back();
        ++removed;
        auto r = adj.row(u);
        for (int w = 0; w < adj.words_per_row(); ++w) {
            std::uint64_t block = r[w];
            while (block) {
                const int v = w * 64 + std::countr_zero(block);
                block &= block - 1;
                if (--indegree[v] == 0) queue.push_back(v);
            }
        }
    }
    return removed == n;
}

namespace {

GraphKind infer_kind(const BitMatrix& adj) {
    const int n = adj.size();
    bool symmetric_pair = false;
    for (int i = 0; i < n && !symmetric_pair; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adj.get(i, j) && adj.get(j, i)) {
                symmetric_pair = true;
                break;
            }

    if (!symmetric_pair) return is_acyclic(adj) ? GraphKind::Dag : GraphKind::Digraph;

    // Strip symmetric pairs; the strictly directed remainder must be acyclic
    // for the symmetric pairs to be readable as undirected edges.
    BitMatrix strict(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (adj.get(i, j) && !adj.get(j, i)) strict.set(i, j);
    return is_acyclic(strict) ? GraphKind::Cpdag : GraphKind::Digraph;
}

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = "x" + std::to_string(i);
    return labels;
}

}  // namespace

CausalGraph CausalGraph::make(std::vector<std::string> labels, BitMatrix adj) {
    const int n = adj.size();
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("CausalGraph: label count does not match matrix size");
    for (int i = 0; i < n; ++i)
        if (adj.get(i, i)) throw std::invalid_argument("CausalGraph: nonzero diagonal (self-loop) at node " + labels[i]);

    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw std::invalid_argument("CausalGraph: empty node label");
        if (!seen.insert(l).second) throw std::invalid_argument("CausalGraph: duplicate node label '" + l + "'");
    }
    const GraphKind kind = infer_kind(adj);
    return CausalGraph(std::move(labels), std::move(adj), kind);
}

CausalGraph CausalGraph::make(BitMatrix adj) {
    return make(default_labels(adj.size()), std::move(adj));
}

bool CausalGraph::has_undirected_edges() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (undirected(i, j)) return true;
    return false;
}

std::vector<std::pair<int, int>> CausalGraph::skeleton_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (adj_.get(i, j) || adj_.get(j, i)) pairs.emplace_back(i, j);
    return pairs;
}

std::vector<std::pair<int, int>> CausalGraph::undirected_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (undirected(i, j)) pairs.emplace_back(i, j);
    return pairs;
}

int CausalGraph::index_of(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[i] == label) return i;
    throw std::invalid_argument("CausalGraph: unknown node label '" + label + "'");
}

CausalGraph CausalGraph::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permuted: bad permutation size");
    BitMatrix adj(n_);
    std::vector<std::string> labels(n_);
    for (int i = 0; i < n_; ++i) {
        labels[i] = labels_[perm[i]];
        for (int j = 0; j < n_; ++j)
            if (adj_.get(perm[i], perm[j])) adj.set(i, j);
    }
    return make(std::move(labels), std::move(adj));
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty() && current.back() == '\r') current.pop_back();
    if (!current.empty()) lines.push_back(current);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool is_binary_cell(const std::string& s) { return s == "0" || s == "1"; }

CausalGraph parse_csv_rows(const std::vector<std::string>& lines, std::size_t first_data_row,
                           std::vector<std::string> labels) {
    const std::size_t rows = lines.size() - first_data_row;
    if (rows == 0) throw ParseError("adjacency CSV: no data rows");
    const int n = static_cast<int>(rows);
    BitMatrix adj(n);
    for (std::size_t r = 0; r < rows; ++r) {
        auto cells = split_csv_row(lines[first_data_row + r]);
        if (static_cast<int>(cells.size()) != n)
            throw ParseError("adjacency CSV: matrix is not square (row " + std::to_string(r + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected " + std::to_string(n) + ")");
        for (int c = 0; c < n; ++c) {
            if (!is_binary_cell(cells[c]))
                throw ParseError("adjacency CSV: cell '" + cells[c] + "' at row " + std::to_string(r + 1) +
                                 ", column " + std::to_string(c + 1) + " is not 0/1");
            if (cells[c] == "1") {
                if (static_cast<int>(r) == c) throw ParseError("adjacency CSV: nonzero diagonal at row " + std::to_string(r + 1));
                adj.set(static_cast<int>(r), c);
            }
        }
    }
    try {
        if (labels.empty()) return CausalGraph::make(std::move(adj));
        return CausalGraph::make(std::move(labels), std::move(adj));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("adjacency CSV: ") + e.what());
    }
}

}  // namespace

CausalGraph parse_adjacency_csv(std::string_view text, bool has_header) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("adjacency CSV: empty input");
    std::vector<std::string> labels;
    std::size_t first_data_row = 0;
    if (has_header) {
        labels = split_csv_row(lines[0]);
        first_data_row = 1;
        if (lines.size() < 2) throw ParseError("adjacency CSV: header present but no data rows");
    }
    return parse_csv_rows(lines, first_data_row, std::move(labels));
}

LoadedGraph parse_adjacency_csv_auto(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("adjacency CSV: empty input");
    bool header = false;
    for (const auto& cell : split_csv_row(lines[0]))
        if (!is_binary_cell(cell)) {
            header = true;
            break;
        }
    return {parse_adjacency_csv(text, header), header};
}

CausalGraph parse_edge_list(std::string_view text) {
    auto lines = split_lines(text);
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    auto intern = [&](const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(labels.size());
        labels.push_back(name);
        index.emplace(name, id);
        return id;
    };

    // 0 = none, 1 = u->v, 2 = v->u, 3 = undirected; keyed by unordered pair.
    std::unordered_map<long long, int> marks;
    auto key = [](int a, int b) { return static_cast<long long>(std::min(a, b)) * 1000000 + std::max(a, b); };

    std::vector<std::tuple<int, int, bool>> edges;  // (from, to, undirected)
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = trim(lines[ln]);
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string a, op, b, extra;
        ss >> a >> op;
        if (a == "node" && !op.empty() && !(ss >> extra)) {
            intern(op);
            continue;
        }
        if (!(ss >> b) || (ss >> extra))
            throw ParseError("edge list: malformed line " + std::to_string(ln + 1) + ": '" + line + "'");
        if (op != "->" && op != "--")
            throw ParseError("edge list: unknown operator '" + op + "' on line " + std::to_string(ln + 1));
        if (a == b) throw ParseError("edge list: self-edge '" + a + "' on line " + std::to_string(ln + 1));

        const int u = intern(a);
        const int v = intern(b);
        const bool undirected = (op == "--");
        int mark;
        if (undirected)
            mark = 3;
        else
            mark = u < v ? 1 : 2;
        auto [it, fresh] = marks.emplace(key(u, v), mark);
        if (!fresh && it->second != mark)
            throw ParseError("edge list: conflicting declarations for pair " + a + ", " + b + " (line " +
                             std::to_string(ln + 1) + ")");
        if (fresh) edges.emplace_back(u, v, undirected);
    }

    const int n = static_cast<int>(labels.size());
    BitMatrix adj(n);
    for (auto [u, v, undirected] : edges) {
        adj.set(u, v);
        if (undirected) adj.set(v, u);
    }
    try {
        return CausalGraph::make(std::move(labels), std::move(adj));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("edge list: ") + e.what());
    }
}

std::string to_csv(const CausalGraph& g, bool with_header) {
    std::string out;
    const int n = g.node_count();
    if (with_header) {
        for (int j = 0; j < n; ++j) {
            if (j) out += ',';
            out += g.labels()[j];
        }
        out += '\n';
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out += ',';
            out += g.edge(i, j) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

std::string to_edge_list(const CausalGraph& g) {
    std::string out;
    const int n = g.node_count();
    // Declaring every node up front pins the node order, so a parse of the
    // output reproduces the adjacency matrix positionally (and isolated
    // nodes survive).
    for (int i = 0; i < n; ++i) out += "node " + g.labels()[i] + "\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!g.edge(i, j)) continue;
            if (g.edge(j, i)) {
                if (i < j) out += g.labels()[i] + " -- " + g.labels()[j] + "\n";
            } else {
                out += g.labels()[i] + " -> " + g.labels()[j] + "\n";
            }
        }
    return out;
}

LoadedGraph parse_graph_auto(std::string_view text) {
    for (const auto& line : split_lines(text)) {
        auto t = trim(line);
        if (t.empty()) continue;
        if (t.find("->") != std::string::npos || t.find("--") != std::string::npos || t.rfind("node ", 0) == 0)
            return {parse_edge_list(text), true};
        break;
    }
    return parse_adjacency_csv_auto(text);
}

}  // namespace cgm
