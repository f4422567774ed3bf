#include "graphcheck/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace graphcheck {

Graph::Graph(int n, std::set<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("Graph: node count must be positive");
    for (const Edge& e : edges_) {
        if (e.u == e.v)
            throw std::invalid_argument("Graph: self-loop on node " + std::to_string(e.u));
        if (e.u < 1 || e.v > n_)
            throw std::invalid_argument("Graph: edge endpoint out of range [1," +
                                        std::to_string(n_) + "]");
    }
}

int Graph::degree(int node) const {
    int d = 0;
    for (const Edge& e : edges_)
        if (e.u == node || e.v == node) ++d;
    return d;
}

bool Graph::is_complete() const {
    return edges_.size() == static_cast<std::size_t>(n_) * (n_ - 1) / 2;
}

MarkedSet::MarkedSet(std::vector<int> ids) : members(std::move(ids)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool MarkedSet::contains(int node) const {
    return std::binary_search(members.begin(), members.end(), node);
}

StochasticMatrix::StochasticMatrix(int n, std::vector<double> entries, MarkedSet marked)
    : n_(n), entries_(std::move(entries)), marked_(std::move(marked)) {
    if (entries_.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("StochasticMatrix: entry count mismatch");
    for (int r = 0; r < n_; ++r) {
        double sum = 0.0;
        for (int c = 0; c < n_; ++c) {
            if (entries_[r * n_ + c] < 0.0)
                throw std::invalid_argument("StochasticMatrix: negative entry");
            sum += entries_[r * n_ + c];
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("StochasticMatrix: row " + std::to_string(r + 1) +
                                        " does not sum to 1");
    }
    for (int node : marked_.members) {
        if (node < 1 || node > n_)
            throw std::invalid_argument("StochasticMatrix: marked node out of range");
    }
}

Graph parse_edge_list(std::istream& in) {
    int n = 0;
    std::set<Edge> edges;
    std::string line;
    int lineno = 0;
    bool saw_anything = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        saw_anything = true;
        if (first == "n") {
            int header;
            if (!(ls >> header) || header < 1)
                throw std::runtime_error("parse error on line " + std::to_string(lineno) +
                                         ": bad header");
            n = std::max(n, header);
            continue;
        }
        int u, v;
        std::istringstream us(first);
        if (!(us >> u) || !us.eof() || !(ls >> v))
            throw std::runtime_error("parse error on line " + std::to_string(lineno) +
                                     ": expected two integers");
        std::string trailing;
        if (ls >> trailing)
            throw std::runtime_error("parse error on line " + std::to_string(lineno) +
                                     ": trailing token '" + trailing + "'");
        if (u == v)
            throw std::runtime_error("self-loop on line " + std::to_string(lineno));
        if (u < 1 || v < 1)
            throw std::runtime_error("parse error on line " + std::to_string(lineno) +
                                     ": node ids are 1-indexed");
        n = std::max({n, u, v});
        edges.insert(Edge(u, v));
    }
    if (!saw_anything) throw std::runtime_error("empty edge-list input");
    return Graph(n, std::move(edges));
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

Graph parse_adjacency_csv(std::istream& in) {
    std::vector<std::vector<int>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<int> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            std::istringstream cs(cell);
            int v;
            if (!(cs >> v) || (v != 0 && v != 1))
                throw std::runtime_error("adjacency CSV: bad entry on line " +
                                         std::to_string(lineno));
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("empty adjacency CSV input");
    int n = static_cast<int>(rows.size());
    std::set<Edge> edges;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::runtime_error("adjacency CSV: matrix is not square");
        if (rows[i][i] != 0)
            throw std::runtime_error("adjacency CSV: self-loop on node " + std::to_string(i + 1));
        for (int j = i + 1; j < n; ++j) {
            if (rows[i][j] != rows[j][i])
                throw std::runtime_error("adjacency CSV: matrix is not symmetric");
            if (rows[i][j]) edges.insert(Edge(i + 1, j + 1));
        }
    }
    return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete_graph: n must be >= 1");
    std::set<Edge> edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) edges.insert(Edge(u, v));
    return Graph(n, std::move(edges));
}

Graph remove_edges(const Graph& g, const std::vector<Edge>& victims) {
    std::set<Edge> edges = g.edges();
    for (const Edge& e : victims) {
        if (edges.erase(e) == 0)
            throw std::invalid_argument("remove_edges: {" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + "} is not an edge");
    }
    return Graph(g.n(), std::move(edges));
}

StochasticMatrix transition_matrix(const Graph& g) {
    const int n = g.n();
    std::vector<int> deg(n, 0);
    for (const Edge& e : g.edges()) {
        ++deg[e.u - 1];
        ++deg[e.v - 1];
    }
    for (int i = 0; i < n; ++i)
        if (deg[i] == 0)
            throw std::invalid_argument("transition_matrix: isolated vertex " +
                                        std::to_string(i + 1));
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
    for (const Edge& e : g.edges()) {
        entries[(e.u - 1) * static_cast<std::size_t>(n) + (e.v - 1)] = 1.0 / deg[e.u - 1];
        entries[(e.v - 1) * static_cast<std::size_t>(n) + (e.u - 1)] = 1.0 / deg[e.v - 1];
    }
    return StochasticMatrix(n, std::move(entries), MarkedSet{});
}

StochasticMatrix mark_nodes(const StochasticMatrix& p, const MarkedSet& m) {
    if (p.marked().m() != 0)
        throw std::invalid_argument("mark_nodes: input matrix already has marked nodes");
    const int n = p.n();
    for (int node : m.members)
        if (node < 1 || node > n)
            throw std::invalid_argument("mark_nodes: node " + std::to_string(node) +
                                        " out of range");
    std::vector<double> entries = p.entries();
    for (int node : m.members) {
        const int r = node - 1;
        for (int c = 0; c < n; ++c) entries[r * static_cast<std::size_t>(n) + c] = 0.0;
        entries[r * static_cast<std::size_t>(n) + r] = 1.0;
    }
    return StochasticMatrix(n, std::move(entries), m);
}

bool is_complete_classical(const Graph& g) { return g.is_complete(); }

int optimal_marked_count(int n, double a) {
    if (n < 4) throw std::invalid_argument("optimal_marked_count: graph too small for optimal marking");
    if (a <= 1.0) throw std::invalid_argument("optimal_marked_count: a must exceed 1");
    const double ideal = (n - 1) / a;
    int m = static_cast<int>(std::floor(ideal + 0.5));  // ties round up
    m = std::max(1, std::min(m, n - 1));
    return m;
}

}  // namespace graphcheck
