#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace graphcheck {

// Unordered vertex pair, stored with first < second. Node ids are 1-indexed
// at the API boundary and 0-indexed inside matrix code.
struct Edge {
    int u;
    int v;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph {
public:
    Graph(int n, std::set<Edge> edges);

    int n() const { return n_; }
    const std::set<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    bool has_edge(int u, int v) const { return edges_.count(Edge(u, v)) > 0; }
    int degree(int node) const;

    bool is_complete() const;

private:
    int n_;
    std::set<Edge> edges_;
};

struct MarkedSet {
    std::vector<int> members;  // sorted, unique, 1-indexed
    MarkedSet() = default;
    explicit MarkedSet(std::vector<int> ids);
    int m() const { return static_cast<int>(members.size()); }
    bool contains(int node) const;
};

// Row-stochastic transition matrix; row index = source vertex.
class StochasticMatrix {
public:
    StochasticMatrix(int n, std::vector<double> entries, MarkedSet marked);

    int n() const { return n_; }
    double operator()(int row, int col) const { return entries_[row * n_ + col]; }  // 0-indexed
    const std::vector<double>& entries() const { return entries_; }
    const MarkedSet& marked() const { return marked_; }

private:
    int n_;
    std::vector<double> entries_;
    MarkedSet marked_;
};

// Edge-list text: optional "n <int>" header, lines "u v", "#" comments.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

// Adjacency-matrix CSV with 0/1 entries, one row per line.
Graph parse_adjacency_csv(std::istream& in);

Graph complete_graph(int n);
Graph remove_edges(const Graph& g, const std::vector<Edge>& victims);

StochasticMatrix transition_matrix(const Graph& g);
StochasticMatrix mark_nodes(const StochasticMatrix& p, const MarkedSet& m);

bool is_complete_classical(const Graph& g);

// m* = nearest integer to (n-1)/a, exact halves round up.
int optimal_marked_count(int n, double a);

}  // namespace graphcheck
