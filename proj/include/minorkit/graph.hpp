#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace minorkit {

// Domain error: invalid input, unsatisfiable precondition, malformed data.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Resource-budget exhaustion (search node limits etc.).
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

using VertexSet = std::set<int>;

// Simple undirected graph on vertices 0..n-1.  No loops, no multi-edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n) {
        if (n < 0) throw DomainError("graph: negative vertex count");
    }

    static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return m_; }

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    // Sorted edge list, each edge as (min,max), lexicographic.
    std::vector<std::pair<int, int>> edge_list() const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && edge_list() == o.edge_list(); }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> adj_;
    void check(int v, const char* what) const {
        if (v < 0 || v >= n_) throw DomainError(std::string(what) + ": vertex " + std::to_string(v) + " out of range");
    }
};

// A partition of a subset of V(g) into vertex classes (classes need not cover V).
using Partition = std::vector<VertexSet>;

// Connected components, each sorted; components ordered by smallest vertex.
std::vector<VertexSet> connected_components(const Graph& g);
std::vector<VertexSet> connected_components_within(const Graph& g, const VertexSet& inside);
bool is_connected_subset(const Graph& g, const VertexSet& s);

// Induced subgraph on `keep`; mapping is the order-preserving old->new map.
struct InducedResult {
    Graph graph;
    std::map<int, int> old_to_new;
};
InducedResult induced_subgraph(const Graph& g, const VertexSet& keep);

// Contract each class of `parts` (classes must be disjoint, connected, nonempty);
// uncovered vertices are deleted. Result vertex i corresponds to parts[i].
// Edges: classes adjacent iff some host edge joins them (full realized adjacency).
Graph contract_partition(const Graph& g, const Partition& parts);

// Complete the vertex set `clique_on` into a clique (used by torso operations).
Graph with_clique(const Graph& g, const VertexSet& clique_on);

Graph disjoint_union(const Graph& a, const Graph& b);

// Named small graphs.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph grid_graph(int rows, int cols);  // rows x cols grid, row-major ids

}  // namespace minorkit
