#include "minorkit/graph.hpp"

#include <algorithm>
#include <queue>

namespace minorkit {

Graph Graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::add_edge(int u, int v) {
    check(u, "add_edge");
    check(v, "add_edge");
    if (u == v) throw DomainError("add_edge: loop at vertex " + std::to_string(u));
    if (has_edge(u, v)) return;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++m_;
}

bool Graph::has_edge(int u, int v) const {
    check(u, "has_edge");
    check(v, "has_edge");
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int target = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::find(a.begin(), a.end(), target) != a.end();
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
}

static std::vector<VertexSet> components_impl(const Graph& g, const std::vector<char>& inside) {
    int n = g.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<VertexSet> comps;
    for (int s = 0; s < n; ++s) {
        if (!inside[s] || seen[s]) continue;
        VertexSet comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.insert(u);
            for (int v : g.neighbors(u))
                if (inside[v] && !seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<VertexSet> connected_components(const Graph& g) {
    return components_impl(g, std::vector<char>(g.num_vertices(), 1));
}

std::vector<VertexSet> connected_components_within(const Graph& g, const VertexSet& inside) {
    std::vector<char> in(g.num_vertices(), 0);
    for (int v : inside) {
        if (v < 0 || v >= g.num_vertices()) throw DomainError("components_within: vertex out of range");
        in[v] = 1;
    }
    return components_impl(g, in);
}

bool is_connected_subset(const Graph& g, const VertexSet& s) {
    if (s.empty()) return false;
    return connected_components_within(g, s).size() == 1;
}

InducedResult induced_subgraph(const Graph& g, const VertexSet& keep) {
    InducedResult r;
    int idx = 0;
    for (int v : keep) {
        if (v < 0 || v >= g.num_vertices()) throw DomainError("induced_subgraph: vertex out of range");
        r.old_to_new[v] = idx++;
    }
    r.graph = Graph(idx);
    for (auto [u, v] : g.edge_list())
        if (r.old_to_new.count(u) && r.old_to_new.count(v)) r.graph.add_edge(r.old_to_new[u], r.old_to_new[v]);
    return r;
}

Graph contract_partition(const Graph& g, const Partition& parts) {
    std::vector<int> owner(g.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
        if (parts[i].empty()) throw DomainError("contract_partition: empty class " + std::to_string(i));
        if (!is_connected_subset(g, parts[i]))
            throw DomainError("contract_partition: class " + std::to_string(i) + " is not connected");
        for (int v : parts[i]) {
            if (owner[v] != -1)
                throw DomainError("contract_partition: vertex " + std::to_string(v) + " in classes " +
                                  std::to_string(owner[v]) + " and " + std::to_string(i));
            owner[v] = i;
        }
    }
    Graph out(static_cast<int>(parts.size()));
    for (auto [u, v] : g.edge_list())
        if (owner[u] != -1 && owner[v] != -1 && owner[u] != owner[v]) out.add_edge(owner[u], owner[v]);
    return out;
}

Graph with_clique(const Graph& g, const VertexSet& clique_on) {
    Graph out = g;
    for (auto it = clique_on.begin(); it != clique_on.end(); ++it)
        for (auto jt = std::next(it); jt != clique_on.end(); ++jt) out.add_edge(*it, *jt);
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph out(a.num_vertices() + b.num_vertices());
    for (auto [u, v] : a.edge_list()) out.add_edge(u, v);
    for (auto [u, v] : b.edge_list()) out.add_edge(u + a.num_vertices(), v + a.num_vertices());
    return out;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw DomainError("cycle_graph: need n >= 3");
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph grid_graph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw DomainError("grid_graph: dimensions must be positive");
    Graph g(rows * cols);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

}  // namespace minorkit
