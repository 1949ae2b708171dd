#include "minorkit/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace minorkit {

Graph read_dimacs(std::istream& in) {
    std::string line;
    int n = -1, m = -1;
    Graph g;
    int seen_edges = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        char tag;
        ls >> tag;
        if (tag == 'p') {
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "edge" || n < 0 || m < 0)
                throw DomainError("dimacs: malformed problem line: " + line);
            g = Graph(n);
        } else if (tag == 'e') {
            if (n < 0) throw DomainError("dimacs: edge before problem line");
            int u, v;
            if (!(ls >> u >> v) || u < 1 || v < 1 || u > n || v > n)
                throw DomainError("dimacs: malformed edge line: " + line);
            g.add_edge(u - 1, v - 1);
            ++seen_edges;
        } else {
            throw DomainError("dimacs: unknown line: " + line);
        }
    }
    if (n < 0) throw DomainError("dimacs: missing problem line");
    if (seen_edges != m) throw DomainError("dimacs: edge count mismatch");
    return g;
}

void write_dimacs(std::ostream& out, const Graph& g) {
    out << "p edge " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (auto [u, v] : g.edge_list()) out << "e " << u + 1 << " " << v + 1 << "\n";
}

void write_dot(std::ostream& out, const Graph& g, const std::string& name) {
    out << "graph " << name << " {\n";
    for (int v = 0; v < g.num_vertices(); ++v) out << "  " << v << ";\n";
    for (auto [u, v] : g.edge_list()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.num_vertices();
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edge_list()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

Graph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw DomainError("graph json: expected object with \"n\" and \"edges\"");
    Graph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw DomainError("graph json: malformed edge");
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return g;
}

}  // namespace minorkit
