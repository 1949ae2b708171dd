#pragma once

#include <iosfwd>
#include <string>

#include "minorkit/graph.hpp"

#include <json.hpp>

namespace minorkit {

// DIMACS-style edge list: "p edge <n> <m>" then m lines "e <u> <v>" (1-indexed).
Graph read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Graph& g);

// DOT (undirected).
void write_dot(std::ostream& out, const Graph& g, const std::string& name = "g");

// JSON: { "n": <int>, "edges": [[u,v], ...] } (0-indexed, sorted).
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace minorkit
