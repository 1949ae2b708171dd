#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minorkit/graph.hpp"

#include <json.hpp>

namespace minorkit {

struct MinorModel {
    Graph pattern;
    Graph host;
    std::map<int, VertexSet> branch_sets;  // pattern vertex -> host vertices
    std::optional<VertexSet> roots;        // annotation set X in the host
};

// Empty list means the model is valid.
std::vector<std::string> validate_model(const MinorModel& m);

struct SearchBudget {
    int max_pattern_vertices = 10;
    int max_host_vertices = 20;
    std::int64_t node_limit = 100000000;
};

enum class SearchStatus { found, none, budget_exceeded };

struct SearchResult {
    SearchStatus status;
    std::optional<MinorModel> model;  // set iff status == found
    std::int64_t nodes = 0;
};

// Exhaustive rooted-minor search. `none` is returned only on proven
// exhaustion; hitting a budget yields budget_exceeded.
SearchResult find_minor(const Graph& host, const Graph& pattern,
                        const std::optional<VertexSet>& roots = std::nullopt,
                        const SearchBudget& budget = {});

// Largest k with a (k x k)-grid X-minor (exact; throws BudgetError on exhaustion).
int bg_annotated(const Graph& g, const VertexSet& x, const SearchBudget& budget = {});

// Largest t with K_t as a minor.
int hadwiger(const Graph& g, const SearchBudget& budget = {});

// Independent grid-minor maximum via partition enumeration (n <= 8 hosts);
// used as a cross-check oracle against bg_annotated.
int bg_by_partitions(const Graph& g, const VertexSet& x);

nlohmann::json model_to_json(const MinorModel& m);
MinorModel model_from_json(const nlohmann::json& j);

}  // namespace minorkit
