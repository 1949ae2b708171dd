#pragma once

#include <optional>
#include <vector>

#include "minorkit/graph.hpp"

#include <json.hpp>

namespace minorkit {

// A society (G, Omega): a graph together with a cyclic permutation of a set
// of boundary vertices.  `omega` lists the boundary in cyclic order; rotations
// and reflections of the sequence denote the same society.
struct Society {
    Graph graph;
    std::vector<int> omega;
};

// Throws DomainError unless omega vertices are distinct and present in graph.
void validate_society(const Society& soc);

// JSON: { "graph": <graph json>, "omega": [ints] }.
nlohmann::json society_to_json(const Society& soc);
Society society_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Segments of the cyclic order.

// A segment is S subset of V(Omega) with no s1,t1,s2,t2 (s in S, t outside)
// appearing in that cyclic order; equivalently, S forms at most one cyclic
// block of omega.
bool is_segment(const VertexSet& s, const std::vector<int>& omega);

// All segments: the empty set, every nonempty proper cyclic arc, and the
// trivial segment V(Omega).
std::vector<VertexSet> all_segments(const std::vector<int>& omega);

// The segment s-Omega-t: vertices from s to t inclusive along the cyclic
// order; when t immediately precedes s this is the trivial segment V(Omega).
VertexSet segment_between(int s, int t, const std::vector<int>& omega);

// ---------------------------------------------------------------------------
// Transactions.

// Maximum order of a transaction: max over disjoint segments A, B of the
// number of pairwise vertex-disjoint A-B paths.  Throws BudgetError when
// |omega| exceeds the enumeration budget.
int transaction_depth(const Society& soc, int max_omega = 32);

// Endpoint-pattern classification of a transaction under rotation and
// reflection of omega.  A thickness-1 configuration (a single path, or two
// interleaved paths) is reported as `cross`.
enum class TransactionShape { cross, crosscap, handle, planar, none };
struct TransactionClass {
    TransactionShape shape = TransactionShape::none;
    int thickness = 0;
};
TransactionClass classify_transaction(const std::vector<std::vector<int>>& paths,
                                      const std::vector<int>& omega);

// ---------------------------------------------------------------------------
// Crosses.

// A cross: disjoint paths P1 (s1..t1) and P2 (s2..t2), internally disjoint
// from V(Omega), with s1, s2, t1, t2 in cyclic order.
struct CrossPair {
    std::vector<int> p1, p2;
};

// Exhaustive search for a cross; nullopt proves absence.  Throws BudgetError
// past the path-enumeration budget.
std::optional<CrossPair> find_cross(const Society& soc,
                                    long long node_budget = 4000000);

// ---------------------------------------------------------------------------
// Linear decompositions.

// <X_1..X_n, v_1..v_n>: anchors in omega order, v_i in X_i, bags cover all
// vertices and edges, and each vertex's bag set is an interval of [n].
struct LinearDecomposition {
    std::vector<VertexSet> bags;
    std::vector<int> anchors;
    int adhesion() const;
    int width() const;
};

// Throws DomainError naming the violated condition.
void validate_linear_decomposition(const Society& soc, const LinearDecomposition& ld);

// Two-outcome contract: either a validated decomposition of adhesion <= 2*theta,
// or a transaction of order > theta as witness.  If the sweep construction
// exceeds the adhesion bound, throws DomainError (loud failure, never widened).
struct LinearDecompositionResult {
    std::optional<LinearDecomposition> decomposition;
    // Nonempty exactly when no decomposition: theta+1 disjoint A-B paths.
    std::vector<std::vector<int>> witness;
};
LinearDecompositionResult linear_decomposition(const Society& soc, int theta);

}  // namespace minorkit
