#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minorkit/graph.hpp"
#include "minorkit/minor_oracle.hpp"
#include "minorkit/surfaces.hpp"

namespace minorkit {

struct TreeDecomposition {
    Graph tree;                   // acyclic, connected (one node per bag)
    std::map<int, VertexSet> bags;  // tree node -> bag
};

// Empty list means the decomposition is valid for g.
std::vector<std::string> validate_td(const Graph& g, const TreeDecomposition& td);
int td_width(const TreeDecomposition& td);
int td_adhesion(const TreeDecomposition& td);

Graph torso_at(const Graph& g, const TreeDecomposition& td, int node);

// Graph on x: G[x] plus, for each component C of G - x, a clique on N(C).
Graph torso_annotated(const Graph& g, const VertexSet& x);

struct AnnotatedValue {
    std::string param;
    int value = 0;
    std::optional<TreeDecomposition> td;   // decomposition witness (min-type)
    std::optional<MinorModel> model;       // minor witness (max-type)
};

// Exact treewidth by two independent methods which must agree; witness
// decomposition recovered from the optimal elimination order.
// Convention: the null graph has treewidth 0 (matching the annotated
// parameters, which are 0 on an empty annotation set).
AnnotatedValue treewidth_exact(const Graph& g, int cap = 15);
// The individual engines, exposed for agreement testing.
int treewidth_by_dp(const Graph& g, std::vector<int>* elimination_order = nullptr);
int treewidth_by_bb(const Graph& g);
TreeDecomposition td_from_elimination_order(const Graph& g, const std::vector<int>& order);

// Maximum treewidth over x-rooted minors, by exhaustive enumeration of full
// partitions of the components meeting x into connected x-hitting blocks.
AnnotatedValue tw_annotated(const Graph& g, const VertexSet& x, int max_host = 12);

// Independent cross-check: exact value when < 4 via the known treewidth
// obstruction minors (K3; K4; K5/octahedron/Wagner graph/pentagonal prism)
// searched as rooted minors. Returns 4 to mean "at least 4".
int tw_annotated_by_obstructions(const Graph& g, const VertexSet& x,
                                 const SearchBudget& budget = {10, 64, 100000000});

bool is_planar(const Graph& g);

// Minimum of param(g, x) over all x making g - x a member of the class; the
// fixed-x overload evaluates a single candidate modulator.
int modulator_value(const Graph& g, const std::function<bool(const Graph&)>& class_pred,
                    const std::function<int(const Graph&, const VertexSet&)>& param, int max_n = 12);
int modulator_value_at(const Graph& g, const VertexSet& x, const std::function<bool(const Graph&)>& class_pred,
                       const std::function<int(const Graph&, const VertexSet&)>& param);

std::vector<std::string> cliquesum_check(const Graph& g, const TreeDecomposition& td,
                                         const std::function<bool(const Graph&)>& torso_pred);
// Exhaustive clique-sum-closure membership (n <= 8): a decomposition all of
// whose torsos satisfy the predicate, or nullopt if provably none exists.
std::optional<TreeDecomposition> cliquesum_search(const Graph& g,
                                                  const std::function<bool(const Graph&)>& torso_pred);

struct ParamSpec {
    enum class Kind { genus_bg, sobs_bg, surface_bg } kind;
    int genus = 0;      // genus_bg
    SurfaceSet s;       // sobs_bg
    Surface sigma;      // surface_bg
};

// Maximum k with the relevant Dyck-grid pattern as a minor of g.
int param_eval(const Graph& g, const ParamSpec& spec, const SearchBudget& budget = {});

// PACE-style .td serialization.
void write_td(std::ostream& out, const TreeDecomposition& td, int n);
TreeDecomposition read_td(std::istream& in);

}  // namespace minorkit
