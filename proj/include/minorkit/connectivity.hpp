#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "minorkit/generators.hpp"
#include "minorkit/graph.hpp"
#include "minorkit/minor_oracle.hpp"
#include "minorkit/width_params.hpp"

#include <json.hpp>

namespace minorkit {

// Exact rational in (0,1], used for balance thresholds.  Comparisons are done
// by cross-multiplication; no floating point anywhere.
struct Rational {
    long long num = 2;
    long long den = 3;
};

// A separation (A,B): A u B = V and no edge joins A\B to B\A.  Its order is
// |A n B|.
struct Separation {
    VertexSet a;
    VertexSet b;
    int order() const;
    bool operator==(const Separation& o) const { return a == o.a && b == o.b; }
    bool operator<(const Separation& o) const;
};

bool validate_separation(const Graph& g, const Separation& s);

// All separations of order < k, both orientations, in canonical sorted order.
// Exhaustive; throws BudgetError past `limit` generated separations.
std::vector<Separation> enumerate_separations(const Graph& g, int k,
                                              std::int64_t limit = 4000000);

// ---------------------------------------------------------------------------
// Well-linked sets.

struct WellLinkedCertificate {
    VertexSet s;
    int q = 0;
    Rational alpha;
    bool well_linked = false;
    // When not well-linked: a balanced separator X with |X| <= q such that
    // every component of G - X holds at most alpha*|S| vertices of S.
    std::optional<VertexSet> witness;
};

// Exhaustive test whether S has no alpha-balanced separator of size <= q.
WellLinkedCertificate is_well_linked(const Graph& g, const VertexSet& s, int q,
                                     Rational alpha);

// ---------------------------------------------------------------------------
// Vertex Menger machinery (unit-capacity vertex-split max-flow).

// Maximum number of pairwise vertex-disjoint X-Y paths (shared vertices count
// as zero-length paths).
int max_disjoint_paths(const Graph& g, const VertexSet& x, const VertexSet& y);

// That many explicit pairwise vertex-disjoint X-Y paths, each a host vertex
// sequence from a vertex of X to a vertex of Y.
std::vector<std::vector<int>> disjoint_paths(const Graph& g, const VertexSet& x,
                                             const VertexSet& y);

// A minimum-order separation (A,B) with X in A and Y in B whose separator
// A n B is the lexicographically smallest minimum X-Y vertex cut.
Separation min_order_separation(const Graph& g, const VertexSet& x, const VertexSet& y);

// ---------------------------------------------------------------------------
// Strongly linked sets.

struct StrongLinkResult {
    bool strongly_linked = false;
    // When false: a bipartition (s1,s2) of S and a separation of order
    // < min(|s1|,|s2|) with s1 in A and s2 in B.
    VertexSet s1, s2;
    std::optional<Separation> violation;
};

// Exact bipartition-enumeration check; |s| <= 14.
StrongLinkResult is_strongly_linked(const Graph& g, const VertexSet& s);

// ---------------------------------------------------------------------------
// Free sets.

// An S-free set of size k-1, built by the iterative separation-pushing
// construction.  Requires S to be (k,alpha)-well-linked; violations detected
// mid-run (including by re-checking S-freeness against all enumerated
// separations of order < min(|F|, verify_order_cap)) raise DomainError.
VertexSet free_set(const Graph& g, const VertexSet& s, Rational alpha, int k,
                   int verify_order_cap = 4);

// Direct definition check: F is S-free iff for every separation of order
// < |F| with F contained in one side, that side carries more than alpha*|S|
// vertices of S.  Checks separations of order < min(|F|, order_cap).
bool is_s_free(const Graph& g, const VertexSet& f, const VertexSet& s, Rational alpha,
               int order_cap = 64);

// ---------------------------------------------------------------------------
// Tangles.

struct Tangle {
    int order = 0;
    std::vector<Separation> oriented;  // one orientation per separation of order < `order`
};

// Throws DomainError naming the violated axiom (incomplete orientation, both
// orientations present, foreign separation, or a triple violating the
// three-small-sides axiom).
void validate_tangle(const Graph& g, const Tangle& t);

// T_F = {(A,B) of order < k : |B n F| > 2k}; requires |f| >= 3k.
Tangle tangle_from_free_set(const Graph& g, const VertexSet& f, int k);

// T_S = {(A,B) of order <= q : |S n B| > alpha*|S|} for a (q,alpha)-well-linked S.
Tangle tangle_from_welllinked(const Graph& g, const VertexSet& s, int q, Rational alpha);

// A wall embedded in a host graph: per-row and per-column vertex sets of the
// (subdivided) row and column paths.
struct EmbeddedWall {
    int k = 0;
    VertexSet vertices;
    std::vector<std::pair<int, int>> edges;  // edges of the wall subgraph, in host ids
    std::vector<VertexSet> rows;             // k row paths
    std::vector<VertexSet> cols;             // k column paths
};

// Layout of an elementary wall inside its own vertex numbering (k >= 2; the
// 2-wall degenerates to a 6-cycle).
EmbeddedWall elementary_wall_layout(int k);

// The tangle induced by the wall: orient each separation of order < k towards
// the side whose exclusive part contains a full row and a full column.
Tangle tangle_of_wall(const Graph& g, const EmbeddedWall& w);

// T1 is a truncation (restriction) of T2: order(T1) <= order(T2) and every
// oriented separation of T1 appears in T2.
bool is_truncation(const Tangle& t1, const Tangle& t2);

nlohmann::json tangle_to_json(const Tangle& t);
Tangle tangle_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Augment or separate.

struct AugmentResult {
    enum class Kind { paths, separation, safe_edge } kind;
    std::vector<std::vector<int>> paths;      // kind == paths: k disjoint X-Y paths
    std::optional<Separation> sep;            // kind == separation: pushed (A',B')
    std::optional<std::pair<int, int>> edge;  // kind == safe_edge: X stays strongly linked in G - e
};

// Either k pairwise vertex-disjoint X-Y paths, or (for strongly linked X and Y
// with |X| >= k and |Y| >= 3k) a pushed separation or a deletable edge of the
// Y-side.  The path outcome is returned whenever it exists; the other two
// outcomes enforce the preconditions and are verified before being returned.
AugmentResult augment_or_separate(const Graph& g, const VertexSet& x, const VertexSet& y, int k);

// ---------------------------------------------------------------------------
// Growing a wall from a well-linked set (desk scale: k in {2,3}, n <= 40).

struct WallResult {
    enum class Status { found, no_wall } status;
    std::optional<EmbeddedWall> wall;       // found
    std::optional<MinorModel> model;        // found: the pruned branch-set model
    std::optional<Tangle> tangle;           // found: T_W, validated
    std::optional<VertexSet> free_vertices; // found: the free set F used for T_F
    std::optional<AnnotatedValue> tw;       // no_wall: exact treewidth certificate
};

// Free set -> wall search (subgraph fast path, then exhaustive minor search)
// -> subdivision extraction -> verification that T_W is a truncation of both
// T_F and (the order-<k part of) T_S.  If verification fails, an edge of the
// current graph whose deletion keeps F strongly linked is removed and the
// search repeats.  `no_wall` carries an exact treewidth certificate.
WallResult wall_from_welllinked(const Graph& g, const VertexSet& s, int k,
                                const SearchBudget& budget = {});

}  // namespace minorkit
