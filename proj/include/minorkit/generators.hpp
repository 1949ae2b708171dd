#pragma once

#include <map>
#include <utility>
#include <vector>

#include "minorkit/graph.hpp"

#include <json.hpp>

namespace minorkit {

enum class TransactionKind { handle, crosscap };

struct TransactionRecord {
    TransactionKind kind;
    int position;  // block index along the outer cycle (1-based)
    // Each path runs between two cycle-1 vertices; interior vertices (if any)
    // are subdivision vertices.  Handles: 2m paths, first bundle then second.
    std::vector<std::vector<int>> paths;
};

struct LabeledGrid {
    Graph graph;
    // base-grid vertex -> (cycle index i in [1..m], position j in [1..n])
    std::map<int, std::pair<int, int>> coord;
    std::vector<TransactionRecord> transactions;
    VertexSet subdivision_vertices;
    VertexSet satellites;  // only used by the dhat variant
    int cycles = 0;        // m
    int cycle_length = 0;  // n

    int vertex_at(int cycle, int position) const;  // 1-based coordinates
};

LabeledGrid cylindrical_grid(int m, int n);

// Mixed surface grid of order k: base (k, 4(c+h+1)k)-cylindrical grid with the
// given kinds at positions 2..c+h+1; each transaction edge subdivided
// `subdivisions` times (0 = plain edges).
LabeledGrid mixed_surface_grid(int k, const std::vector<TransactionKind>& kinds, int subdivisions = 0);

// Dyck-grid: h handles then c crosscaps (c <= 2); (h,c) = (-1,2) means (0,0).
LabeledGrid dyck_grid(int h, int c, int k);

// Whole-cycle variants on the (k,4k)-cylindrical grid (annulus grid A_k):
// a single handle/crosscap transaction spanning the entire outer cycle.
LabeledGrid annulus_grid(int k);
LabeledGrid handle_grid(int k);
LabeledGrid crosscap_grid(int k);

struct Wall {
    Graph graph;
    std::map<int, std::pair<int, int>> coord;  // vertex -> (row, col), 1-based
};

Wall elementary_wall(int k);
// Perimeter cycle of a wall in its natural drawing, as a closed vertex sequence.
std::vector<int> wall_perimeter(const Wall& w);

Graph dyck_wall(int h, int c, int t);

// D-tilde: the Dyck-grid with the annulus block suppressed; base is the
// (k, 4(h+c)k)-cylindrical grid with transactions at blocks 1..h+c.
LabeledGrid dtilde(int h, int c, int k);
// D-hat: dtilde plus k(h+c) satellite vertices on 4-vertex outer-cycle paths.
LabeledGrid dhat(int h, int c, int k);

Graph crossed(int k);

struct HairyWall {
    Graph graph;
    VertexSet s;  // annotation vertices, one per branch-vertex path
    VertexSet x;  // pendant-path leaf tips, |x| as requested
};
HairyWall hairy_wall(int r, int x);

nlohmann::json labeled_grid_to_json(const LabeledGrid& g);

}  // namespace minorkit
