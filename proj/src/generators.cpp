#include "minorkit/generators.hpp"

#include <algorithm>
#include <array>

namespace minorkit {

int LabeledGrid::vertex_at(int cycle, int position) const {
    if (cycle < 1 || cycle > cycles || position < 1 || position > cycle_length)
        throw DomainError("vertex_at: coordinates out of range");
    return (cycle - 1) * cycle_length + (position - 1);
}

LabeledGrid cylindrical_grid(int m, int n) {
    if (m < 1) throw DomainError("cylindrical_grid: need m >= 1");
    if (n < 3) throw DomainError("cylindrical_grid: need n >= 3 (cycle undefined)");
    LabeledGrid out;
    out.cycles = m;
    out.cycle_length = n;
    out.graph = Graph(m * n);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            int v = (i - 1) * n + (j - 1);
            out.coord[v] = {i, j};
            out.graph.add_edge(v, (i - 1) * n + (j % n));  // cycle edge
            if (i < m) out.graph.add_edge(v, i * n + (j - 1));  // column edge
        }
    return out;
}

namespace {

// Adds a transaction path between outer-cycle positions j1, j2 with
// `subs` subdivision vertices, growing the graph as needed.
std::vector<int> add_path(LabeledGrid& g, int j1, int j2, int subs) {
    int u = g.vertex_at(1, j1);
    int v = g.vertex_at(1, j2);
    std::vector<int> path{u};
    if (subs == 0) {
        g.graph.add_edge(u, v);
    } else {
        int base = g.graph.num_vertices();
        Graph bigger(base + subs);
        for (auto [a, b] : g.graph.edge_list()) bigger.add_edge(a, b);
        g.graph = std::move(bigger);
        int prev = u;
        for (int s = 0; s < subs; ++s) {
            int w = base + s;
            g.subdivision_vertices.insert(w);
            g.graph.add_edge(prev, w);
            path.push_back(w);
            prev = w;
        }
        g.graph.add_edge(prev, v);
    }
    path.push_back(v);
    return path;
}

void add_transaction(LabeledGrid& g, TransactionKind kind, int position, int m, int offset, int subs) {
    TransactionRecord rec;
    rec.kind = kind;
    rec.position = position;
    if (kind == TransactionKind::crosscap) {
        for (int j = 1; j <= 2 * m; ++j) rec.paths.push_back(add_path(g, offset + j, offset + 2 * m + j, subs));
    } else {
        for (int j = 1; j <= m; ++j) rec.paths.push_back(add_path(g, offset + j, offset + 3 * m - j + 1, subs));
        for (int j = 1; j <= m; ++j) rec.paths.push_back(add_path(g, offset + m + j, offset + 4 * m - j + 1, subs));
    }
    g.transactions.push_back(std::move(rec));
}

}  // namespace

LabeledGrid mixed_surface_grid(int k, const std::vector<TransactionKind>& kinds, int subdivisions) {
    if (k < 1) throw DomainError("mixed_surface_grid: need k >= 1");
    if (kinds.empty()) throw DomainError("mixed_surface_grid: kinds must be non-empty");
    int blocks = static_cast<int>(kinds.size()) + 1;
    LabeledGrid g = cylindrical_grid(k, 4 * blocks * k);
    for (int idx = 0; idx < static_cast<int>(kinds.size()); ++idx) {
        int position = idx + 2;  // positions 2..c+h+1; block 1 is the annulus
        add_transaction(g, kinds[idx], position, k, 4 * k * (position - 1), subdivisions);
    }
    return g;
}

LabeledGrid dyck_grid(int h, int c, int k) {
    if (h == -1 && c == 2) {
        h = 0;
        c = 0;
    }
    if (h < 0) throw DomainError("dyck_grid: need h >= 0");
    if (c < 0 || c > 2) throw DomainError("dyck_grid: need c in [0,2]");
    if (k < 1) throw DomainError("dyck_grid: need k >= 1");
    if (h == 0 && c == 0) return cylindrical_grid(k, 4 * k);
    std::vector<TransactionKind> kinds;
    for (int i = 0; i < h; ++i) kinds.push_back(TransactionKind::handle);
    for (int i = 0; i < c; ++i) kinds.push_back(TransactionKind::crosscap);
    return mixed_surface_grid(k, kinds);
}

LabeledGrid annulus_grid(int k) { return cylindrical_grid(k, 4 * k); }

LabeledGrid handle_grid(int k) {
    LabeledGrid g = annulus_grid(k);
    add_transaction(g, TransactionKind::handle, 1, k, 0, 0);
    return g;
}

LabeledGrid crosscap_grid(int k) {
    LabeledGrid g = annulus_grid(k);
    add_transaction(g, TransactionKind::crosscap, 1, k, 0, 0);
    return g;
}

Wall elementary_wall(int k) {
    if (k < 3) throw DomainError("elementary_wall: need k >= 3");
    int rows = k, cols = 2 * k;
    // Vertex (r,c) 1-based; delete odd vertical edges in odd columns and even
    // vertical edges in even columns, then prune degree-<=1 vertices.
    auto id = [cols](int r, int c) { return (r - 1) * cols + (c - 1); };
    std::vector<std::pair<int, int>> edges;
    for (int r = 1; r <= rows; ++r)
        for (int c = 1; c <= cols; ++c) {
            if (c < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r < rows) {
                bool del = (c % 2 == 1) ? (r % 2 == 1) : (r % 2 == 0);
                if (!del) edges.emplace_back(id(r, c), id(r + 1, c));
            }
        }
    Graph g = Graph::from_edge_list(rows * cols, edges);
    // prune degree <= 1 repeatedly
    VertexSet keep;
    for (int v = 0; v < g.num_vertices(); ++v) keep.insert(v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = keep.begin(); it != keep.end();) {
            int deg = 0;
            for (int u : g.neighbors(*it)) deg += keep.count(u);
            if (deg <= 1) {
                it = keep.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    auto ind = induced_subgraph(g, keep);
    Wall w;
    w.graph = std::move(ind.graph);
    for (auto [old_v, new_v] : ind.old_to_new) w.coord[new_v] = {old_v / cols + 1, old_v % cols + 1};
    return w;
}

std::vector<int> wall_perimeter(const Wall& w) {
    // Outer-face walk in the natural drawing: at each step take the neighbor
    // that is clockwise-most relative to the incoming direction.
    auto pos = [&](int v) { return w.coord.at(v); };
    int start = 0;
    for (int v = 1; v < w.graph.num_vertices(); ++v)
        if (pos(v) < pos(start)) start = v;
    auto angle_index = [&](int from, int to) {
        auto [fr, fc] = pos(from);
        auto [tr, tc] = pos(to);
        if (tr == fr) return tc > fc ? 0 : 2;  // east / west
        return tr > fr ? 1 : 3;                // south / north
    };
    std::vector<int> cycle;
    int prev = -1, cur = start;
    do {
        cycle.push_back(cur);
        int best = -1, best_key = -1;
        for (int nb : w.graph.neighbors(cur)) {
            int in_dir = prev < 0 ? 1 : angle_index(cur, prev);  // fake south entry at start
            int key = (angle_index(cur, nb) - in_dir + 3) % 4;   // counter-clockwise-most after incoming
            if (key > best_key && nb != prev) {
                best_key = key;
                best = nb;
            }
            if (nb == prev && w.graph.degree(cur) == 1) best = nb;
        }
        prev = cur;
        cur = best;
    } while (cur != start && cycle.size() <= w.coord.size() + 1);
    return cycle;
}

Graph dyck_wall(int h, int c, int t) {
    if (t < 3) throw DomainError("dyck_wall: need t >= 3");
    if (c < 0 || c > 2) throw DomainError("dyck_wall: need c in [0,2]");
    if (h < 0) throw DomainError("dyck_wall: need h >= 0");
    LabeledGrid d = dyck_grid(h, c, 2 * t);
    int n = d.cycle_length;
    // Keep cycles 1..t.
    Graph g(t * n);
    auto id = [n](int i, int j) { return (i - 1) * n + (j - 1); };  // i in [1..t], j in [1..n]
    // Cycle edges.
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= n; ++j) g.add_edge(id(i, j), id(i, j % n + 1));
    // Column edges with wall-style parity deletions.
    std::vector<std::vector<char>> col_edge(t, std::vector<char>(n + 1, 0));
    for (int i = 1; i < t; ++i)
        for (int j = 1; j <= n; ++j) {
            bool del = (i % 2 == 1) && (j % 2 == 1);
            del = del || ((i % 2 == 0) && (j % 2 == 0));
            if (!del) col_edge[i][j] = 1;
        }
    // Transactions: keep every second bundle edge (odd bundle index); at each
    // kept endpoint drop the cycle-1/cycle-2 column edge to stay subcubic.
    for (const auto& rec : d.transactions)
        for (int p = 0; p < static_cast<int>(rec.paths.size()); ++p) {
            if (p % 2 != 0) continue;  // bundle index p+1 odd
            int u = rec.paths[p].front();
            int v = rec.paths[p].back();
            int ju = d.coord.at(u).second, jv = d.coord.at(v).second;
            g.add_edge(id(1, ju), id(1, jv));
            col_edge[1][ju] = 0;
            col_edge[1][jv] = 0;
        }
    for (int i = 1; i < t; ++i)
        for (int j = 1; j <= n; ++j)
            if (col_edge[i][j]) g.add_edge(id(i, j), id(i + 1, j));
    return g;
}

LabeledGrid dtilde(int h, int c, int k) {
    if (h == 0 && c == 0) throw DomainError("dtilde: undefined for (h,c) = (0,0)");
    if (h < 0 || c < 0 || c > 2) throw DomainError("dtilde: invalid (h,c)");
    if (k < 1) throw DomainError("dtilde: need k >= 1");
    LabeledGrid g = cylindrical_grid(k, 4 * (h + c) * k);
    for (int b = 1; b <= h + c; ++b) {
        TransactionKind kind = b <= h ? TransactionKind::handle : TransactionKind::crosscap;
        add_transaction(g, kind, b, k, 4 * k * (b - 1), 0);
    }
    return g;
}

LabeledGrid dhat(int h, int c, int k) {
    LabeledGrid g = dtilde(h, c, k);
    int base = g.graph.num_vertices();
    int count = k * (h + c);
    Graph bigger(base + count);
    for (auto [a, b] : g.graph.edge_list()) bigger.add_edge(a, b);
    g.graph = std::move(bigger);
    int next = base;
    for (int b = 1; b <= h + c; ++b)
        for (int s = 1; s <= k; ++s) {
            int sat = next++;
            g.satellites.insert(sat);
            int off = 4 * k * (b - 1) + 4 * (s - 1);
            for (int d = 1; d <= 4; ++d) g.graph.add_edge(sat, g.vertex_at(k, off + d));
        }
    return g;
}

Graph crossed(int k) {
    if (k < 1) throw DomainError("crossed: need k >= 1");
    Graph g0 = grid_graph(k + 2, k + 2);
    // Remove outer-layer edges: both endpoints of degree < 4.
    std::vector<std::pair<int, int>> inner;
    for (auto [u, v] : g0.edge_list())
        if (g0.degree(u) == 4 || g0.degree(v) == 4) inner.emplace_back(u, v);
    // Subdivide each remaining edge once.
    int n = g0.num_vertices();
    std::vector<std::pair<int, int>> sub_edges;
    int next = n;
    for (auto [u, v] : inner) {
        sub_edges.emplace_back(u, next);
        sub_edges.emplace_back(next, v);
        ++next;
    }
    Graph subdiv = Graph::from_edge_list(next, sub_edges);
    // Line graph (vertices with no incident edge vanish).
    auto edges = subdiv.edge_list();
    Graph lg(static_cast<int>(edges.size()));
    for (int a = 0; a < static_cast<int>(edges.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(edges.size()); ++b) {
            auto [u1, v1] = edges[a];
            auto [u2, v2] = edges[b];
            if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) lg.add_edge(a, b);
        }
    return lg;
}

HairyWall hairy_wall(int r, int x) {
    Wall w = elementary_wall(r);
    Graph g = w.graph;
    std::vector<char> branch(g.num_vertices(), 0);
    for (int v = 0; v < g.num_vertices(); ++v) branch[v] = g.degree(v) == 3;
    // For every maximal path between branch vertices whose interior is all
    // degree-2 vertices, mark exactly one annotation vertex; subdivide direct
    // branch-branch edges to create one.
    std::vector<std::pair<int, int>> edges = g.edge_list();
    std::vector<std::vector<int>> paths;  // interior-inclusive vertex paths between branch vertices
    std::set<std::pair<int, int>> used;   // directed half-edges already walked
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!branch[v]) continue;
        for (int u : g.neighbors(v)) {
            if (used.count({v, u})) continue;
            std::vector<int> path{v};
            int prev = v, cur = u;
            used.insert({v, u});
            while (!branch[cur]) {
                path.push_back(cur);
                int nxt = -1;
                for (int nb : g.neighbors(cur))
                    if (nb != prev) nxt = nb;
                prev = cur;
                cur = nxt;
            }
            used.insert({cur, prev});
            path.push_back(cur);
            paths.push_back(std::move(path));
        }
    }
    // Rebuild with subdivisions where needed.
    int next = g.num_vertices();
    std::vector<std::pair<int, int>> out_edges;
    VertexSet s;
    std::set<std::pair<int, int>> handled;
    for (auto& path : paths) {
        if (path.size() == 2) {
            int mid = next++;
            out_edges.emplace_back(path[0], mid);
            out_edges.emplace_back(mid, path[1]);
            s.insert(mid);
        } else {
            for (size_t i = 0; i + 1 < path.size(); ++i) out_edges.emplace_back(path[i], path[i + 1]);
            s.insert(path[1]);  // first interior vertex
        }
    }
    if (x > static_cast<int>(s.size()))
        throw DomainError("hairy_wall: requested more pendants than annotation vertices (" +
                          std::to_string(s.size()) + " available)");
    HairyWall out;
    VertexSet xs;
    int attached = 0;
    for (int sv : s) {
        if (attached >= x) break;
        int leaf = next++;
        out_edges.emplace_back(sv, leaf);
        xs.insert(leaf);
        ++attached;
    }
    out.graph = Graph::from_edge_list(next, out_edges);
    out.s = std::move(s);
    out.x = std::move(xs);
    return out;
}

nlohmann::json labeled_grid_to_json(const LabeledGrid& g) {
    nlohmann::json j;
    j["n"] = g.graph.num_vertices();
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.graph.edge_list()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    j["cycles"] = g.cycles;
    j["cycle_length"] = g.cycle_length;
    auto coord = nlohmann::json::object();
    for (auto [v, rc] : g.coord) coord[std::to_string(v)] = {rc.first, rc.second};
    j["coord"] = std::move(coord);
    auto txs = nlohmann::json::array();
    for (const auto& rec : g.transactions) {
        nlohmann::json t;
        t["kind"] = rec.kind == TransactionKind::handle ? "handle" : "crosscap";
        t["position"] = rec.position;
        t["paths"] = rec.paths;
        txs.push_back(std::move(t));
    }
    j["transactions"] = std::move(txs);
    j["subdivision_vertices"] = std::vector<int>(g.subdivision_vertices.begin(), g.subdivision_vertices.end());
    if (!g.satellites.empty()) j["satellites"] = std::vector<int>(g.satellites.begin(), g.satellites.end());
    return j;
}

}  // namespace minorkit
