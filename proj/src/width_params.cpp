#include "minorkit/width_params.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>

#include "minorkit/generators.hpp"

namespace minorkit {

using u64 = std::uint64_t;

std::vector<std::string> validate_td(const Graph& g, const TreeDecomposition& td) {
    std::vector<std::string> bad;
    const Graph& t = td.tree;
    int tn = t.num_vertices();
    if (static_cast<int>(td.bags.size()) != tn) bad.push_back("bag map does not match tree nodes");
    for (const auto& [node, bag] : td.bags) {
        if (node < 0 || node >= tn) bad.push_back("bag for non-tree node " + std::to_string(node));
        for (int v : bag)
            if (v < 0 || v >= g.num_vertices())
                bad.push_back("bag " + std::to_string(node) + " contains non-vertex " + std::to_string(v));
    }
    if (!bad.empty()) return bad;
    if (tn > 0 && (t.num_edges() != tn - 1 || connected_components(t).size() != 1))
        bad.push_back("decomposition tree is not a tree");
    if (g.num_vertices() > 0 && tn == 0) bad.push_back("no bags for a non-empty graph");
    // coverage of vertices
    std::vector<char> covered(g.num_vertices(), 0);
    for (const auto& [node, bag] : td.bags)
        for (int v : bag) covered[v] = 1;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!covered[v]) bad.push_back("vertex " + std::to_string(v) + " not covered by any bag");
    // coverage of edges
    for (auto [u, v] : g.edge_list()) {
        bool ok = false;
        for (const auto& [node, bag] : td.bags)
            if (bag.count(u) && bag.count(v)) {
                ok = true;
                break;
            }
        if (!ok)
            bad.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) + ") not inside any bag");
    }
    // subtree property
    for (int v = 0; v < g.num_vertices(); ++v) {
        VertexSet nodes;
        for (const auto& [node, bag] : td.bags)
            if (bag.count(v)) nodes.insert(node);
        if (!nodes.empty() && connected_components_within(t, nodes).size() != 1)
            bad.push_back("nodes containing vertex " + std::to_string(v) + " do not induce a subtree");
    }
    return bad;
}

int td_width(const TreeDecomposition& td) {
    int w = -1;
    for (const auto& [node, bag] : td.bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

int td_adhesion(const TreeDecomposition& td) {
    int a = 0;
    for (auto [s, t] : td.tree.edge_list()) {
        int common = 0;
        for (int v : td.bags.at(s))
            if (td.bags.at(t).count(v)) ++common;
        a = std::max(a, common);
    }
    return a;
}

Graph torso_at(const Graph& g, const TreeDecomposition& td, int node) {
    auto bad = validate_td(g, td);
    if (!bad.empty()) throw DomainError("torso_at: invalid decomposition: " + bad.front());
    if (!td.bags.count(node)) throw DomainError("torso_at: unknown node");
    const VertexSet& bag = td.bags.at(node);
    auto ind = induced_subgraph(g, bag);
    Graph torso = ind.graph;
    for (int nb : td.tree.neighbors(node)) {
        std::vector<int> adhesion;
        for (int v : bag)
            if (td.bags.at(nb).count(v)) adhesion.push_back(v);
        for (size_t i = 0; i < adhesion.size(); ++i)
            for (size_t j = i + 1; j < adhesion.size(); ++j)
                torso.add_edge(ind.old_to_new[adhesion[i]], ind.old_to_new[adhesion[j]]);
    }
    return torso;
}

Graph torso_annotated(const Graph& g, const VertexSet& x) {
    auto ind = induced_subgraph(g, x);
    Graph torso = ind.graph;
    VertexSet rest;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!x.count(v)) rest.insert(v);
    for (const VertexSet& comp : connected_components_within(g, rest)) {
        std::vector<int> nb;
        for (int v : comp)
            for (int u : g.neighbors(v))
                if (x.count(u)) nb.push_back(ind.old_to_new[u]);
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) torso.add_edge(nb[i], nb[j]);
    }
    return torso;
}

namespace {

std::vector<u64> adjacency_masks(const Graph& g) {
    std::vector<u64> adj(g.num_vertices(), 0);
    for (auto [u, v] : g.edge_list()) {
        adj[u] |= u64(1) << v;
        adj[v] |= u64(1) << u;
    }
    return adj;
}

// Number of vertices outside S u {v} reachable from v via paths internal to S.
int q_value(const std::vector<u64>& adj, u64 S, int v) {
    u64 comp = u64(1) << v;
    u64 nbs = adj[v];
    for (;;) {
        u64 grow = (nbs & S) & ~comp;
        if (!grow) break;
        comp |= grow;
        for (u64 m = grow; m; m &= m - 1) nbs |= adj[std::countr_zero(m)];
    }
    return std::popcount(nbs & ~S & ~(u64(1) << v));
}

}  // namespace

int treewidth_by_dp(const Graph& g, std::vector<int>* elimination_order) {
    int n = g.num_vertices();
    if (n == 0) {
        if (elimination_order) elimination_order->clear();
        return 0;
    }
    if (n > 24) throw BudgetError("treewidth_by_dp: more than 24 vertices");
    auto adj = adjacency_masks(g);
    std::vector<std::int8_t> dp(u64(1) << n, 127);
    dp[0] = -1;
    for (u64 S = 1; S < (u64(1) << n); ++S) {
        int best = 127;
        for (u64 m = S; m; m &= m - 1) {
            int v = std::countr_zero(m);
            u64 rest = S & ~(u64(1) << v);
            int w = std::max<int>(dp[rest], q_value(adj, rest, v));
            best = std::min(best, w);
        }
        dp[S] = static_cast<std::int8_t>(best);
    }
    int tw = dp[(u64(1) << n) - 1];
    if (elimination_order) {
        elimination_order->assign(n, -1);
        u64 S = (u64(1) << n) - 1;
        for (int pos = n - 1; pos >= 0; --pos) {
            for (u64 m = S; m; m &= m - 1) {
                int v = std::countr_zero(m);
                u64 rest = S & ~(u64(1) << v);
                if (std::max<int>(dp[rest], q_value(adj, rest, v)) == dp[S]) {
                    (*elimination_order)[pos] = v;
                    S = rest;
                    break;
                }
            }
        }
    }
    return tw;
}

namespace {

// Width of the elimination order produced by the greedy minimum-fill
// heuristic; a valid upper bound used to seed the branch-and-bound.
int min_fill_width(std::vector<u64> adj, u64 rem) {
    int width = -1;
    while (rem) {
        int best = -1, best_fill = 1 << 30;
        for (u64 m = rem; m; m &= m - 1) {
            int v = std::countr_zero(m);
            u64 nb = adj[v] & rem;
            int fill = 0;
            for (u64 a = nb; a; a &= a - 1) {
                int x = std::countr_zero(a);
                fill += std::popcount(nb & ~adj[x] & ~(u64(1) << x));
            }
            if (fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        u64 nb = adj[best] & rem;
        width = std::max(width, std::popcount(nb));
        for (u64 a = nb; a; a &= a - 1) adj[std::countr_zero(a)] |= nb & ~(u64(1) << std::countr_zero(a));
        rem &= ~(u64(1) << best);
    }
    return width;
}

struct BBState {
    int best;
    void rec(const std::vector<u64>& adj, u64 rem, int cur) {
        if (cur >= best) return;
        if (!rem) {
            best = cur;
            return;
        }
        // lower bound: the first future elimination pays at least the current
        // minimum degree
        int mindeg = 1 << 30;
        for (u64 m = rem; m; m &= m - 1)
            mindeg = std::min(mindeg, std::popcount(adj[std::countr_zero(m)] & rem));
        if (std::max(cur, mindeg) >= best) return;
        // simplicial rule: a vertex whose remaining neighborhood is a clique
        // may always be eliminated first
        for (u64 m = rem; m; m &= m - 1) {
            int v = std::countr_zero(m);
            u64 nb = adj[v] & rem;
            bool clique = true;
            for (u64 a = nb; a && clique; a &= a - 1) {
                int x = std::countr_zero(a);
                if (nb & ~adj[x] & ~(u64(1) << x)) clique = false;
            }
            if (clique) {
                rec(adj, rem & ~(u64(1) << v), std::max(cur, std::popcount(nb)));
                return;
            }
        }
        for (u64 m = rem; m; m &= m - 1) {
            int v = std::countr_zero(m);
            u64 nb = adj[v] & rem;
            int deg = std::popcount(nb);
            if (std::max(cur, deg) >= best) continue;
            std::vector<u64> next = adj;
            for (u64 a = nb; a; a &= a - 1) {
                int x = std::countr_zero(a);
                next[x] |= nb & ~(u64(1) << x);
            }
            rec(next, rem & ~(u64(1) << v), std::max(cur, deg));
        }
    }
};

}  // namespace

int treewidth_by_bb(const Graph& g) {
    int n = g.num_vertices();
    if (n == 0) return 0;
    if (n > 64) throw BudgetError("treewidth_by_bb: more than 64 vertices");
    auto adj = adjacency_masks(g);
    u64 full = n == 64 ? ~u64(0) : (u64(1) << n) - 1;
    BBState bb{min_fill_width(adj, full)};
    bb.rec(adj, full, -1);
    return bb.best;
}

TreeDecomposition td_from_elimination_order(const Graph& g, const std::vector<int>& order) {
    int n = g.num_vertices();
    if (static_cast<int>(order.size()) != n) throw DomainError("td_from_elimination_order: order size mismatch");
    TreeDecomposition td;
    if (n == 0) {
        td.tree = Graph(0);
        return td;
    }
    std::vector<u64> adj = adjacency_masks(g);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    u64 rem = n == 64 ? ~u64(0) : (u64(1) << n) - 1;
    td.tree = Graph(n);
    std::vector<u64> bag_masks(n);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        u64 nb = adj[v] & rem & ~(u64(1) << v);
        bag_masks[i] = nb | (u64(1) << v);
        for (u64 a = nb; a; a &= a - 1) {
            int x = std::countr_zero(a);
            adj[x] |= nb & ~(u64(1) << x);
        }
        rem &= ~(u64(1) << v);
        VertexSet bag;
        for (u64 m = bag_masks[i]; m; m &= m - 1) bag.insert(std::countr_zero(m));
        td.bags[i] = std::move(bag);
    }
    for (int i = 0; i < n; ++i) {
        u64 later = bag_masks[i] & ~(u64(1) << order[i]);
        if (later) {
            int first = -1;
            for (u64 m = later; m; m &= m - 1) {
                int x = std::countr_zero(m);
                if (first == -1 || pos[x] < pos[first]) first = x;
            }
            td.tree.add_edge(i, pos[first]);
        } else if (i + 1 < n) {
            td.tree.add_edge(i, i + 1);
        }
    }
    return td;
}

AnnotatedValue treewidth_exact(const Graph& g, int cap) {
    if (g.num_vertices() > cap)
        throw BudgetError("treewidth_exact: graph exceeds the configured cap of " + std::to_string(cap));
    std::vector<int> order;
    int a = treewidth_by_dp(g, &order);
    int b = treewidth_by_bb(g);
    if (a != b)
        throw DomainError("treewidth_exact: the two exact engines disagree (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
    AnnotatedValue out;
    out.param = "tw";
    out.value = std::max(a, 0);
    TreeDecomposition td = td_from_elimination_order(g, order);
    auto bad = validate_td(g, td);
    if (!bad.empty()) throw DomainError("treewidth_exact: witness decomposition invalid: " + bad.front());
    if (g.num_vertices() > 0 && td_width(td) != a)
        throw DomainError("treewidth_exact: witness width mismatch");
    out.td = std::move(td);
    return out;
}

namespace {

struct TwAnnotated {
    const Graph& g;
    const VertexSet& x;
    std::vector<int> pool;  // vertices of components meeting x
    u64 poolmask = 0, xmask = 0;
    std::vector<u64> adj;
    std::vector<VertexSet> blocks;
    int best = 0;
    std::vector<VertexSet> best_blocks;
    std::map<std::vector<u64>, int> memo;

    int realized_tw() {
        // realized pattern adjacency under the current full partition
        int b = static_cast<int>(blocks.size());
        std::vector<int> owner(g.num_vertices(), -1);
        for (int i = 0; i < b; ++i)
            for (int v : blocks[i]) owner[v] = i;
        std::vector<u64> pat(b, 0);
        for (auto [u, v] : g.edge_list())
            if (owner[u] != -1 && owner[v] != -1 && owner[u] != owner[v]) {
                pat[owner[u]] |= u64(1) << owner[v];
                pat[owner[v]] |= u64(1) << owner[u];
            }
        auto it = memo.find(pat);
        if (it != memo.end()) return it->second;
        Graph p(b);
        for (int i = 0; i < b; ++i)
            for (u64 m = pat[i]; m; m &= m - 1) {
                int j = std::countr_zero(m);
                if (j > i) p.add_edge(i, j);
            }
        int tw = treewidth_by_dp(p);
        memo[pat] = tw;
        return tw;
    }

    void partition(u64 unassigned) {
        if (!unassigned) {
            int tw = realized_tw();
            if (tw > best) {
                best = tw;
                best_blocks = blocks;
            }
            return;
        }
        int v = std::countr_zero(unassigned);
        grow(u64(1) << v, adj[v] & unassigned, 0, unassigned);
    }

    void grow(u64 S, u64 NS, u64 X, u64 unassigned) {
        if (S & xmask) {
            VertexSet bs;
            for (u64 m = S; m; m &= m - 1) bs.insert(std::countr_zero(m));
            blocks.push_back(std::move(bs));
            partition(unassigned & ~S);
            blocks.pop_back();
        }
        u64 cand = NS & unassigned & ~S & ~X;
        while (cand) {
            u64 vb = cand & (~cand + 1);
            int v = std::countr_zero(vb);
            grow(S | vb, NS | adj[v], X, unassigned);
            X |= vb;
            cand &= cand - 1;
        }
    }
};

}  // namespace

AnnotatedValue tw_annotated(const Graph& g, const VertexSet& x, int max_host) {
    if (g.num_vertices() > 64) throw BudgetError("tw_annotated: host exceeds 64 vertices");
    TwAnnotated ctx{g, x};
    for (const VertexSet& comp : connected_components(g)) {
        bool meets = false;
        for (int v : comp)
            if (x.count(v)) meets = true;
        if (meets)
            for (int v : comp) ctx.pool.push_back(v);
    }
    if (static_cast<int>(ctx.pool.size()) > max_host)
        throw BudgetError("tw_annotated: " + std::to_string(ctx.pool.size()) +
                          " relevant vertices exceed the exhaustive budget of " + std::to_string(max_host));
    AnnotatedValue out;
    out.param = "tw";
    for (int v : ctx.pool) ctx.poolmask |= u64(1) << v;
    for (int v : x) ctx.xmask |= u64(1) << v;
    ctx.adj = adjacency_masks(g);
    ctx.partition(ctx.poolmask);
    out.value = ctx.best;
    MinorModel witness;
    witness.host = g;
    witness.roots = x;
    Partition parts(ctx.best_blocks.begin(), ctx.best_blocks.end());
    witness.pattern = contract_partition(g, parts);
    for (size_t i = 0; i < parts.size(); ++i) witness.branch_sets[static_cast<int>(i)] = parts[i];
    auto bad = validate_model(witness);
    if (!bad.empty()) throw DomainError("tw_annotated: witness model invalid: " + bad.front());
    out.model = std::move(witness);
    return out;
}

int tw_annotated_by_obstructions(const Graph& g, const VertexSet& x, const SearchBudget& budget) {
    if (x.empty()) return 0;
    auto rooted = [&](const Graph& pattern) {
        auto r = find_minor(g, pattern, x, budget);
        if (r.status == SearchStatus::budget_exceeded)
            throw BudgetError("tw_annotated_by_obstructions: search budget exhausted");
        return r.status == SearchStatus::found;
    };
    if (!rooted(complete_graph(2))) return 0;
    if (!rooted(complete_graph(3))) return 1;
    if (!rooted(complete_graph(4))) return 2;
    // obstruction set for treewidth <= 3: K5, the octahedron, the pentagonal
    // prism, and the Wagner graph
    Graph octahedron = Graph::from_edge_list(
        6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
    std::vector<std::pair<int, int>> prism_e, wagner_e;
    for (int i = 0; i < 5; ++i) {
        prism_e.push_back({i, (i + 1) % 5});
        prism_e.push_back({5 + i, 5 + (i + 1) % 5});
        prism_e.push_back({i, 5 + i});
    }
    for (int i = 0; i < 8; ++i) wagner_e.push_back({i, (i + 1) % 8});
    for (int i = 0; i < 4; ++i) wagner_e.push_back({i, i + 4});
    for (const Graph& obs : {complete_graph(5), octahedron, Graph::from_edge_list(10, prism_e),
                             Graph::from_edge_list(8, wagner_e)})
        if (rooted(obs)) return 4;
    return 3;
}

namespace {

// Face-embedding planarity test on a biconnected graph with >= 3 vertices
// (Demoucron-Malgrange-Pertuiset): grow a planar subgraph from a cycle,
// repeatedly routing a path of some bridge fragment through an admissible face.
bool planar_biconnected(const std::vector<std::pair<int, int>>& edges) {
    std::map<int, std::vector<int>> adj;
    std::set<int> verts;
    std::set<std::pair<int, int>> alledges;
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
        verts.insert(u);
        verts.insert(v);
        alledges.insert(std::minmax(u, v));
    }
    if (alledges.size() > 3 * verts.size() - 6) return false;
    // find a cycle by recursive DFS (undirected back edges go to ancestors)
    std::map<int, int> parent;
    std::vector<int> cyc;
    {
        int cu = -1, cv = -1;
        std::function<void(int, int)> dfs = [&](int u, int p) {
            parent[u] = p;
            for (int w : adj[u]) {
                if (cu != -1) return;
                if (w == p) continue;
                if (parent.count(w)) {
                    cu = u;
                    cv = w;
                    return;
                }
                dfs(w, u);
            }
        };
        dfs(*verts.begin(), -1);
        for (int x = cu; x != cv; x = parent[x]) cyc.push_back(x);
        cyc.push_back(cv);
    }
    if (cyc.size() < 3) return false;  // should not happen in a simple biconnected graph
    std::set<int> inH(cyc.begin(), cyc.end());
    std::set<std::pair<int, int>> emb;
    for (size_t i = 0; i < cyc.size(); ++i) emb.insert(std::minmax(cyc[i], cyc[(i + 1) % cyc.size()]));
    std::vector<std::vector<int>> faces{cyc, std::vector<int>(cyc.rbegin(), cyc.rend())};

    for (;;) {
        if (emb.size() == alledges.size()) return true;
        // fragments: chords, and components of G minus embedded vertices
        struct Frag {
            std::set<int> attach;
            std::vector<int> inner;  // empty for a chord
        };
        std::vector<Frag> frags;
        for (auto e : alledges)
            if (!emb.count(e) && inH.count(e.first) && inH.count(e.second))
                frags.push_back({{e.first, e.second}, {}});
        std::set<int> seen;
        for (int s : verts) {
            if (inH.count(s) || seen.count(s)) continue;
            Frag f;
            std::vector<int> stack{s};
            seen.insert(s);
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                f.inner.push_back(u);
                for (int w : adj[u]) {
                    if (inH.count(w))
                        f.attach.insert(w);
                    else if (!seen.count(w)) {
                        seen.insert(w);
                        stack.push_back(w);
                    }
                }
            }
            frags.push_back(std::move(f));
        }
        // admissible faces per fragment
        int pick = -1, pick_face = -1, best_count = 1 << 30;
        for (size_t fi = 0; fi < frags.size(); ++fi) {
            int count = 0, last = -1;
            for (size_t j = 0; j < faces.size(); ++j) {
                std::set<int> fv(faces[j].begin(), faces[j].end());
                bool ok = true;
                for (int a : frags[fi].attach)
                    if (!fv.count(a)) ok = false;
                if (ok) {
                    ++count;
                    last = static_cast<int>(j);
                }
            }
            if (count == 0) return false;
            if (count < best_count) {
                best_count = count;
                pick = static_cast<int>(fi);
                pick_face = last;
            }
        }
        // route a path between two attachments of the picked fragment
        const Frag& f = frags[pick];
        std::vector<int> path;
        if (f.inner.empty()) {
            path = {*f.attach.begin(), *std::next(f.attach.begin())};
        } else {
            std::set<int> inner(f.inner.begin(), f.inner.end());
            int start = *f.attach.begin();
            std::map<int, int> par;
            std::vector<int> q;
            for (int w : adj[start])
                if (inner.count(w) && !par.count(w)) {
                    par[w] = start;
                    q.push_back(w);
                }
            int endv = -1;
            for (size_t qi = 0; qi < q.size() && endv == -1; ++qi) {
                int u = q[qi];
                for (int w : adj[u]) {
                    if (inH.count(w) && w != start) {
                        endv = w;
                        par[w] = u;
                        break;
                    }
                    if (inner.count(w) && !par.count(w)) {
                        par[w] = u;
                        q.push_back(w);
                    }
                }
            }
            for (int x = endv; x != start; x = par[x]) path.push_back(x);
            path.push_back(start);
            std::reverse(path.begin(), path.end());
        }
        // split the face along the path
        std::vector<int>& face = faces[pick_face];
        int ia = -1, ib = -1;
        for (size_t i = 0; i < face.size(); ++i) {
            if (face[i] == path.front()) ia = static_cast<int>(i);
            if (face[i] == path.back()) ib = static_cast<int>(i);
        }
        std::vector<int> f1, f2;
        for (int i = ia;; i = (i + 1) % static_cast<int>(face.size())) {
            f1.push_back(face[i]);
            if (i == ib) break;
        }
        for (size_t i = path.size() - 1; i-- > 1;) f1.push_back(path[i]);
        for (int i = ib;; i = (i + 1) % static_cast<int>(face.size())) {
            f2.push_back(face[i]);
            if (i == ia) break;
        }
        for (size_t i = 1; i + 1 < path.size(); ++i) f2.push_back(path[i]);
        faces[pick_face] = std::move(f1);
        faces.push_back(std::move(f2));
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            emb.insert(std::minmax(path[i], path[i + 1]));
            inH.insert(path[i]);
        }
        inH.insert(path.back());
    }
}

}  // namespace

bool is_planar(const Graph& g) {
    // decompose into biconnected components; G is planar iff each is
    int n = g.num_vertices();
    std::vector<int> num(n, -1), low(n, 0);
    std::vector<std::pair<int, int>> estack;
    std::vector<std::vector<std::pair<int, int>>> bccs;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int u, int pe) {
        num[u] = low[u] = timer++;
        for (int w : g.neighbors(u)) {
            if (w == pe && pe != -1) {
                pe = -2;  // skip the tree edge to the parent exactly once
                continue;
            }
            if (num[w] == -1) {
                estack.push_back({u, w});
                size_t base = estack.size() - 1;
                dfs(w, u);
                low[u] = std::min(low[u], low[w]);
                if (low[w] >= num[u]) {
                    std::vector<std::pair<int, int>> comp(estack.begin() + base, estack.end());
                    estack.resize(base);
                    bccs.push_back(std::move(comp));
                }
            } else if (num[w] < num[u]) {
                estack.push_back({u, w});
                low[u] = std::min(low[u], num[w]);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (num[v] == -1) dfs(v, -1);
    for (const auto& comp : bccs) {
        if (comp.size() <= 2) continue;  // an edge or two edges are always planar
        if (!planar_biconnected(comp)) return false;
    }
    return true;
}

int modulator_value(const Graph& g, const std::function<bool(const Graph&)>& class_pred,
                    const std::function<int(const Graph&, const VertexSet&)>& param, int max_n) {
    int n = g.num_vertices();
    if (n > max_n) throw BudgetError("modulator_value: graph exceeds the exhaustive budget");
    bool any = false;
    int best = 0;
    for (u64 mask = 0; mask < (u64(1) << n); ++mask) {
        VertexSet xset, rest;
        for (int v = 0; v < n; ++v)
            (mask & (u64(1) << v) ? xset : rest).insert(v);
        if (!class_pred(induced_subgraph(g, rest).graph)) continue;
        int val = param(g, xset);
        if (!any || val < best) best = val;
        any = true;
    }
    if (!any) throw DomainError("modulator_value: no vertex subset places the rest in the class");
    return best;
}

int modulator_value_at(const Graph& g, const VertexSet& x, const std::function<bool(const Graph&)>& class_pred,
                       const std::function<int(const Graph&, const VertexSet&)>& param) {
    VertexSet rest;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!x.count(v)) rest.insert(v);
    if (!class_pred(induced_subgraph(g, rest).graph))
        throw DomainError("modulator_value_at: removing x does not place the graph in the class");
    return param(g, x);
}

std::vector<std::string> cliquesum_check(const Graph& g, const TreeDecomposition& td,
                                         const std::function<bool(const Graph&)>& torso_pred) {
    std::vector<std::string> bad = validate_td(g, td);
    if (!bad.empty()) return bad;
    for (const auto& [node, bag] : td.bags)
        if (!torso_pred(torso_at(g, td, node)))
            bad.push_back("torso at node " + std::to_string(node) + " violates the predicate");
    return bad;
}

namespace {

struct CliquesumSearch {
    const std::function<bool(const Graph&)>& pred;
    std::map<std::pair<std::vector<int>, std::vector<std::pair<int, int>>>, bool> failed;

    // verts: original labels; extra: clique-completion edges added by parents.
    std::optional<TreeDecomposition> solve(const Graph& g, std::vector<int> verts,
                                           std::vector<std::pair<int, int>> extra) {
        std::sort(verts.begin(), verts.end());
        std::sort(extra.begin(), extra.end());
        auto key = std::make_pair(verts, extra);
        if (failed.count(key)) return std::nullopt;
        int m = static_cast<int>(verts.size());
        std::map<int, int> idx;
        for (int i = 0; i < m; ++i) idx[verts[i]] = i;
        Graph h(m);
        for (auto [u, v] : g.edge_list())
            if (idx.count(u) && idx.count(v)) h.add_edge(idx[u], idx[v]);
        for (auto [u, v] : extra) h.add_edge(idx[u], idx[v]);
        if (pred(h)) {
            TreeDecomposition td;
            td.tree = Graph(1);
            td.bags[0] = VertexSet(verts.begin(), verts.end());
            return td;
        }
        // try every separation (A, B) with both private sides non-empty
        for (u64 smask = 0; smask < (u64(1) << m); ++smask) {
            VertexSet sep, others;
            for (int i = 0; i < m; ++i)
                (smask & (u64(1) << i) ? sep : others).insert(i);
            if (others.empty()) continue;
            auto comps = connected_components_within(h, others);
            int c = static_cast<int>(comps.size());
            if (c < 2) continue;
            for (u64 side = 1; side + 1 < (u64(1) << c); ++side) {
                std::vector<int> va, vb;
                std::vector<std::pair<int, int>> ea, eb;
                for (int i : sep) {
                    va.push_back(verts[i]);
                    vb.push_back(verts[i]);
                }
                for (int ci = 0; ci < c; ++ci)
                    for (int i : comps[ci]) (side & (u64(1) << ci) ? va : vb).push_back(verts[i]);
                std::vector<int> sv(sep.begin(), sep.end());
                for (size_t i = 0; i < sv.size(); ++i)
                    for (size_t j = i + 1; j < sv.size(); ++j) {
                        auto e = std::minmax(verts[sv[i]], verts[sv[j]]);
                        ea.push_back({e.first, e.second});
                        eb.push_back({e.first, e.second});
                    }
                auto keep = [&](const std::vector<int>& vs, std::vector<std::pair<int, int>> base) {
                    std::set<int> in(vs.begin(), vs.end());
                    for (auto [u, v] : extra)
                        if (in.count(u) && in.count(v)) base.push_back({u, v});
                    std::sort(base.begin(), base.end());
                    base.erase(std::unique(base.begin(), base.end()), base.end());
                    return base;
                };
                auto ta = solve(g, va, keep(va, ea));
                if (!ta) continue;
                auto tb = solve(g, vb, keep(vb, eb));
                if (!tb) continue;
                // merge: link a bag containing the separator on each side
                VertexSet sepset;
                for (int i : sep) sepset.insert(verts[i]);
                auto find_bag = [&](const TreeDecomposition& td) {
                    for (const auto& [node, bag] : td.bags) {
                        bool all = true;
                        for (int v : sepset)
                            if (!bag.count(v)) all = false;
                        if (all) return node;
                    }
                    throw DomainError("cliquesum_search: separator clique not in any bag");
                };
                int na = ta->tree.num_vertices();
                TreeDecomposition merged;
                merged.tree = disjoint_union(ta->tree, tb->tree);
                for (const auto& [node, bag] : ta->bags) merged.bags[node] = bag;
                for (const auto& [node, bag] : tb->bags) merged.bags[node + na] = bag;
                merged.tree.add_edge(find_bag(*ta), find_bag(*tb) + na);
                return merged;
            }
        }
        failed[key] = true;
        return std::nullopt;
    }
};

}  // namespace

std::optional<TreeDecomposition> cliquesum_search(const Graph& g,
                                                  const std::function<bool(const Graph&)>& torso_pred) {
    if (g.num_vertices() > 8) throw BudgetError("cliquesum_search: more than 8 vertices");
    std::vector<int> verts(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) verts[v] = v;
    CliquesumSearch cs{torso_pred, {}};
    auto td = cs.solve(g, verts, {});
    if (td) {
        auto bad = cliquesum_check(g, *td, torso_pred);
        if (!bad.empty()) throw DomainError("cliquesum_search: produced decomposition invalid: " + bad.front());
    }
    return td;
}

int param_eval(const Graph& g, const ParamSpec& spec, const SearchBudget& budget) {
    std::vector<std::pair<int, int>> shapes;  // (h, c) candidates
    switch (spec.kind) {
        case ParamSpec::Kind::genus_bg:
            if (spec.genus < 0) throw DomainError("param_eval: negative genus");
            for (int h = 0; 2 * h <= spec.genus; ++h) {
                int c = spec.genus - 2 * h;
                if (c <= 2) shapes.push_back({h, c});
            }
            break;
        case ParamSpec::Kind::sobs_bg:
            for (const Surface& sig : sobs(spec.s))
                if (!sig.empty) shapes.push_back({sig.h, sig.c});
            break;
        case ParamSpec::Kind::surface_bg:
            if (spec.sigma.empty) throw DomainError("param_eval: empty surface");
            shapes.push_back({spec.sigma.h, spec.sigma.c});
            break;
    }
    int best = 0;
    for (int k = 1;; ++k) {
        bool any = false;
        for (auto [h, c] : shapes)
            if (4 * (h + c + 1) * k * k <= g.num_vertices() && dyck_grid(h, c, k).graph == g) any = true;
        for (auto [h, c] : shapes) {
            if (any) break;
            if (4 * (h + c + 1) * k * k > g.num_vertices()) continue;  // provably too big
            Graph pattern = dyck_grid(h, c, k).graph;
            auto r = find_minor(g, pattern, std::nullopt, budget);
            if (r.status == SearchStatus::budget_exceeded)
                throw BudgetError("param_eval: search budget exhausted at k=" + std::to_string(k));
            if (r.status == SearchStatus::found) {
                any = true;
                break;
            }
        }
        if (!any) return best;
        best = k;
    }
}

void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
    int maxbag = 0;
    for (const auto& [node, bag] : td.bags) maxbag = std::max(maxbag, static_cast<int>(bag.size()));
    out << "s td " << td.bags.size() << " " << maxbag << " " << n << "\n";
    std::map<int, int> file_id;
    int next = 1;
    for (const auto& [node, bag] : td.bags) file_id[node] = next++;
    for (const auto& [node, bag] : td.bags) {
        out << "b " << file_id[node];
        for (int v : bag) out << " " << v + 1;
        out << "\n";
    }
    for (auto [s, t] : td.tree.edge_list()) out << file_id[s] << " " << file_id[t] << "\n";
}

TreeDecomposition read_td(std::istream& in) {
    std::string line;
    TreeDecomposition td;
    int nbags = -1, declared_n = -1, maxbag = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 's') {
            std::string s, t;
            if (!(ls >> s >> t >> nbags >> maxbag >> declared_n) || s != "s" || t != "td" || nbags < 0)
                throw DomainError("read_td: malformed header: " + line);
        } else if (line[0] == 'b') {
            char b;
            int id;
            if (!(ls >> b >> id) || id < 1 || id > nbags) throw DomainError("read_td: malformed bag line: " + line);
            VertexSet bag;
            int v;
            while (ls >> v) {
                if (v < 1 || v > declared_n) throw DomainError("read_td: bag vertex out of range: " + line);
                bag.insert(v - 1);
            }
            if (td.bags.count(id - 1)) throw DomainError("read_td: duplicate bag " + std::to_string(id));
            td.bags[id - 1] = std::move(bag);
        } else {
            int a, b;
            if (!(ls >> a >> b) || a < 1 || b < 1 || a > nbags || b > nbags)
                throw DomainError("read_td: malformed edge line: " + line);
            edges.push_back({a - 1, b - 1});
        }
    }
    if (nbags < 0) throw DomainError("read_td: missing header");
    if (static_cast<int>(td.bags.size()) != nbags) throw DomainError("read_td: bag count mismatch");
    for (const auto& [node, bag] : td.bags)
        if (static_cast<int>(bag.size()) > maxbag) throw DomainError("read_td: bag larger than declared maximum");
    td.tree = Graph(nbags);
    for (auto [a, b] : edges) td.tree.add_edge(a, b);
    return td;
}

}  // namespace minorkit
