#include "minorkit/connectivity.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

namespace minorkit {
namespace {

using u64 = std::uint64_t;

void require_mask_range(const Graph& g, const char* what) {
    if (g.num_vertices() > 64) throw BudgetError(std::string(what) + ": supported only for n <= 64");
}

u64 mask_of(const VertexSet& s) {
    u64 m = 0;
    for (int v : s) m |= (u64(1) << v);
    return m;
}

VertexSet set_of(u64 m) {
    VertexSet s;
    for (int v = 0; v < 64; ++v)
        if (m >> v & 1) s.insert(v);
    return s;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet r = a;
    r.insert(b.begin(), b.end());
    return r;
}

VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    for (int v : a)
        if (b.count(v)) r.insert(v);
    return r;
}

VertexSet set_diff(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    for (int v : a)
        if (!b.count(v)) r.insert(v);
    return r;
}

bool subset_of(const VertexSet& a, const VertexSet& b) {
    for (int v : a)
        if (!b.count(v)) return false;
    return true;
}

std::string set_to_string(const VertexSet& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int v : s) {
        if (!first) os << ",";
        os << v;
        first = false;
    }
    os << "}";
    return os.str();
}

// |S n B| > alpha * |S|, by cross-multiplication.
bool strict_majority(long long part, long long total, Rational alpha) {
    return part * alpha.den > alpha.num * total;
}

void check_alpha(Rational alpha) {
    if (alpha.den <= 0 || alpha.num <= 0) throw DomainError("alpha must be a positive rational");
    if (3 * alpha.num < 2 * alpha.den || alpha.num >= alpha.den)
        throw DomainError("alpha must lie in [2/3, 1)");
}

// Components of g restricted to `alive` (bitmask), as bitmasks.
std::vector<u64> mask_components(const Graph& g, u64 alive) {
    std::vector<u64> comps;
    u64 seen = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!(alive >> v & 1) || (seen >> v & 1)) continue;
        u64 comp = 0;
        std::deque<int> bfs{v};
        seen |= u64(1) << v;
        comp |= u64(1) << v;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop_front();
            for (int w : g.neighbors(u)) {
                if ((alive >> w & 1) && !(seen >> w & 1)) {
                    seen |= u64(1) << w;
                    comp |= u64(1) << w;
                    bfs.push_back(w);
                }
            }
        }
        comps.push_back(comp);
    }
    return comps;
}

// ---------------------------------------------------------------------------
// Unit-capacity vertex-split max-flow (Dinic).  Node 2v = "in", 2v+1 = "out".

struct FlowNet {
    struct Edge {
        int to, cap, flow;
    };
    int num_nodes;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> out;  // node -> edge indices
    std::vector<int> level, iter;
    static constexpr int INF = 1 << 29;

    explicit FlowNet(int nodes) : num_nodes(nodes), out(nodes) {}

    void add_edge(int from, int to, int cap) {
        out[from].push_back(static_cast<int>(edges.size()));
        edges.push_back({to, cap, 0});
        out[to].push_back(static_cast<int>(edges.size()));
        edges.push_back({from, 0, 0});
    }

    bool bfs(int s, int t) {
        level.assign(num_nodes, -1);
        std::deque<int> q{s};
        level[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int ei : out[v]) {
                const Edge& e = edges[ei];
                if (e.cap - e.flow > 0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push_back(e.to);
                }
            }
        }
        return level[t] >= 0;
    }

    int dfs(int v, int t, int f) {
        if (v == t) return f;
        for (int& i = iter[v]; i < static_cast<int>(out[v].size()); ++i) {
            int ei = out[v][i];
            Edge& e = edges[ei];
            if (e.cap - e.flow > 0 && level[v] < level[e.to]) {
                int d = dfs(e.to, t, std::min(f, e.cap - e.flow));
                if (d > 0) {
                    e.flow += d;
                    edges[ei ^ 1].flow -= d;
                    return d;
                }
            }
        }
        return 0;
    }

    int max_flow(int s, int t) {
        int total = 0;
        while (bfs(s, t)) {
            iter.assign(num_nodes, 0);
            while (int f = dfs(s, t, INF)) total += f;
        }
        return total;
    }
};

// Build the split network for g restricted to `alive`, X as sources, Y as sinks.
struct SplitFlow {
    FlowNet net;
    int source, sink, n;

    SplitFlow(const Graph& g, const VertexSet& x, const VertexSet& y, const VertexSet& alive)
        : net(2 * g.num_vertices() + 2),
          source(2 * g.num_vertices()),
          sink(2 * g.num_vertices() + 1),
          n(g.num_vertices()) {
        for (int v : alive) net.add_edge(2 * v, 2 * v + 1, 1);
        for (auto [u, v] : g.edge_list()) {
            if (!alive.count(u) || !alive.count(v)) continue;
            net.add_edge(2 * u + 1, 2 * v, FlowNet::INF);
            net.add_edge(2 * v + 1, 2 * u, FlowNet::INF);
        }
        for (int v : x)
            if (alive.count(v)) net.add_edge(source, 2 * v, FlowNet::INF);
        for (int v : y)
            if (alive.count(v)) net.add_edge(2 * v + 1, sink, FlowNet::INF);
    }

    int run() { return net.max_flow(source, sink); }
};

VertexSet all_vertices(const Graph& g) {
    VertexSet s;
    for (int v = 0; v < g.num_vertices(); ++v) s.insert(v);
    return s;
}

int flow_value(const Graph& g, const VertexSet& x, const VertexSet& y, const VertexSet& alive) {
    SplitFlow sf(g, x, y, alive);
    return sf.run();
}

// Lexicographically smallest minimum X-Y vertex cut within `alive`
// (terminal vertices are allowed in the cut).
VertexSet lex_min_cut(const Graph& g, const VertexSet& x, const VertexSet& y,
                      const VertexSet& alive0) {
    VertexSet alive = alive0;
    int m = flow_value(g, x, y, alive);
    VertexSet cut;
    for (int v = 0; v < g.num_vertices() && static_cast<int>(cut.size()) < m; ++v) {
        if (!alive.count(v)) continue;
        VertexSet alive2 = alive;
        alive2.erase(v);
        int need = m - static_cast<int>(cut.size()) - 1;
        if (flow_value(g, x, y, alive2) == need) {
            cut.insert(v);
            alive = alive2;
        }
    }
    if (static_cast<int>(cut.size()) != m)
        throw DomainError("lex_min_cut: internal inconsistency");
    return cut;
}

// Separation from a cut: A = cut u (vertices reaching X in g - cut within alive).
Separation separation_from_cut(const Graph& g, const VertexSet& x, const VertexSet& cut,
                               const VertexSet& alive) {
    VertexSet reached;
    std::deque<int> q;
    for (int v : x)
        if (alive.count(v) && !cut.count(v)) {
            if (reached.insert(v).second) q.push_back(v);
        }
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : g.neighbors(u))
            if (alive.count(w) && !cut.count(w) && reached.insert(w).second) q.push_back(w);
    }
    Separation s;
    s.a = set_union(reached, cut);
    s.b = set_union(set_diff(alive, reached), cut);
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

int Separation::order() const { return static_cast<int>(set_intersect(a, b).size()); }

bool Separation::operator<(const Separation& o) const {
    if (a != o.a) return a < o.a;
    return b < o.b;
}

bool validate_separation(const Graph& g, const Separation& s) {
    for (int v : s.a)
        if (v < 0 || v >= g.num_vertices()) return false;
    for (int v : s.b)
        if (v < 0 || v >= g.num_vertices()) return false;
    if (static_cast<int>(set_union(s.a, s.b).size()) != g.num_vertices()) return false;
    for (auto [u, v] : g.edge_list()) {
        bool ua = s.a.count(u) && !s.b.count(u), ub = s.b.count(u) && !s.a.count(u);
        bool va = s.a.count(v) && !s.b.count(v), vb = s.b.count(v) && !s.a.count(v);
        if ((ua && vb) || (ub && va)) return false;
    }
    return true;
}

std::vector<Separation> enumerate_separations(const Graph& g, int k, std::int64_t limit) {
    if (k < 0) throw DomainError("enumerate_separations: negative order bound");
    require_mask_range(g, "enumerate_separations");
    std::vector<Separation> result;
    if (k == 0) return result;
    const int n = g.num_vertices();
    const u64 full = (n == 64) ? ~u64(0) : ((u64(1) << n) - 1);

    std::vector<int> comb;
    std::int64_t count = 0;
    // Enumerate all candidate separators C with |C| < k; every separation
    // (A,B) arises from exactly one C = A n B with a unique side assignment
    // of the components of G - C.
    auto emit_for = [&](u64 cmask) {
        std::vector<u64> comps = mask_components(g, full & ~cmask);
        if (comps.size() > 30) throw BudgetError("enumerate_separations: too many components");
        const u64 nassign = u64(1) << comps.size();
        count += static_cast<std::int64_t>(nassign);
        if (count > limit) throw BudgetError("enumerate_separations: budget exceeded");
        for (u64 assign = 0; assign < nassign; ++assign) {
            u64 am = cmask, bm = cmask;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                if (assign >> i & 1)
                    am |= comps[i];
                else
                    bm |= comps[i];
            }
            result.push_back({set_of(am), set_of(bm)});
        }
    };
    std::function<void(int, u64)> choose = [&](int start, u64 cmask) {
        emit_for(cmask);
        if (static_cast<int>(comb.size()) + 1 >= k) return;
        for (int v = start; v < n; ++v) {
            comb.push_back(v);
            choose(v + 1, cmask | (u64(1) << v));
            comb.pop_back();
        }
    };
    choose(0, 0);
    std::sort(result.begin(), result.end());
    return result;
}

// ---------------------------------------------------------------------------

WellLinkedCertificate is_well_linked(const Graph& g, const VertexSet& s, int q, Rational alpha) {
    check_alpha(alpha);
    if (q < 0) throw DomainError("is_well_linked: negative budget q");
    require_mask_range(g, "is_well_linked");
    const int n = g.num_vertices();
    const u64 full = (n == 64) ? ~u64(0) : ((u64(1) << n) - 1);
    const u64 smask = mask_of(s);
    const long long stotal = static_cast<long long>(s.size());

    WellLinkedCertificate cert;
    cert.s = s;
    cert.q = q;
    cert.alpha = alpha;

    std::int64_t tested = 0;
    std::vector<int> comb;
    std::function<bool(int, u64)> search = [&](int start, u64 xmask) -> bool {
        if (++tested > 4000000) throw BudgetError("is_well_linked: budget exceeded");
        bool balanced = true;
        for (u64 comp : mask_components(g, full & ~xmask)) {
            long long in_s = static_cast<long long>(__builtin_popcountll(comp & smask));
            if (strict_majority(in_s, stotal, alpha)) {
                balanced = false;
                break;
            }
        }
        if (balanced) {
            cert.well_linked = false;
            cert.witness = set_of(xmask);
            return true;
        }
        if (static_cast<int>(comb.size()) >= q) return false;
        for (int v = start; v < n; ++v) {
            comb.push_back(v);
            if (search(v + 1, xmask | (u64(1) << v))) return true;
            comb.pop_back();
        }
        return false;
    };
    cert.well_linked = !search(0, 0);
    return cert;
}

// ---------------------------------------------------------------------------

int max_disjoint_paths(const Graph& g, const VertexSet& x, const VertexSet& y) {
    return flow_value(g, x, y, all_vertices(g));
}

std::vector<std::vector<int>> disjoint_paths(const Graph& g, const VertexSet& x,
                                             const VertexSet& y) {
    SplitFlow sf(g, x, y, all_vertices(g));
    sf.run();
    // Index flows for walking: flow on out(u) -> in(w) edges and terminal edges.
    std::map<std::pair<int, int>, int> arc_flow;  // (from node, to node) -> flow
    for (std::size_t ei = 0; ei < sf.net.edges.size(); ei += 2) {
        const auto& e = sf.net.edges[ei];
        if (e.flow > 0) {
            int from = sf.net.edges[ei ^ 1].to;
            arc_flow[{from, e.to}] += e.flow;
        }
    }
    std::vector<std::vector<int>> paths;
    for (int xv : x) {
        auto it = arc_flow.find({sf.source, 2 * xv});
        if (it == arc_flow.end() || it->second <= 0) continue;
        --it->second;
        std::vector<int> path{xv};
        int cur = xv;
        while (true) {
            auto term = arc_flow.find({2 * cur + 1, sf.sink});
            if (y.count(cur) && term != arc_flow.end() && term->second > 0) {
                --term->second;
                break;
            }
            bool advanced = false;
            for (int w : g.neighbors(cur)) {
                auto step = arc_flow.find({2 * cur + 1, 2 * w});
                if (step != arc_flow.end() && step->second > 0) {
                    --step->second;
                    path.push_back(w);
                    cur = w;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) throw DomainError("disjoint_paths: flow decomposition failed");
        }
        paths.push_back(path);
    }
    return paths;
}

Separation min_order_separation(const Graph& g, const VertexSet& x, const VertexSet& y) {
    VertexSet alive = all_vertices(g);
    VertexSet cut = lex_min_cut(g, x, y, alive);
    Separation s = separation_from_cut(g, x, cut, alive);
    if (!validate_separation(g, s) || !subset_of(x, s.a) || !subset_of(y, s.b))
        throw DomainError("min_order_separation: internal inconsistency");
    return s;
}

// ---------------------------------------------------------------------------

StrongLinkResult is_strongly_linked(const Graph& g, const VertexSet& s) {
    if (s.size() > 14) throw BudgetError("is_strongly_linked: |S| <= 14 supported");
    StrongLinkResult res;
    res.strongly_linked = true;
    if (s.size() <= 1) return res;
    std::vector<int> sv(s.begin(), s.end());
    const int rest = static_cast<int>(sv.size()) - 1;
    for (u64 pick = 0; pick + 1 < (u64(1) << rest); ++pick) {
        VertexSet s1{sv[0]}, s2;
        for (int i = 0; i < rest; ++i) {
            if (pick >> i & 1)
                s1.insert(sv[i + 1]);
            else
                s2.insert(sv[i + 1]);
        }
        int need = static_cast<int>(std::min(s1.size(), s2.size()));
        if (max_disjoint_paths(g, s1, s2) < need) {
            res.strongly_linked = false;
            res.s1 = s1;
            res.s2 = s2;
            res.violation = min_order_separation(g, s1, s2);
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------

namespace {

// First separation of order < min(|F|, cap) violating S-freeness of F, if any.
std::optional<Separation> s_free_violation(const Graph& g, const VertexSet& f, const VertexSet& s,
                                           Rational alpha, int order_cap) {
    int bound = std::min<int>(static_cast<int>(f.size()), order_cap);
    const long long stotal = static_cast<long long>(s.size());
    for (const Separation& sep : enumerate_separations(g, bound)) {
        if (!subset_of(f, sep.a)) continue;
        long long in_s = static_cast<long long>(set_intersect(sep.a, s).size());
        if (!strict_majority(in_s, stotal, alpha)) return sep;
    }
    return std::nullopt;
}

}  // namespace

bool is_s_free(const Graph& g, const VertexSet& f, const VertexSet& s, Rational alpha,
               int order_cap) {
    check_alpha(alpha);
    return !s_free_violation(g, f, s, alpha, order_cap).has_value();
}

VertexSet free_set(const Graph& g, const VertexSet& s, Rational alpha, int k,
                   int verify_order_cap) {
    check_alpha(alpha);
    if (k < 1) throw DomainError("free_set: k must be positive");
    VertexSet f;
    if (k == 1) return f;
    if (static_cast<int>(s.size()) < 3 * k + 1)
        throw DomainError("free_set: |S| < 3k+1, so S cannot be (k,alpha)-well-linked");
    const long long stotal = static_cast<long long>(s.size());

    // F_0: any vertex of a component carrying a strict S-majority.
    std::optional<int> x0;
    for (const VertexSet& comp : connected_components(g)) {
        if (strict_majority(static_cast<long long>(set_intersect(comp, s).size()), stotal, alpha)) {
            x0 = *comp.begin();
            break;
        }
    }
    if (!x0)
        throw DomainError("free_set: no component holds an S-majority; S is not well-linked");
    f.insert(*x0);

    auto verify = [&](const VertexSet& cand) {
        if (auto bad = s_free_violation(g, cand, s, alpha, verify_order_cap))
            throw DomainError("free_set: candidate " + set_to_string(cand) +
                              " is not S-free; violating separation A=" + set_to_string(bad->a) +
                              " B=" + set_to_string(bad->b));
    };
    verify(f);

    while (static_cast<int>(f.size()) < k - 1) {
        // Push (A,B) = (F, V) towards S: repeatedly replace B by the smallest
        // sink side of a minimum cut between A n B and B n S inside G[B].
        VertexSet a = f, b = all_vertices(g);
        while (true) {
            VertexSet t1 = set_intersect(a, b), t2 = set_intersect(b, s);
            SplitFlow sf(g, t1, t2, b);
            sf.run();
            // Sink side of the residual: nodes from which the sink is reachable.
            std::vector<char> coreach(sf.net.num_nodes, 0);
            std::deque<int> q{sf.sink};
            coreach[sf.sink] = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                for (int ei : sf.net.out[v]) {
                    // Residual arc into v exists iff the paired arc (w -> v) has
                    // spare capacity; edge ei here is (v -> w), its pair is (w -> v).
                    const auto& back = sf.net.edges[ei ^ 1];
                    int w = sf.net.edges[ei].to;
                    if (back.cap - back.flow > 0 && !coreach[w]) {
                        coreach[w] = 1;
                        q.push_back(w);
                    }
                }
            }
            VertexSet bnew;
            for (int v : b)
                if (coreach[2 * v + 1]) bnew.insert(v);
            if (bnew == b) break;
            a = set_union(a, set_diff(b, bnew));
            VertexSet cutv;
            for (int v : bnew)
                if (!coreach[2 * v]) cutv.insert(v);
            a = set_union(a, cutv);
            b = set_union(bnew, cutv);
            Separation check{a, b};
            if (!validate_separation(g, check) ||
                check.order() > static_cast<int>(f.size()) ||
                !strict_majority(static_cast<long long>(set_intersect(b, s).size()), stotal, alpha))
                throw DomainError("free_set: push step produced an invalid separation");
        }
        VertexSet pool = set_diff(b, a);
        if (pool.empty())
            throw DomainError("free_set: pushed separation has empty B-side interior; "
                              "S is not (k,alpha)-well-linked");
        f.insert(*pool.begin());
        verify(f);
    }
    return f;
}

// ---------------------------------------------------------------------------

void validate_tangle(const Graph& g, const Tangle& t) {
    require_mask_range(g, "validate_tangle");
    std::vector<Separation> all = enumerate_separations(g, t.order);
    std::set<Separation> universe(all.begin(), all.end());
    std::set<Separation> oriented;
    for (const Separation& sep : t.oriented) {
        if (!universe.count(sep))
            throw DomainError("tangle: oriented element A=" + set_to_string(sep.a) +
                              " B=" + set_to_string(sep.b) +
                              " is not a separation of order < " + std::to_string(t.order));
        if (!oriented.insert(sep).second)
            throw DomainError("tangle: duplicate oriented separation A=" + set_to_string(sep.a));
    }
    for (const Separation& sep : all) {
        Separation rev{sep.b, sep.a};
        int cnt = static_cast<int>(oriented.count(sep)) + static_cast<int>(oriented.count(rev));
        if (sep.a == sep.b) cnt = static_cast<int>(oriented.count(sep)) * 2;  // self-paired
        if (cnt == 0)
            throw DomainError("tangle: orientation incomplete; neither orientation of A=" +
                              set_to_string(sep.a) + " B=" + set_to_string(sep.b) + " present");
        if (cnt > 2 || (cnt == 2 && !(sep.a == sep.b)))
            throw DomainError("tangle: both orientations present for A=" + set_to_string(sep.a) +
                              " B=" + set_to_string(sep.b));
    }
    // Three-small-sides axiom: no triple (repetition allowed) of small sides
    // covers V.  Distinct sides sorted by size let popcount bounds prune the
    // scan while keeping it exhaustive.
    std::set<u64> side_set;
    for (const Separation& sep : oriented) side_set.insert(mask_of(sep.a));
    std::vector<u64> sides(side_set.begin(), side_set.end());
    const int n = g.num_vertices();
    const u64 full = (n == 64) ? ~u64(0) : ((u64(1) << n) - 1);
    std::sort(sides.begin(), sides.end(), [](u64 x, u64 y) {
        return __builtin_popcountll(x) > __builtin_popcountll(y);
    });
    for (std::size_t i = 0; i < sides.size(); ++i) {
        if (3 * __builtin_popcountll(sides[i]) < n) break;
        for (std::size_t j = i; j < sides.size(); ++j) {
            u64 ij = sides[i] | sides[j];
            if (__builtin_popcountll(sides[i]) + 2 * __builtin_popcountll(sides[j]) < n) break;
            for (std::size_t l = j; l < sides.size(); ++l) {
                if (__builtin_popcountll(ij) + __builtin_popcountll(sides[l]) < n) break;
                if ((ij | sides[l]) == full)
                    throw DomainError("tangle: three small sides cover V: " +
                                      set_to_string(set_of(sides[i])) + " " +
                                      set_to_string(set_of(sides[j])) + " " +
                                      set_to_string(set_of(sides[l])));
            }
        }
    }
}

Tangle tangle_from_free_set(const Graph& g, const VertexSet& f, int k) {
    if (k < 1) throw DomainError("tangle_from_free_set: order must be positive");
    if (static_cast<int>(f.size()) < 3 * k)
        throw DomainError("tangle_from_free_set: need |F| >= 3k");
    Tangle t;
    t.order = k;
    for (const Separation& sep : enumerate_separations(g, k))
        if (static_cast<int>(set_intersect(sep.b, f).size()) > 2 * k) t.oriented.push_back(sep);
    return t;
}

Tangle tangle_from_welllinked(const Graph& g, const VertexSet& s, int q, Rational alpha) {
    check_alpha(alpha);
    if (q < 0) throw DomainError("tangle_from_welllinked: negative q");
    Tangle t;
    t.order = q + 1;
    const long long stotal = static_cast<long long>(s.size());
    for (const Separation& sep : enumerate_separations(g, q + 1))
        if (strict_majority(static_cast<long long>(set_intersect(sep.b, s).size()), stotal, alpha))
            t.oriented.push_back(sep);
    return t;
}

EmbeddedWall elementary_wall_layout(int k) {
    if (k < 2) throw DomainError("elementary_wall_layout: need k >= 2");
    EmbeddedWall w;
    w.k = k;
    std::map<int, std::pair<int, int>> coord;
    if (k == 2) {
        // Degenerate 2-wall: the 6-cycle left of pruning the (2 x 4)-grid.
        Graph g(6);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(3, 4);
        g.add_edge(4, 5);
        g.add_edge(0, 3);
        g.add_edge(2, 5);
        w.edges = g.edge_list();
        coord = {{0, {1, 2}}, {1, {1, 3}}, {2, {1, 4}}, {3, {2, 2}}, {4, {2, 3}}, {5, {2, 4}}};
        for (int v = 0; v < 6; ++v) w.vertices.insert(v);
    } else {
        Wall ew = elementary_wall(k);
        w.edges = ew.graph.edge_list();
        coord = ew.coord;
        for (const auto& [v, rc] : coord) w.vertices.insert(v);
    }
    w.rows.assign(k, {});
    w.cols.assign(k, {});
    for (const auto& [v, rc] : coord) {
        w.rows[rc.first - 1].insert(v);
        w.cols[(rc.second - 1) / 2].insert(v);
    }
    return w;
}

Tangle tangle_of_wall(const Graph& g, const EmbeddedWall& w) {
    require_mask_range(g, "tangle_of_wall");
    std::vector<u64> rows, cols;
    for (const VertexSet& r : w.rows) rows.push_back(mask_of(r));
    for (const VertexSet& c : w.cols) cols.push_back(mask_of(c));
    auto hosts_wall = [&](u64 exclusive) {
        bool row_ok = false, col_ok = false;
        for (u64 r : rows) row_ok = row_ok || (r & ~exclusive) == 0;
        for (u64 c : cols) col_ok = col_ok || (c & ~exclusive) == 0;
        return row_ok && col_ok;
    };
    Tangle t;
    t.order = w.k;
    std::vector<Separation> all = enumerate_separations(g, w.k);
    for (const Separation& sep : all) {
        u64 am = mask_of(sep.a), bm = mask_of(sep.b);
        bool good_b = hosts_wall(bm & ~am);
        bool good_a = hosts_wall(am & ~bm);
        if (good_a && good_b)
            throw DomainError("tangle_of_wall: both sides host the wall (not a k-wall?)");
        if (good_b) t.oriented.push_back(sep);
    }
    if (2 * t.oriented.size() != all.size())
        throw DomainError("tangle_of_wall: some separation has no wall-majority side");
    return t;
}

bool is_truncation(const Tangle& t1, const Tangle& t2) {
    if (t1.order > t2.order) return false;
    std::set<Separation> have(t2.oriented.begin(), t2.oriented.end());
    for (const Separation& sep : t1.oriented)
        if (!have.count(sep)) return false;
    return true;
}

nlohmann::json tangle_to_json(const Tangle& t) {
    nlohmann::json seps = nlohmann::json::array();
    for (const Separation& s : t.oriented)
        seps.push_back({{"a", std::vector<int>(s.a.begin(), s.a.end())},
                        {"b", std::vector<int>(s.b.begin(), s.b.end())}});
    return {{"order", t.order}, {"separations", seps}};
}

Tangle tangle_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("separations"))
        throw DomainError("tangle JSON: need {order, separations}");
    Tangle t;
    t.order = j.at("order").get<int>();
    for (const auto& js : j.at("separations")) {
        Separation s;
        for (int v : js.at("a").get<std::vector<int>>()) s.a.insert(v);
        for (int v : js.at("b").get<std::vector<int>>()) s.b.insert(v);
        t.oriented.push_back(s);
    }
    return t;
}

// ---------------------------------------------------------------------------

AugmentResult augment_or_separate(const Graph& g, const VertexSet& x, const VertexSet& y, int k) {
    if (k < 1) throw DomainError("augment_or_separate: k must be positive");
    AugmentResult res;
    if (max_disjoint_paths(g, x, y) >= k) {
        auto paths = disjoint_paths(g, x, y);
        paths.resize(k);
        res.kind = AugmentResult::Kind::paths;
        res.paths = std::move(paths);
        return res;
    }
    if (static_cast<int>(x.size()) < k || static_cast<int>(y.size()) < 3 * k)
        throw DomainError("augment_or_separate: need |X| >= k and |Y| >= 3k");
    if (!is_strongly_linked(g, x).strongly_linked)
        throw DomainError("augment_or_separate: X is not strongly linked");
    if (!is_strongly_linked(g, y).strongly_linked)
        throw DomainError("augment_or_separate: Y is not strongly linked");

    Separation ab = min_order_separation(g, x, y);
    const VertexSet& a = ab.a;
    const VertexSet& b = ab.b;
    for (auto [u, v] : g.edge_list()) {
        if (!b.count(u) || !b.count(v)) continue;
        // Candidate edge e = uv of G[B]: delete it and retest strong linkage.
        Graph g2(g.num_vertices());
        for (auto [p, q] : g.edge_list())
            if (!(p == u && q == v)) g2.add_edge(p, q);
        StrongLinkResult sl = is_strongly_linked(g2, x);
        if (sl.strongly_linked) {
            res.kind = AugmentResult::Kind::safe_edge;
            res.edge = {u, v};
            return res;
        }
        const Separation& lr = *sl.violation;
        VertexSet lonly = set_diff(lr.a, lr.b), ronly = set_diff(lr.b, lr.a);
        int cu = u, cv = v;
        if (lonly.count(v) && ronly.count(u)) std::swap(cu, cv);
        if (!(lonly.count(cu) && ronly.count(cv))) continue;
        // Uncrossing candidates (A u L, (B n R) u {cu}) and (A u R, (B n L) u {cv}).
        Separation c1{set_union(a, lr.a), set_union(set_intersect(b, lr.b), VertexSet{cu})};
        Separation c2{set_union(a, lr.b), set_union(set_intersect(b, lr.a), VertexSet{cv})};
        for (const Separation& cand : {c1, c2}) {
            if (!validate_separation(g, cand)) continue;
            if (cand.order() >= k) continue;
            if (!subset_of(x, cand.a)) continue;
            if (static_cast<int>(set_intersect(y, cand.b).size()) < k) continue;
            if (!subset_of(a, cand.a)) continue;
            if (!subset_of(cand.b, b) || cand.b == b) continue;
            res.kind = AugmentResult::Kind::separation;
            res.sep = cand;
            return res;
        }
    }
    throw DomainError("augment_or_separate: no outcome; preconditions likely violated");
}

// ---------------------------------------------------------------------------

namespace {

// Fast path: find the pattern as a subgraph of the host (not induced).
std::optional<std::vector<int>> subgraph_embedding(const Graph& host, const Graph& pattern,
                                                   std::int64_t node_limit) {
    const int pn = pattern.num_vertices(), hn = host.num_vertices();
    if (pn > hn) return std::nullopt;
    // BFS order so each placed vertex (except the first) has a placed neighbor.
    std::vector<int> order;
    std::vector<char> seen(pn, 0);
    for (int s = 0; s < pn; ++s) {
        if (seen[s]) continue;
        std::deque<int> q{s};
        seen[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            order.push_back(v);
            for (int w : pattern.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push_back(w);
                }
        }
    }
    std::vector<int> assign(pn, -1);
    std::vector<char> used(hn, 0);
    std::int64_t nodes = 0;
    std::function<bool(std::size_t)> rec = [&](std::size_t idx) -> bool {
        if (idx == order.size()) return true;
        if (++nodes > node_limit) throw BudgetError("subgraph search budget exceeded");
        int p = order[idx];
        for (int h = 0; h < hn; ++h) {
            if (used[h] || host.degree(h) < pattern.degree(p)) continue;
            bool ok = true;
            for (int q : pattern.neighbors(p))
                if (assign[q] >= 0 && !host.has_edge(assign[q], h)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            assign[p] = h;
            used[h] = 1;
            if (rec(idx + 1)) return true;
            assign[p] = -1;
            used[h] = 0;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return assign;
}

struct SubdivisionPieces {
    std::map<int, VertexSet> pruned;                       // pattern vertex -> tree vertices
    std::map<int, int> center;                             // pattern vertex -> host branch vertex
    std::map<std::pair<int, int>, std::vector<int>> legs;  // (pattern v, pattern edge id)
    std::vector<std::pair<int, int>> wall_edges;           // host edges of the subdivision
};

// Prune a minor model of a subcubic pattern to a subdivision: per branch set
// keep a Steiner tree of the attachment terminals; trees of <= 3 terminals
// have at most one degree-3 vertex, which becomes the branch vertex image.
SubdivisionPieces prune_to_subdivision(const Graph& host, const MinorModel& model) {
    const Graph& pat = model.pattern;
    auto edges = pat.edge_list();
    SubdivisionPieces out;
    // Lexicographically smallest realizing host edge per pattern edge.
    std::map<int, std::map<int, int>> terminal;  // pattern vertex -> edge id -> host terminal
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        auto [p, q] = edges[ei];
        std::optional<std::pair<int, int>> best;
        for (int u : model.branch_sets.at(p))
            for (int w : host.neighbors(u))
                if (model.branch_sets.at(q).count(w)) {
                    std::pair<int, int> cand{u, w};
                    if (!best || cand < *best) best = cand;
                }
        if (!best) throw DomainError("prune_to_subdivision: pattern edge not realized");
        terminal[p][static_cast<int>(ei)] = best->first;
        terminal[q][static_cast<int>(ei)] = best->second;
        out.wall_edges.push_back({std::min(best->first, best->second),
                                  std::max(best->first, best->second)});
    }
    for (int p = 0; p < pat.num_vertices(); ++p) {
        const VertexSet& bs = model.branch_sets.at(p);
        std::vector<std::pair<int, int>> terms(terminal[p].begin(), terminal[p].end());
        if (terms.empty()) {
            out.pruned[p] = {*bs.begin()};
            out.center[p] = *bs.begin();
            continue;
        }
        // Sequential Steiner tree inside the branch set.
        VertexSet tree{terms[0].second};
        std::map<int, std::vector<int>> tadj;
        for (auto [eid, t] : terms) {
            if (tree.count(t)) continue;
            // BFS from t within the branch set until the current tree is hit.
            std::map<int, int> parent;
            parent[t] = t;
            std::deque<int> q{t};
            int hit = -1;
            while (!q.empty() && hit < 0) {
                int v = q.front();
                q.pop_front();
                for (int w : host.neighbors(v)) {
                    if (!bs.count(w) || parent.count(w)) continue;
                    parent[w] = v;
                    if (tree.count(w)) {
                        hit = w;
                        break;
                    }
                    q.push_back(w);
                }
            }
            if (hit < 0) throw DomainError("prune_to_subdivision: branch set not connected");
            for (int v = hit; parent[v] != v; v = parent[v]) {
                tadj[v].push_back(parent[v]);
                tadj[parent[v]].push_back(v);
                tree.insert(parent[v]);
            }
            tree.insert(hit);
        }
        out.pruned[p] = tree;
        // Tree path between two vertices.
        auto tree_path = [&](int from, int to) {
            std::map<int, int> parent;
            parent[from] = from;
            std::deque<int> q{from};
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                if (v == to) break;
                for (int w : tadj[v])
                    if (!parent.count(w)) {
                        parent[w] = v;
                        q.push_back(w);
                    }
            }
            std::vector<int> path;
            for (int v = to;; v = parent.at(v)) {
                path.push_back(v);
                if (parent.at(v) == v) break;
            }
            std::reverse(path.begin(), path.end());
            return path;
        };
        // Center: median of the terminals in the tree (unique meeting vertex).
        int center = terms[0].second;
        if (terms.size() >= 2) {
            auto p01 = tree_path(terms[0].second, terms[1].second);
            if (terms.size() == 2) {
                center = terms[0].second;
            } else {
                auto p02 = tree_path(terms[0].second, terms[2].second);
                std::size_t i = 0;
                while (i < p01.size() && i < p02.size() && p01[i] == p02[i]) ++i;
                center = p01[i - 1];
            }
        }
        out.center[p] = center;
        for (auto [eid, t] : terms) out.legs[{p, eid}] = tree_path(center, t);
        for (const auto& [v, nb] : tadj)
            for (int w : nb)
                if (v < w) out.wall_edges.push_back({v, w});
    }
    std::sort(out.wall_edges.begin(), out.wall_edges.end());
    out.wall_edges.erase(std::unique(out.wall_edges.begin(), out.wall_edges.end()),
                         out.wall_edges.end());
    return out;
}

EmbeddedWall embed_wall(const Graph& host, const EmbeddedWall& layout, const MinorModel& model) {
    SubdivisionPieces pieces = prune_to_subdivision(host, model);
    EmbeddedWall w;
    w.k = layout.k;
    w.edges = pieces.wall_edges;
    for (const auto& [p, t] : pieces.pruned) w.vertices = set_union(w.vertices, t);

    auto edges = model.pattern.edge_list();
    auto image_of = [&](const VertexSet& group) {
        VertexSet img;
        for (int p : group) img.insert(pieces.center.at(p));
        for (std::size_t ei = 0; ei < edges.size(); ++ei) {
            auto [p, q] = edges[ei];
            if (!group.count(p) || !group.count(q)) continue;
            for (int v : pieces.legs.at({p, static_cast<int>(ei)})) img.insert(v);
            for (int v : pieces.legs.at({q, static_cast<int>(ei)})) img.insert(v);
        }
        return img;
    };
    for (const VertexSet& r : layout.rows) w.rows.push_back(image_of(r));
    for (const VertexSet& c : layout.cols) w.cols.push_back(image_of(c));

    // The pruned image must be a genuine subdivision: branch vertices keep
    // their pattern degree, every other vertex has degree 2.
    std::map<int, int> deg;
    for (auto [u, v] : w.edges) {
        ++deg[u];
        ++deg[v];
    }
    std::map<int, int> want;
    for (const auto& [p, c] : pieces.center) want[c] = model.pattern.degree(p);
    for (int v : w.vertices) {
        int expect = want.count(v) ? want.at(v) : 2;
        if (deg[v] != expect)
            throw DomainError("embed_wall: pruned image is not a subdivision at vertex " +
                              std::to_string(v));
    }
    return w;
}

}  // namespace

WallResult wall_from_welllinked(const Graph& g, const VertexSet& s, int k,
                                const SearchBudget& budget) {
    if (k < 2) throw DomainError("wall_from_welllinked: need k >= 2");
    if (k > 3 || g.num_vertices() > 40)
        throw BudgetError("wall_from_welllinked: desk-scale limit is k in {2,3} and n <= 40");
    const Rational alpha{2, 3};

    // Free set of size k, used for tangle cross-checks and edge-deletion recovery.
    std::optional<VertexSet> f;
    try {
        f = free_set(g, s, alpha, k + 1, k);
    } catch (const DomainError&) {
        f = std::nullopt;
    }

    EmbeddedWall layout = elementary_wall_layout(k);
    Graph pattern = Graph::from_edge_list(static_cast<int>(layout.vertices.size()), layout.edges);

    Graph cur = g;
    for (int round = 0; round <= g.num_edges(); ++round) {
        // Wall search: subgraph fast path, then exhaustive minor search.
        std::optional<MinorModel> model;
        std::optional<std::vector<int>> emb;
        try {
            emb = subgraph_embedding(cur, pattern, budget.node_limit);
        } catch (const BudgetError&) {
            emb = std::nullopt;
        }
        if (emb) {
            MinorModel m;
            m.pattern = pattern;
            m.host = cur;
            for (int p = 0; p < pattern.num_vertices(); ++p) m.branch_sets[p] = {(*emb)[p]};
            model = m;
        } else {
            SearchBudget b2 = budget;
            b2.max_pattern_vertices = std::max(b2.max_pattern_vertices, pattern.num_vertices());
            b2.max_host_vertices = std::max(b2.max_host_vertices, cur.num_vertices());
            SearchResult sr = find_minor(cur, pattern, std::nullopt, b2);
            if (sr.status == SearchStatus::budget_exceeded)
                throw BudgetError("wall_from_welllinked: minor search budget exceeded");
            if (sr.status == SearchStatus::none) {
                WallResult res;
                res.status = WallResult::Status::no_wall;
                res.tw = treewidth_exact(g, 20);
                return res;
            }
            model = sr.model;
        }

        EmbeddedWall wall = embed_wall(cur, layout, *model);
        // Verify in the original graph: T_W must be a tangle that truncates
        // the order-<k part of T_S (and of T_F when available).
        Tangle ts = tangle_from_welllinked(g, s, k - 1, alpha);
        validate_tangle(g, ts);
        Tangle tw = tangle_of_wall(g, wall);
        validate_tangle(g, tw);
        bool ok = is_truncation(tw, ts);
        if (ok && f && static_cast<int>(f->size()) >= 3) {
            Tangle tf = tangle_from_free_set(g, *f, static_cast<int>(f->size()) / 3);
            validate_tangle(g, tf);
            ok = is_truncation(tf, ts);
        }
        if (ok) {
            WallResult res;
            res.status = WallResult::Status::found;
            res.wall = wall;
            res.model = model;
            res.tangle = tw;
            res.free_vertices = f;
            return res;
        }
        // Recovery: drop an edge that keeps the free set strongly linked and retry.
        if (!f) throw DomainError("wall_from_welllinked: wall tangle does not truncate T_S "
                                  "and no free set is available for recovery");
        bool deleted = false;
        for (auto [u, v] : cur.edge_list()) {
            Graph next(cur.num_vertices());
            for (auto [p, q] : cur.edge_list())
                if (!(p == u && q == v)) next.add_edge(p, q);
            if (is_strongly_linked(next, *f).strongly_linked) {
                cur = next;
                deleted = true;
                break;
            }
        }
        if (!deleted)
            throw DomainError("wall_from_welllinked: no deletable edge preserves the free set");
    }
    throw DomainError("wall_from_welllinked: recovery loop did not terminate");
}

}  // namespace minorkit
