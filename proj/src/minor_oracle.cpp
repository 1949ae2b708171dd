#include "minorkit/minor_oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace minorkit {

std::vector<std::string> validate_model(const MinorModel& m) {
    std::vector<std::string> bad;
    const Graph& H = m.pattern;
    const Graph& G = m.host;
    std::vector<int> owner(G.num_vertices(), -1);
    for (int v = 0; v < H.num_vertices(); ++v)
        if (!m.branch_sets.count(v)) bad.push_back("missing branch set for pattern vertex " + std::to_string(v));
    for (const auto& [v, set] : m.branch_sets) {
        if (v < 0 || v >= H.num_vertices()) {
            bad.push_back("branch set for non-pattern vertex " + std::to_string(v));
            continue;
        }
        if (set.empty()) bad.push_back("empty branch set " + std::to_string(v));
        bool in_range = true;
        for (int u : set) {
            if (u < 0 || u >= G.num_vertices()) {
                bad.push_back("branch set " + std::to_string(v) + ": host vertex " + std::to_string(u) +
                              " out of range");
                in_range = false;
                continue;
            }
            if (owner[u] != -1)
                bad.push_back("disjointness: host vertex " + std::to_string(u) + " in branch sets " +
                              std::to_string(owner[u]) + " and " + std::to_string(v));
            owner[u] = v;
        }
        if (!set.empty() && in_range && !is_connected_subset(G, set))
            bad.push_back("branch set " + std::to_string(v) + " is not connected");
    }
    for (auto [x, y] : H.edge_list()) {
        if (!m.branch_sets.count(x) || !m.branch_sets.count(y)) continue;
        bool joined = false;
        for (int u : m.branch_sets.at(x)) {
            if (u < 0 || u >= G.num_vertices()) continue;
            for (int w : G.neighbors(u))
                if (m.branch_sets.at(y).count(w)) {
                    joined = true;
                    break;
                }
            if (joined) break;
        }
        if (!joined)
            bad.push_back("pattern edge (" + std::to_string(x) + "," + std::to_string(y) +
                          ") has no crossing host edge");
    }
    if (m.roots) {
        for (const auto& [v, set] : m.branch_sets) {
            bool hit = false;
            for (int u : set)
                if (m.roots->count(u)) {
                    hit = true;
                    break;
                }
            if (!hit) bad.push_back("branch set " + std::to_string(v) + " misses the root set");
        }
    }
    return bad;
}

namespace {

using u64 = std::uint64_t;

struct Searcher {
    const Graph& host;
    const Graph& pattern;
    int H, P;
    std::vector<u64> hadj;          // host neighbor masks
    std::vector<u64> earlier_nbrs;  // pattern vertex -> mask of earlier pattern neighbors
    std::vector<char> has_later;    // pattern vertex has a neighbor assigned later
    // For each level p: connected components of the unassigned pattern part,
    // as (#vertices, mask of assigned pattern vertices adjacent to the component).
    std::vector<std::vector<std::pair<int, u64>>> rest_comps;
    u64 rootmask = 0;
    bool rooted = false;
    u64 allmask;
    std::int64_t nodes = 0, limit;
    bool exceeded = false;
    std::vector<u64> sets, setnb;
    bool done = false;

    Searcher(const Graph& h, const Graph& p, std::int64_t lim)
        : host(h), pattern(p), H(h.num_vertices()), P(p.num_vertices()), limit(lim) {
        hadj.assign(H, 0);
        for (auto [a, b] : host.edge_list()) {
            hadj[a] |= u64(1) << b;
            hadj[b] |= u64(1) << a;
        }
        allmask = H == 64 ? ~u64(0) : (u64(1) << H) - 1;
        earlier_nbrs.assign(P, 0);
        has_later.assign(P, 0);
        for (auto [a, b] : pattern.edge_list()) {
            earlier_nbrs[b] |= u64(1) << a;
            has_later[a] = 1;
        }
        rest_comps.assign(P + 1, {});
        for (int p = 0; p <= P; ++p) {
            std::vector<char> seen(P, 0);
            for (int s = p; s < P; ++s) {
                if (seen[s]) continue;
                std::vector<int> stack{s};
                seen[s] = 1;
                int size = 0;
                u64 anchors = 0;
                while (!stack.empty()) {
                    int v = stack.back();
                    stack.pop_back();
                    ++size;
                    for (int w : pattern.neighbors(v)) {
                        if (w < p)
                            anchors |= u64(1) << w;
                        else if (!seen[w]) {
                            seen[w] = 1;
                            stack.push_back(w);
                        }
                    }
                }
                rest_comps[p].push_back({size, anchors});
            }
        }
        sets.assign(P, 0);
        setnb.assign(P, 0);
    }

    u64 nbrs_of(u64 s) const {
        u64 out = 0;
        for (u64 m = s; m; m &= m - 1) out |= hadj[std::countr_zero(m)];
        return out & ~s;
    }

    bool feasible(int p, u64 used) const {
        u64 freem = allmask & ~used;
        // Every connected component of the unassigned pattern part must fit in a
        // single free host component touching all its assigned anchors (and
        // enough roots in rooted mode).
        if (rest_comps[p + 1].empty()) return true;
        std::vector<u64> fcomps;
        u64 rem = freem;
        while (rem) {
            u64 seed = rem & (~rem + 1);
            u64 comp = seed;
            for (;;) {
                u64 grown = (comp | nbrs_of(comp)) & freem;
                if (grown == comp) break;
                comp = grown;
            }
            fcomps.push_back(comp);
            rem &= ~comp;
        }
        for (auto [size, anchors] : rest_comps[p + 1]) {
            bool ok = false;
            for (u64 f : fcomps) {
                if (std::popcount(f) < size) continue;
                if (rooted && std::popcount(f & rootmask) < size) continue;
                bool touches = true;
                for (u64 m = anchors; m; m &= m - 1)
                    if (!(setnb[std::countr_zero(m)] & f)) {
                        touches = false;
                        break;
                    }
                if (touches) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    bool assign(int p, u64 used) {
        if (exceeded) return false;
        if (p == P) {
            done = true;
            return true;
        }
        u64 freem = allmask & ~used;
        int maxsz = std::popcount(freem) - (P - 1 - p);
        if (maxsz <= 0) return false;
        for (u64 rm = freem; rm; rm &= rm - 1) {
            int r = std::countr_zero(rm);
            u64 allowed = freem & ~((u64(1) << r) - 1);
            if (rooted && !(allowed & rootmask)) continue;
            if (extend(p, used, u64(1) << r, hadj[r] & ~(u64(1) << r), 0, allowed, maxsz)) return true;
            if (exceeded) return false;
        }
        return false;
    }

    // S: current candidate branch set; NS: its neighborhood; X: forbidden.
    bool extend(int p, u64 used, u64 S, u64 NS, u64 X, u64 allowed, int maxsz) {
        if (++nodes > limit) {
            exceeded = true;
            return false;
        }
        bool report = true;
        if (rooted && !(S & rootmask)) report = false;
        if (report)
            for (u64 m = earlier_nbrs[p]; m; m &= m - 1)
                if (!(setnb[std::countr_zero(m)] & S)) {
                    report = false;
                    break;
                }
        if (report && has_later[p] && !(NS & allmask & ~S & ~used)) report = false;
        if (report) {
            sets[p] = S;
            setnb[p] = NS & ~S;
            if (feasible(p, used | S) && assign(p + 1, used | S)) return true;
            if (exceeded) return false;
        }
        if (std::popcount(S) >= maxsz) return false;
        u64 cand = NS & allowed & ~S & ~X;
        while (cand) {
            u64 vb = cand & (~cand + 1);
            int v = std::countr_zero(vb);
            if (extend(p, used, S | vb, (NS | hadj[v]) & ~(S | vb), X, allowed, maxsz)) return true;
            if (exceeded) return false;
            X |= vb;
            cand &= cand - 1;
        }
        return false;
    }
};

}  // namespace

SearchResult find_minor(const Graph& host, const Graph& pattern, const std::optional<VertexSet>& roots,
                        const SearchBudget& budget) {
    if (host.num_vertices() > 64)
        throw DomainError("find_minor: host exceeds 64 vertices (search substrate limit)");
    if (pattern.num_vertices() > budget.max_pattern_vertices || host.num_vertices() > budget.max_host_vertices)
        return {SearchStatus::budget_exceeded, std::nullopt, 0};
    if (pattern.num_vertices() > host.num_vertices()) return {SearchStatus::none, std::nullopt, 0};
    if (pattern.num_vertices() == 0) {
        MinorModel m{pattern, host, {}, roots};
        return {SearchStatus::found, m, 0};
    }
    Searcher s(host, pattern, budget.node_limit);
    if (roots) {
        s.rooted = true;
        for (int v : *roots) {
            if (v < 0 || v >= host.num_vertices()) throw DomainError("find_minor: root out of range");
            s.rootmask |= u64(1) << v;
        }
        if (s.rootmask == 0) return {SearchStatus::none, std::nullopt, 0};
    }
    bool ok = s.assign(0, 0);
    if (s.exceeded) return {SearchStatus::budget_exceeded, std::nullopt, s.nodes};
    if (!ok) return {SearchStatus::none, std::nullopt, s.nodes};
    MinorModel m;
    m.pattern = pattern;
    m.host = host;
    m.roots = roots;
    for (int p = 0; p < s.P; ++p) {
        VertexSet set;
        for (u64 bm = s.sets[p]; bm; bm &= bm - 1) set.insert(std::countr_zero(bm));
        m.branch_sets[p] = std::move(set);
    }
    auto bad = validate_model(m);
    if (!bad.empty()) throw DomainError("find_minor: internal error, invalid model: " + bad.front());
    return {SearchStatus::found, std::move(m), s.nodes};
}

int bg_annotated(const Graph& g, const VertexSet& x, const SearchBudget& budget) {
    if (g.num_vertices() > budget.max_host_vertices)
        throw BudgetError("bg_annotated: host exceeds budget");
    if (x.empty()) return 0;
    int best = 0;
    for (int k = 1;; ++k) {
        if (k * k > g.num_vertices()) return best;
        auto res = find_minor(g, grid_graph(k, k), x, budget);
        if (res.status == SearchStatus::budget_exceeded) throw BudgetError("bg_annotated: search budget exhausted");
        if (res.status == SearchStatus::none) return best;
        best = k;
    }
}

int hadwiger(const Graph& g, const SearchBudget& budget) {
    if (g.num_vertices() > budget.max_host_vertices) throw BudgetError("hadwiger: host exceeds budget");
    int best = 0;
    for (int t = 1;; ++t) {
        if (t > g.num_vertices()) return best;
        auto res = find_minor(g, complete_graph(t), std::nullopt, budget);
        if (res.status == SearchStatus::budget_exceeded) throw BudgetError("hadwiger: search budget exhausted");
        if (res.status == SearchStatus::none) return best;
        best = t;
    }
}

namespace {

// Small subgraph-isomorphism: does `big` contain `small_g` as a subgraph?
bool has_subgraph(const Graph& big, const Graph& small_g) {
    int P = small_g.num_vertices(), N = big.num_vertices();
    if (P > N) return false;
    std::vector<int> map(P, -1);
    std::vector<char> used(N, 0);
    std::function<bool(int)> rec = [&](int p) -> bool {
        if (p == P) return true;
        for (int v = 0; v < N; ++v) {
            if (used[v] || big.degree(v) < small_g.degree(p)) continue;
            bool ok = true;
            for (int q : small_g.neighbors(p))
                if (q < p && !big.has_edge(v, map[q])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            map[p] = v;
            used[v] = 1;
            if (rec(p + 1)) return true;
            used[v] = 0;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

int bg_by_partitions(const Graph& g, const VertexSet& x) {
    if (g.num_vertices() > 10) throw BudgetError("bg_by_partitions: n <= 10 only");
    if (x.empty()) return 0;
    // Vertices of components meeting X.
    std::vector<int> pool;
    for (const auto& comp : connected_components(g)) {
        bool meets = false;
        for (int v : comp) meets = meets || x.count(v);
        if (meets) pool.insert(pool.end(), comp.begin(), comp.end());
    }
    std::sort(pool.begin(), pool.end());
    int best = pool.empty() ? 0 : 1;
    std::vector<std::vector<int>> parts;
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == pool.size()) {
            Partition p;
            for (const auto& part : parts) {
                VertexSet s(part.begin(), part.end());
                bool hits = false;
                for (int v : s) hits = hits || x.count(v);
                if (!hits || !is_connected_subset(g, s)) return;
                p.push_back(std::move(s));
            }
            Graph realized = contract_partition(g, p);
            for (int k = best + 1; k * k <= realized.num_vertices(); ++k)
                if (has_subgraph(realized, grid_graph(k, k)))
                    best = k;
                else
                    break;
            return;
        }
        for (size_t i = 0; i < parts.size(); ++i) {
            parts[i].push_back(pool[idx]);
            rec(idx + 1);
            parts[i].pop_back();
        }
        parts.push_back({pool[idx]});
        rec(idx + 1);
        parts.pop_back();
    };
    if (!pool.empty()) rec(0);
    return best;
}

nlohmann::json model_to_json(const MinorModel& m) {
    nlohmann::json j;
    auto graph_json = [](const Graph& g) {
        nlohmann::json out;
        out["n"] = g.num_vertices();
        auto edges = nlohmann::json::array();
        for (auto [u, v] : g.edge_list()) edges.push_back({u, v});
        out["edges"] = std::move(edges);
        return out;
    };
    j["pattern"] = graph_json(m.pattern);
    j["host"] = graph_json(m.host);
    auto bs = nlohmann::json::object();
    for (const auto& [v, set] : m.branch_sets) bs[std::to_string(v)] = std::vector<int>(set.begin(), set.end());
    j["branch_sets"] = std::move(bs);
    if (m.roots)
        j["roots"] = std::vector<int>(m.roots->begin(), m.roots->end());
    else
        j["roots"] = nullptr;
    return j;
}

MinorModel model_from_json(const nlohmann::json& j) {
    auto graph_from = [](const nlohmann::json& gj) {
        Graph g(gj.at("n").get<int>());
        for (const auto& e : gj.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        return g;
    };
    MinorModel m;
    m.pattern = graph_from(j.at("pattern"));
    m.host = graph_from(j.at("host"));
    for (const auto& [key, val] : j.at("branch_sets").items()) {
        VertexSet set;
        for (const auto& v : val) set.insert(v.get<int>());
        m.branch_sets[std::stoi(key)] = std::move(set);
    }
    if (!j.at("roots").is_null()) {
        VertexSet roots;
        for (const auto& v : j.at("roots")) roots.insert(v.get<int>());
        m.roots = std::move(roots);
    }
    return m;
}

}  // namespace minorkit
