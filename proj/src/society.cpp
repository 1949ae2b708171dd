#include "minorkit/society.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "minorkit/connectivity.hpp"
#include "minorkit/io.hpp"

namespace minorkit {
namespace {

int omega_index(const std::vector<int>& omega, int v) {
    for (int i = 0; i < static_cast<int>(omega.size()); ++i)
        if (omega[i] == v) return i;
    return -1;
}

void check_omega(const Graph& g, const std::vector<int>& omega) {
    std::set<int> seen;
    for (int v : omega) {
        if (v < 0 || v >= g.num_vertices())
            throw DomainError("society: omega vertex " + std::to_string(v) + " out of range");
        if (!seen.insert(v).second)
            throw DomainError("society: omega vertex " + std::to_string(v) + " repeated");
    }
}

}  // namespace

void validate_society(const Society& soc) { check_omega(soc.graph, soc.omega); }

nlohmann::json society_to_json(const Society& soc) {
    nlohmann::json j;
    j["graph"] = graph_to_json(soc.graph);
    j["omega"] = soc.omega;
    return j;
}

Society society_from_json(const nlohmann::json& j) {
    Society soc;
    soc.graph = graph_from_json(j.at("graph"));
    soc.omega = j.at("omega").get<std::vector<int>>();
    validate_society(soc);
    return soc;
}

// ---------------------------------------------------------------------------
// Segments.

bool is_segment(const VertexSet& s, const std::vector<int>& omega) {
    const int n = static_cast<int>(omega.size());
    for (int v : s)
        if (omega_index(omega, v) < 0) return false;
    // S is a segment iff walking the cyclic order crosses the boundary of S at
    // most twice (one cyclic block of members).
    int switches = 0;
    for (int i = 0; i < n; ++i) {
        bool a = s.count(omega[i]) > 0;
        bool b = s.count(omega[(i + 1) % n]) > 0;
        if (a != b) ++switches;
    }
    return switches <= 2;
}

std::vector<VertexSet> all_segments(const std::vector<int>& omega) {
    const int n = static_cast<int>(omega.size());
    std::vector<VertexSet> out;
    out.push_back({});
    std::set<VertexSet> seen;
    for (int start = 0; start < n; ++start)
        for (int len = 1; len < n; ++len) {
            VertexSet s;
            for (int t = 0; t < len; ++t) s.insert(omega[(start + t) % n]);
            if (seen.insert(s).second) out.push_back(s);
        }
    if (n > 0) out.push_back(VertexSet(omega.begin(), omega.end()));
    return out;
}

VertexSet segment_between(int s, int t, const std::vector<int>& omega) {
    const int n = static_cast<int>(omega.size());
    int is = omega_index(omega, s), it = omega_index(omega, t);
    if (is < 0 || it < 0) throw DomainError("segment_between: endpoint not on omega");
    if ((it + 1) % n == is) return VertexSet(omega.begin(), omega.end());
    VertexSet out;
    for (int i = is; ; i = (i + 1) % n) {
        out.insert(omega[i]);
        if (i == it) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transaction depth.

namespace {

// Best split of omega into two complementary cyclic arcs by Menger value.
// Any transaction between disjoint segments survives growing the segments to
// a complementary arc pair, so scanning splits realizes the maximum.
struct BestSplit {
    int depth = 0;
    VertexSet a, b;
};

BestSplit best_split(const Society& soc, int max_omega) {
    const int n = static_cast<int>(soc.omega.size());
    if (n > max_omega)
        throw BudgetError("transaction depth: omega larger than enumeration budget");
    BestSplit best;
    if (n < 2) return best;
    for (int i = 0; i < n; ++i)
        for (int len = 1; len < n; ++len) {
            // Arc omega[i .. i+len-1] versus its complement; each unordered
            // split is visited twice, which is harmless.
            VertexSet a, b;
            for (int t = 0; t < n; ++t)
                (t < len ? a : b).insert(soc.omega[(i + t) % n]);
            int f = max_disjoint_paths(soc.graph, a, b);
            if (f > best.depth) best = {f, a, b};
        }
    return best;
}

}  // namespace

int transaction_depth(const Society& soc, int max_omega) {
    validate_society(soc);
    return best_split(soc, max_omega).depth;
}

// ---------------------------------------------------------------------------
// Transaction classification.

namespace {

// The cyclic endpoint word: position on omega -> path id, for the 2k
// endpoints, read in omega order.
std::vector<int> endpoint_word(const std::vector<std::vector<int>>& paths,
                               const std::vector<int>& omega) {
    std::map<int, int> owner;  // endpoint vertex -> path id
    std::set<int> used;
    for (int id = 0; id < static_cast<int>(paths.size()); ++id) {
        const auto& p = paths[id];
        if (p.size() < 2)
            throw DomainError("classify_transaction: path needs two distinct endpoints");
        for (int v : p)
            if (!used.insert(v).second)
                throw DomainError("classify_transaction: paths share vertex " + std::to_string(v));
        for (int v : {p.front(), p.back()}) {
            if (omega_index(omega, v) < 0)
                throw DomainError("classify_transaction: endpoint " + std::to_string(v) +
                                  " not on omega");
            owner[v] = id;
        }
    }
    std::vector<int> word;
    for (int v : omega) {
        auto it = owner.find(v);
        if (it != owner.end()) word.push_back(it->second);
    }
    return word;
}

// Does some rotation/reflection of `word` realize the target id pattern?
// `pattern(j)` gives, for positions j of the canonical word, the canonical id;
// ids are matched by first occurrence.
bool matches_pattern(const std::vector<int>& word, const std::vector<int>& pattern) {
    const int len = static_cast<int>(word.size());
    for (int dir : {1, -1})
        for (int rot = 0; rot < len; ++rot) {
            std::map<int, int> relabel;
            bool ok = true;
            for (int j = 0; j < len && ok; ++j) {
                int raw = word[((rot + dir * j) % len + len) % len];
                auto it = relabel.find(raw);
                if (it == relabel.end()) {
                    if (static_cast<int>(relabel.size()) != pattern[j]) { ok = false; break; }
                    relabel[raw] = pattern[j];
                } else if (it->second != pattern[j]) {
                    ok = false;
                }
            }
            if (ok) return true;
        }
    return false;
}

std::vector<int> crosscap_pattern(int n) {
    std::vector<int> p;
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < n; ++i) p.push_back(i);
    return p;
}

std::vector<int> handle_pattern(int n) {
    // u_1..u_2n, v_n..v_1, v_2n..v_{n+1}, zero-based ids.
    std::vector<int> p;
    for (int i = 0; i < 2 * n; ++i) p.push_back(i);
    for (int i = n - 1; i >= 0; --i) p.push_back(i);
    for (int i = 2 * n - 1; i >= n; --i) p.push_back(i);
    return p;
}

bool chords_cross(int a1, int b1, int a2, int b2) {
    // Positions on a circle of the two endpoints of each chord.
    if (a1 > b1) std::swap(a1, b1);
    return (a1 < a2 && a2 < b1) != (a1 < b2 && b2 < b1);
}

}  // namespace

TransactionClass classify_transaction(const std::vector<std::vector<int>>& paths,
                                      const std::vector<int>& omega) {
    if (paths.empty()) throw DomainError("classify_transaction: empty transaction");
    std::vector<int> word = endpoint_word(paths, omega);
    const int k = static_cast<int>(paths.size());
    if (static_cast<int>(word.size()) != 2 * k)
        throw DomainError("classify_transaction: endpoint count mismatch");
    if (k == 1) return {TransactionShape::cross, 1};
    // Two interleaved paths form the thickness-1 handle configuration, which
    // is simultaneously a thickness-2 crosscap: report it as a cross.
    if (k == 2 && matches_pattern(word, handle_pattern(1)))
        return {TransactionShape::cross, 1};
    if (matches_pattern(word, crosscap_pattern(k)))
        return {TransactionShape::crosscap, k};
    if (k % 2 == 0 && matches_pattern(word, handle_pattern(k / 2)))
        return {TransactionShape::handle, k / 2};
    // Planar: no two endpoint chords interleave.
    std::vector<std::pair<int, int>> pos(k, {-1, -1});
    for (int j = 0; j < 2 * k; ++j)
        (pos[word[j]].first < 0 ? pos[word[j]].first : pos[word[j]].second) = j;
    bool crossing = false;
    for (int i = 0; i < k && !crossing; ++i)
        for (int j = i + 1; j < k && !crossing; ++j)
            crossing = chords_cross(pos[i].first, pos[i].second, pos[j].first, pos[j].second);
    if (!crossing) return {TransactionShape::planar, 0};
    return {TransactionShape::none, 0};
}

// ---------------------------------------------------------------------------
// Cross search.

namespace {

struct CrossSearch {
    const Graph& g;
    const std::set<int> omega_set;
    long long budget;
    std::vector<char> used;
    std::vector<int> p1;

    CrossSearch(const Graph& g_, const std::vector<int>& omega, long long b)
        : g(g_), omega_set(omega.begin(), omega.end()), budget(b),
          used(g_.num_vertices(), 0) {}

    // Is there an s2..t2 path avoiding used vertices and (omega minus its own
    // endpoints)?  Plain BFS.
    std::optional<std::vector<int>> second_path(int s2, int t2) {
        std::vector<int> prev(g.num_vertices(), -2);
        std::vector<int> queue{s2};
        prev[s2] = -1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int w : g.neighbors(v)) {
                if (prev[w] != -2 || used[w]) continue;
                if (w != t2 && omega_set.count(w) && w != s2) continue;
                prev[w] = v;
                if (w == t2) {
                    std::vector<int> path;
                    for (int x = t2; x != -1; x = prev[x]) path.push_back(x);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue.push_back(w);
            }
        }
        return std::nullopt;
    }

    // Extend p1 towards t1, interior off omega, then try the second path.
    std::optional<CrossPair> extend(int t1, int s2, int t2) {
        if (--budget < 0) throw BudgetError("cross search: node budget exhausted");
        int v = p1.back();
        for (int w : g.neighbors(v)) {
            if (used[w]) continue;
            if (w == t1) {
                p1.push_back(w);
                used[w] = 1;
                if (auto p2 = second_path(s2, t2)) return CrossPair{p1, *p2};
                used[w] = 0;
                p1.pop_back();
                continue;
            }
            if (omega_set.count(w)) continue;
            p1.push_back(w);
            used[w] = 1;
            if (auto res = extend(t1, s2, t2)) return res;
            used[w] = 0;
            p1.pop_back();
        }
        return std::nullopt;
    }
};

}  // namespace

std::optional<CrossPair> find_cross(const Society& soc, long long node_budget) {
    validate_society(soc);
    const int n = static_cast<int>(soc.omega.size());
    if (n < 4) return std::nullopt;
    CrossSearch search(soc.graph, soc.omega, node_budget);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    // P1 joins positions a,c; P2 joins b,d - the interleaved pattern.
                    int s1 = soc.omega[a], t1 = soc.omega[c];
                    int s2 = soc.omega[b], t2 = soc.omega[d];
                    search.p1 = {s1};
                    std::fill(search.used.begin(), search.used.end(), 0);
                    search.used[s1] = 1;
                    if (auto res = search.extend(t1, s2, t2)) return res;
                }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Linear decompositions.

int LinearDecomposition::adhesion() const {
    int best = 0;
    for (std::size_t i = 0; i + 1 < bags.size(); ++i) {
        VertexSet inter;
        std::set_intersection(bags[i].begin(), bags[i].end(), bags[i + 1].begin(),
                              bags[i + 1].end(), std::inserter(inter, inter.begin()));
        best = std::max(best, static_cast<int>(inter.size()));
    }
    return best;
}

int LinearDecomposition::width() const {
    int best = 0;
    for (const auto& b : bags) best = std::max(best, static_cast<int>(b.size()));
    return best;
}

void validate_linear_decomposition(const Society& soc, const LinearDecomposition& ld) {
    validate_society(soc);
    const int n = static_cast<int>(ld.bags.size());
    if (static_cast<int>(ld.anchors.size()) != n)
        throw DomainError("linear decomposition: bag/anchor count mismatch");
    // Anchors occur in that order on omega: they must be a subsequence of some
    // rotation of omega or its reversal.
    {
        const int m = static_cast<int>(soc.omega.size());
        bool ordered = false;
        for (int dir : {1, -1})
            for (int rot = 0; rot < m && !ordered; ++rot) {
                int at = 0;
                for (int j = 0; j < m && at < n; ++j) {
                    int v = soc.omega[((rot + dir * j) % m + m) % m];
                    if (v == ld.anchors[at]) ++at;
                }
                ordered = (at == n);
            }
        if (!ordered && n > 0)
            throw DomainError("linear decomposition: anchors not in omega order");
    }
    std::vector<std::pair<int, int>> interval(soc.graph.num_vertices(), {n, -1});
    for (int i = 0; i < n; ++i) {
        if (!ld.bags[i].count(ld.anchors[i]))
            throw DomainError("linear decomposition: anchor missing from its bag");
        for (int v : ld.bags[i]) {
            if (v < 0 || v >= soc.graph.num_vertices())
                throw DomainError("linear decomposition: bag vertex out of range");
            interval[v].first = std::min(interval[v].first, i);
            interval[v].second = std::max(interval[v].second, i);
        }
    }
    for (int v = 0; v < soc.graph.num_vertices(); ++v) {
        if (interval[v].second < 0)
            throw DomainError("linear decomposition: vertex " + std::to_string(v) +
                              " uncovered");
        for (int i = interval[v].first; i <= interval[v].second; ++i)
            if (!ld.bags[i].count(v))
                throw DomainError("linear decomposition: bag set of vertex " +
                                  std::to_string(v) + " is not an interval");
    }
    for (auto [u, w] : soc.graph.edge_list()) {
        bool covered = false;
        for (int i = 0; i < n && !covered; ++i)
            covered = ld.bags[i].count(u) && ld.bags[i].count(w);
        if (!covered)
            throw DomainError("linear decomposition: edge (" + std::to_string(u) + "," +
                              std::to_string(w) + ") uncovered");
    }
}

LinearDecompositionResult linear_decomposition(const Society& soc, int theta) {
    validate_society(soc);
    if (theta < 0) throw DomainError("linear decomposition: negative depth bound");
    if (soc.omega.empty()) throw DomainError("linear decomposition: empty omega");

    BestSplit split = best_split(soc, 32);
    if (split.depth > theta) {
        auto paths = disjoint_paths(soc.graph, split.a, split.b);
        paths.resize(theta + 1);
        return {std::nullopt, paths};
    }

    const int n = static_cast<int>(soc.omega.size());
    const int nv = soc.graph.num_vertices();
    // One separation per gap between consecutive anchors: prefix arc versus
    // the rest, with the source-minimal left side.
    std::vector<VertexSet> left(n + 1), right(n + 1);
    for (int v = 0; v < nv; ++v) {
        left[n].insert(v);
        right[0].insert(v);
    }
    for (int i = 1; i < n; ++i) {
        VertexSet a(soc.omega.begin(), soc.omega.begin() + i);
        VertexSet b(soc.omega.begin() + i, soc.omega.end());
        Separation sep = min_order_separation(soc.graph, a, b);
        left[i] = sep.a;
        right[i] = sep.b;
    }
    // Raw membership: vertex v sits in bag i when it is on the left of cut i
    // and the right of cut i-1; interval-fill afterwards.
    std::vector<std::pair<int, int>> interval(nv, {n, -1});
    for (int v = 0; v < nv; ++v)
        for (int i = 1; i <= n; ++i)
            if (left[i].count(v) && right[i - 1].count(v)) {
                interval[v].first = std::min(interval[v].first, i - 1);
                interval[v].second = std::max(interval[v].second, i - 1);
            }
    // Cover any edge whose endpoint intervals ended up disjoint.
    for (bool changed = true; changed;) {
        changed = false;
        for (auto [u, w] : soc.graph.edge_list()) {
            if (interval[u].first > interval[w].first) std::swap(u, w);
            if (interval[u].second < interval[w].first) {
                interval[u].second = interval[w].first;
                changed = true;
            }
        }
    }
    LinearDecomposition ld;
    ld.anchors = soc.omega;
    ld.bags.assign(n, {});
    for (int v = 0; v < nv; ++v)
        for (int i = interval[v].first; i <= interval[v].second; ++i) ld.bags[i].insert(v);
    validate_linear_decomposition(soc, ld);
    if (ld.adhesion() > 2 * theta)
        throw DomainError("linear decomposition: sweep adhesion " +
                          std::to_string(ld.adhesion()) + " exceeds bound " +
                          std::to_string(2 * theta));
    return {ld, {}};
}

}  // namespace minorkit
