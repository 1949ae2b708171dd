#include "minorkit/surfaces.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <sstream>

namespace minorkit {

std::string Surface::to_string() const {
    if (empty) return "empty";
    if (h == 0 && c == 0) return "sphere";
    if (h == 1 && c == 0) return "torus";
    if (h == 0 && c == 1) return "projective-plane";
    if (h == 0 && c == 2) return "klein-bottle";
    return "(" + std::to_string(h) + "," + std::to_string(c) + ")";
}

Surface normalize(int h, int c) {
    if (h == -1 && c == 2) return Surface::canonical(0, 0);
    if (h < 0 || c < 0) throw DomainError("normalize: negative surface parameters");
    if (c == 0) return Surface::canonical(h, 0);
    int g = 2 * h + c;
    if (g % 2 == 1) return Surface::canonical((g - 1) / 2, 1);
    return Surface::canonical(g / 2 - 1, 2);
}

Surface parse_surface(const std::string& name) {
    if (name == "empty") return Surface::make_empty();
    if (name == "sphere") return Surface::canonical(0, 0);
    if (name == "torus") return Surface::canonical(1, 0);
    if (name == "projective-plane") return Surface::canonical(0, 1);
    if (name == "klein-bottle") return Surface::canonical(0, 2);
    // "(h,c)"
    int h, c;
    char l, comma, r;
    std::istringstream in(name);
    if ((in >> l >> h >> comma >> c >> r) && l == '(' && comma == ',' && r == ')') return normalize(h, c);
    throw DomainError("unknown surface name: " + name);
}

bool contained_in(const Surface& a, const Surface& b) {
    if (a.empty) return true;
    if (b.empty) return false;
    if (a.orientable() && b.orientable()) return a.h <= b.h;
    if (a.orientable() && !b.orientable()) return b.euler_genus() >= 2 * a.h + 1;
    if (!a.orientable() && !b.orientable()) return a.euler_genus() <= b.euler_genus();
    return false;  // nonorientable never inside orientable
}

bool contained_in_bfs(const Surface& a, const Surface& b) {
    if (a.empty) return true;
    if (b.empty) return a.empty;
    std::set<Surface> seen;
    std::queue<Surface> q;
    q.push(a);
    seen.insert(a);
    while (!q.empty()) {
        Surface s = q.front();
        q.pop();
        if (s == b) return true;
        if (s.euler_genus() >= b.euler_genus()) continue;
        // add one handle / one crosscap
        for (Surface t : {normalize(s.h + 1, s.c), normalize(s.h, s.c + 1)})
            if (seen.insert(t).second) q.push(t);
    }
    return false;
}

std::vector<Surface> surfaces_up_to_genus(int g) {
    std::vector<Surface> out;
    out.push_back(Surface::make_empty());
    for (int genus = 0; genus <= g; ++genus) {
        if (genus % 2 == 0) out.push_back(Surface::canonical(genus / 2, 0));
        if (genus >= 1) out.push_back(normalize(0, genus));
    }
    std::sort(out.begin(), out.end());
    return out;
}

static void check_closed(const SurfaceSet& s) {
    for (const Surface& a : s)
        for (const Surface& below : surfaces_up_to_genus(a.euler_genus()))
            if (contained_in(below, a) && !s.count(below))
                throw DomainError("surface set not containment-closed: " + below.to_string() +
                                  " is contained in member " + a.to_string() + " but missing");
}

SurfaceSet sobs(const SurfaceSet& s) {
    check_closed(s);
    int maxg = -1;
    for (const Surface& a : s) maxg = std::max(maxg, a.euler_genus());
    SurfaceSet out;
    for (const Surface& cand : surfaces_up_to_genus(maxg + 2)) {
        if (s.count(cand)) continue;
        bool all_below_in = true;
        for (const Surface& below : surfaces_up_to_genus(cand.euler_genus()))
            if (!(below == cand) && contained_in(below, cand) && !s.count(below)) {
                all_below_in = false;
                break;
            }
        if (all_below_in) out.insert(cand);
    }
    return out;
}

Surface prevalent(const SurfaceSet& s) {
    SurfaceSet obs = sobs(s);
    int maxg = -1;
    for (const Surface& o : obs) maxg = std::max(maxg, o.euler_genus());
    std::vector<Surface> common;
    for (const Surface& cand : surfaces_up_to_genus(maxg)) {
        bool in_all = true;
        for (const Surface& o : obs)
            if (!contained_in(cand, o)) {
                in_all = false;
                break;
            }
        if (in_all) common.push_back(cand);
    }
    // unique maximal element
    std::vector<Surface> maximal;
    for (const Surface& cand : common) {
        bool dominated = false;
        for (const Surface& other : common)
            if (!(other == cand) && contained_in(cand, other)) {
                dominated = true;
                break;
            }
        if (!dominated) maximal.push_back(cand);
    }
    if (maximal.size() != 1)
        throw DomainError("prevalent: expected unique maximal common surface, found " +
                          std::to_string(maximal.size()));
    return maximal[0];
}

SurfaceSet genus_class(int g) {
    if (g < -1) throw DomainError("genus_class: g must be >= -1");
    SurfaceSet out;
    out.insert(Surface::make_empty());
    if (g == -1) return out;
    std::vector<Surface> tops;
    if (g % 2 == 0) {
        int h = g / 2;
        tops.push_back(Surface::canonical(h, 0));
        if (h >= 1)
            tops.push_back(Surface::canonical(h - 1, 2));
        else if (g == 0)
            tops.push_back(Surface::canonical(0, 0));  // (-1,2) convention
    } else {
        tops.push_back(Surface::canonical(g / 2, 1));
    }
    for (const Surface& top : tops)
        for (const Surface& below : surfaces_up_to_genus(top.euler_genus()))
            if (contained_in(below, top)) out.insert(below);
    return out;
}

void write_lattice_dot(std::ostream& out, int max_genus) {
    auto all = surfaces_up_to_genus(max_genus);
    out << "digraph surfaces {\n  rankdir=BT;\n";
    for (const Surface& s : all) out << "  \"" << s.to_string() << "\";\n";
    // Hasse edges: a strictly inside b with no surface strictly between.
    for (const Surface& a : all)
        for (const Surface& b : all) {
            if (a == b || !contained_in(a, b)) continue;
            bool covering = true;
            for (const Surface& mid : all)
                if (!(mid == a) && !(mid == b) && contained_in(a, mid) && contained_in(mid, b)) {
                    covering = false;
                    break;
                }
            if (covering) out << "  \"" << a.to_string() << "\" -> \"" << b.to_string() << "\";\n";
        }
    out << "}\n";
}

}  // namespace minorkit
