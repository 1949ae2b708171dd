#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minorkit/graph.hpp"

namespace minorkit {

// A two-dimensional surface in canonical form: the empty surface, or
// Sigma^(h,c) with c in {0,1,2} (orientable when c = 0).
struct Surface {
    bool empty = false;
    int h = 0;
    int c = 0;

    static Surface make_empty() { return Surface{true, 0, 0}; }
    static Surface canonical(int h, int c) { return Surface{false, h, c}; }

    int euler_genus() const { return empty ? -1 : 2 * h + c; }
    bool orientable() const { return !empty && c == 0; }

    // Deterministic order: by euler genus, then orientable before nonorientable.
    auto key() const { return std::tuple(euler_genus(), orientable() ? 0 : 1, empty ? 0 : 1); }
    bool operator<(const Surface& o) const { return key() < o.key(); }
    bool operator==(const Surface& o) const { return empty == o.empty && (empty || (h == o.h && c == o.c)); }

    std::string to_string() const;
};

using SurfaceSet = std::set<Surface>;

// Canonicalize a raw (handles, crosscaps) pair via Dyck's theorem.
// Accepts h = -1, c = 2 as the convention for the sphere.
Surface normalize(int h, int c);

// Parse "(h,c)" or an alias: empty, sphere, torus, projective-plane, klein-bottle.
Surface parse_surface(const std::string& name);

// Containment: b obtainable from a by adding handles/crosscaps (closed-form rule).
bool contained_in(const Surface& a, const Surface& b);
// Independent cross-check: BFS over single handle/crosscap additions.
bool contained_in_bfs(const Surface& a, const Surface& b);

// All canonical surfaces (including the empty surface) of Euler genus <= g.
std::vector<Surface> surfaces_up_to_genus(int g);

// Surface obstruction set of a finite, containment-closed set.
SurfaceSet sobs(const SurfaceSet& s);

// The prevalent surface of a closed set (unique, orientable).
Surface prevalent(const SurfaceSet& s);

// The closed set of all surfaces of Euler genus <= ... per the genus-class
// case analysis: g = -1 -> {empty}; g = 2h -> down-closure of {(h,0),(h-1,2)};
// g = 2h+1 -> down-closure of {(h,1)}.
SurfaceSet genus_class(int g);

// DOT Hasse diagram of the containment lattice up to max_genus.
void write_lattice_dot(std::ostream& out, int max_genus);

}  // namespace minorkit
