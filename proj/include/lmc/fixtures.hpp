#pragma once

// Deterministic constructors for the named complexes: spheres, the six-vertex projective plane,
// the pinched and folded spheres, P^2 with a disc on a projective line, the seven-vertex torus,
// and Moore surfaces.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "complex.hpp"

namespace lmc {

namespace detail {

inline std::vector<Face> tetra_faces() { return {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}; }

/// Replaces face f by the three faces coning its edges to the new vertex.
inline void subdivide(std::vector<Face>& faces, const Face& f, Vertex apex)
{
    auto it = std::find(faces.begin(), faces.end(), f);
    if (it == faces.end())
        throw ComplexError("cannot subdivide missing face " + to_string(f));
    faces.erase(it);
    faces.push_back(Face::of(f.a, f.b, apex));
    faces.push_back(Face::of(f.a, f.c, apex));
    faces.push_back(Face::of(f.b, f.c, apex));
    std::sort(faces.begin(), faces.end());
}

inline void random_subdivisions(std::vector<Face>& faces, int steps, std::uint64_t seed, Vertex next)
{
    std::mt19937_64 rng(seed);
    for (int i = 0; i < steps; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
        Face f = faces[pick(rng)];
        subdivide(faces, f, next++);
    }
}

inline std::map<Vertex, std::set<Vertex>> neighbours(const std::vector<Face>& faces)
{
    std::map<Vertex, std::set<Vertex>> n;
    for (const Face& f : faces)
        for (const Edge& e : f.edges()) {
            n[e.a].insert(e.b);
            n[e.b].insert(e.a);
        }
    return n;
}

/// Renumbers vertices to 0..n-1 preserving order.
inline TwoComplex compact(const std::vector<Face>& faces)
{
    TwoComplex x = TwoComplex::build(faces);
    std::map<Vertex, Vertex> to;
    for (Vertex v : x.vertices())
        to.emplace(v, static_cast<Vertex>(to.size()));
    return relabel(x, [&](Vertex v) { return to.at(v); });
}

inline std::vector<Face> identify(const std::vector<Face>& faces, Vertex from, Vertex to)
{
    std::vector<Face> out;
    for (const Face& f : faces) {
        auto m = [&](Vertex v) { return v == from ? to : v; };
        out.push_back(Face::of(m(f.a), m(f.b), m(f.c)));
    }
    return out;
}

} // namespace detail

enum class FixtureTag { TetraSphere, StackedSphere, RP2Six, Z2Sphere, Z3Sphere, Z4, Torus7, Moore };

struct FixtureKind {
    FixtureTag tag = FixtureTag::TetraSphere;
    /// Subdivision steps (StackedSphere, Z2Sphere, Z3Sphere) or the Moore degree m.
    int param = 0;

    static FixtureKind tetra() { return {FixtureTag::TetraSphere, 0}; }
    static FixtureKind stacked(int k) { return {FixtureTag::StackedSphere, k}; }
    static FixtureKind rp2() { return {FixtureTag::RP2Six, 0}; }
    static FixtureKind z2(int k) { return {FixtureTag::Z2Sphere, k}; }
    static FixtureKind z3(int k) { return {FixtureTag::Z3Sphere, k}; }
    static FixtureKind z4() { return {FixtureTag::Z4, 0}; }
    static FixtureKind torus7() { return {FixtureTag::Torus7, 0}; }
    static FixtureKind moore(int m) { return {FixtureTag::Moore, m}; }

    std::string name() const
    {
        switch (tag) {
        case FixtureTag::TetraSphere: return "tetra";
        case FixtureTag::StackedSphere: return "stacked:" + std::to_string(param);
        case FixtureTag::RP2Six: return "rp2six";
        case FixtureTag::Z2Sphere: return "z2:" + std::to_string(param);
        case FixtureTag::Z3Sphere: return "z3:" + std::to_string(param);
        case FixtureTag::Z4: return "z4";
        case FixtureTag::Torus7: return "torus7";
        case FixtureTag::Moore: return "moore:" + std::to_string(param);
        }
        return "?";
    }

    /// Parses names such as "tetra", "stacked:3", "rp2six", "z2:4", "z3:2", "z4", "torus7", "moore:3".
    static FixtureKind parse(const std::string& s)
    {
        auto colon = s.find(':');
        std::string head = s.substr(0, colon);
        int param = 0;
        if (colon != std::string::npos) {
            try {
                std::size_t used = 0;
                param = std::stoi(s.substr(colon + 1), &used);
                if (used != s.size() - colon - 1)
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ComplexError("bad fixture parameter in '" + s + "'");
            }
        }
        static const std::map<std::string, FixtureTag> names{
            {"tetra", FixtureTag::TetraSphere}, {"stacked", FixtureTag::StackedSphere},
            {"rp2six", FixtureTag::RP2Six},     {"rp2", FixtureTag::RP2Six},
            {"z2", FixtureTag::Z2Sphere},       {"z3", FixtureTag::Z3Sphere},
            {"z4", FixtureTag::Z4},             {"torus7", FixtureTag::Torus7},
            {"moore", FixtureTag::Moore}};
        auto it = names.find(head);
        if (it == names.end())
            throw ComplexError("unknown fixture '" + s + "'");
        bool takes = it->second == FixtureTag::StackedSphere || it->second == FixtureTag::Z2Sphere ||
                     it->second == FixtureTag::Z3Sphere || it->second == FixtureTag::Moore;
        if (takes && colon == std::string::npos)
            param = it->second == FixtureTag::Moore ? 3 : 0;
        if (!takes && colon != std::string::npos)
            throw ComplexError("fixture '" + head + "' takes no parameter");
        return {it->second, param};
    }
};

/// The boundary of the 3-simplex.
inline TwoComplex tetra_sphere() { return TwoComplex::build(detail::tetra_faces()); }

/// Boundary of the tetrahedron after k seeded one-to-three face subdivisions: f = 4 + 2k.
inline TwoComplex stacked_sphere(int k, std::uint64_t seed = 0)
{
    if (k < 0)
        throw ComplexError("subdivision steps must be non-negative");
    auto faces = detail::tetra_faces();
    detail::random_subdivisions(faces, k, seed, 4);
    return TwoComplex::build(faces);
}

/// The six-vertex projective plane (antipodal quotient of the icosahedron): v=6, e=15, f=10.
inline TwoComplex rp2_six()
{
    return TwoComplex::build(std::vector<Face>{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                               {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

/// A sphere with two vertices at graph distance at least 3 identified.
/// Four fixed subdivisions come first (a stacked sphere with fewer than eight vertices has
/// no such pair), then k seeded random ones. Subdivision never shortens distances.
inline TwoComplex z2_sphere(int k, std::uint64_t seed = 0)
{
    if (k < 0)
        throw ComplexError("subdivision steps must be non-negative");
    auto faces = detail::tetra_faces();
    const Face prefix[] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {1, 3, 5}};
    Vertex next = 4;
    for (const Face& f : prefix)
        detail::subdivide(faces, f, next++);
    detail::random_subdivisions(faces, k, seed, next);
    auto nb = detail::neighbours(faces);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const auto& [u, nu] : nb)
        for (const auto& [w, nw] : nb) {
            if (u >= w || nu.count(w))
                continue;
            bool common = std::any_of(nu.begin(), nu.end(), [&](Vertex x) { return nw.count(x) > 0; });
            if (!common)
                pairs.emplace_back(u, w);
        }
    if (pairs.empty())
        throw ComplexError("z2 fixture: no vertex pair at distance >= 3");
    std::mt19937_64 rng(seed ^ 0x5a32ULL);
    auto [u, w] = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
    return detail::compact(detail::identify(faces, w, u));
}

/// A sphere with two adjacent edges (v,a), (v,b) folded together via a -> b.
/// Requires a, b non-adjacent with v as their only common neighbour; three fixed subdivisions
/// make such a triple exist, then k seeded random subdivisions follow (they preserve validity).
inline TwoComplex z3_sphere(int k, std::uint64_t seed = 0)
{
    if (k < 0)
        throw ComplexError("subdivision steps must be non-negative");
    auto faces = detail::tetra_faces();
    const Face prefix[] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}};
    Vertex next = 4;
    for (const Face& f : prefix)
        detail::subdivide(faces, f, next++);
    detail::random_subdivisions(faces, k, seed, next);
    auto nb = detail::neighbours(faces);
    struct Triple {
        Vertex v, a, b;
    };
    std::vector<Triple> triples;
    for (const auto& [v, nv] : nb)
        for (Vertex a : nv)
            for (Vertex b : nv) {
                if (a >= b || nb[a].count(b))
                    continue;
                std::vector<Vertex> common;
                std::set_intersection(nb[a].begin(), nb[a].end(), nb[b].begin(), nb[b].end(),
                                      std::back_inserter(common));
                if (common.size() == 1 && common[0] == v)
                    triples.push_back({v, a, b});
            }
    if (triples.empty())
        throw ComplexError("z3 fixture: no foldable edge pair");
    std::mt19937_64 rng(seed ^ 0x5a33ULL);
    Triple t = triples[std::uniform_int_distribution<std::size_t>(0, triples.size() - 1)(rng)];
    return detail::compact(detail::identify(faces, t.a, t.b));
}

/// The six-vertex projective plane with a cone (apex 6) over its smallest non-face triangle.
inline TwoComplex z4_complex()
{
    TwoComplex p = rp2_six();
    std::vector<Face> faces = p.faces();
    for (Vertex a = 0; a < 6; ++a)
        for (Vertex b = a + 1; b < 6; ++b)
            for (Vertex c = b + 1; c < 6; ++c)
                if (!p.has_face(Face{a, b, c})) {
                    faces.push_back(Face::of(a, b, 6));
                    faces.push_back(Face::of(a, c, 6));
                    faces.push_back(Face::of(b, c, 6));
                    return TwoComplex::build(faces);
                }
    throw ComplexError("unreachable");
}

/// The seven-vertex torus: faces {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline TwoComplex torus7()
{
    std::vector<Face> faces;
    for (Vertex i = 0; i < 7; ++i) {
        faces.push_back(Face::of(i, (i + 1) % 7, (i + 3) % 7));
        faces.push_back(Face::of(i, (i + 2) % 7, (i + 3) % 7));
    }
    return TwoComplex::build(faces);
}

/// Moore surface M(Z/m, 1): a disc whose 3m boundary edges wrap m times around the circle 0-1-2,
/// with two interior rings of 3m vertices and a centre vertex. The circle edges have degree m.
inline TwoComplex moore_surface(int m)
{
    if (m < 2)
        throw ComplexError("Moore surface needs m >= 2");
    const Vertex n = static_cast<Vertex>(3 * m);
    auto boundary = [](Vertex j) { return j % 3; };
    auto ring1 = [n](Vertex j) { return 3 + j % n; };
    auto ring2 = [n](Vertex j) { return 3 + n + j % n; };
    const Vertex centre = 3 + 2 * n;
    std::vector<Face> faces;
    for (Vertex j = 0; j < n; ++j) {
        faces.push_back(Face::of(boundary(j), boundary(j + 1), ring1(j)));
        faces.push_back(Face::of(boundary(j + 1), ring1(j), ring1(j + 1)));
        faces.push_back(Face::of(ring1(j), ring1(j + 1), ring2(j)));
        faces.push_back(Face::of(ring1(j + 1), ring2(j), ring2(j + 1)));
        faces.push_back(Face::of(ring2(j), ring2(j + 1), centre));
    }
    return TwoComplex::build(faces);
}

inline TwoComplex fixture(const FixtureKind& kind, std::uint64_t seed = 0)
{
    switch (kind.tag) {
    case FixtureTag::TetraSphere: return tetra_sphere();
    case FixtureTag::StackedSphere: return stacked_sphere(kind.param, seed);
    case FixtureTag::RP2Six: return rp2_six();
    case FixtureTag::Z2Sphere: return z2_sphere(kind.param, seed);
    case FixtureTag::Z3Sphere: return z3_sphere(kind.param, seed);
    case FixtureTag::Z4: return z4_complex();
    case FixtureTag::Torus7: return torus7();
    case FixtureTag::Moore: return moore_surface(kind.param);
    }
    throw ComplexError("unknown fixture");
}

} // namespace lmc
