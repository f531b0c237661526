#pragma once

// Minimal cycles, recognition of the closed spaces that minimal cycles of density above one half
// can be (sphere, sphere with two points identified, sphere with two adjacent arcs identified,
// projective plane with a disc on a projective line), deletable faces and wedge decompositions.

#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "homology.hpp"
#include "invariants.hpp"

namespace lmc {

enum class SpaceTag { Sphere, ProjectivePlane, Torus, OtherClosedSurface, Z2, Z3, Z4, NotRecognized };

inline std::string to_string(SpaceTag t)
{
    switch (t) {
    case SpaceTag::Sphere: return "Sphere";
    case SpaceTag::ProjectivePlane: return "ProjectivePlane";
    case SpaceTag::Torus: return "Torus";
    case SpaceTag::OtherClosedSurface: return "OtherClosedSurface";
    case SpaceTag::Z2: return "Z2";
    case SpaceTag::Z3: return "Z3";
    case SpaceTag::Z4: return "Z4";
    case SpaceTag::NotRecognized: return "NotRecognized";
    }
    return "?";
}

struct SpaceType {
    SpaceTag tag = SpaceTag::NotRecognized;
    /// Meaningful for closed surfaces.
    bool orientable = false;
    long chi = 0;
    std::vector<std::string> evidence;
    std::optional<Vertex> singular_vertex;
    std::optional<Edge> fold_edge;
    std::vector<Edge> triangle;
    /// Z4 only: faces of the disc and of the projective plane.
    std::vector<Face> disc_faces;
    std::vector<Face> projective_faces;

    bool is(SpaceTag t) const { return tag == t; }
};

class ClassificationFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline SpaceType not_recognized(std::string why)
{
    SpaceType s;
    s.evidence.push_back(std::move(why));
    return s;
}

inline std::string list_edges(const std::vector<Edge>& es)
{
    std::string s;
    for (const Edge& e : es)
        s += (s.empty() ? "" : " ") + to_string(e);
    return s;
}

/// Consistent orientation by propagation across degree-2 edges. Assumes a strongly connected
/// complex whose edges all have degree 2.
inline bool orientable_surface(const TwoComplex& x)
{
    const auto& faces = x.faces();
    auto at_edge = faces_at_edges(x);
    // sign of edge k of a face in its canonical boundary: ab +1, ac -1, bc +1
    constexpr int sign[3] = {1, -1, 1};
    auto edge_sign = [&](std::size_t f, std::size_t e) {
        auto es = faces[f].edges();
        for (int k = 0; k < 3; ++k)
            if (x.edge_index(es[k]) == e)
                return sign[k];
        return 0;
    };
    std::vector<int> o(faces.size(), 0);
    std::vector<std::size_t> stack{0};
    o[0] = 1;
    while (!stack.empty()) {
        std::size_t f = stack.back();
        stack.pop_back();
        for (const Edge& ed : faces[f].edges()) {
            std::size_t e = x.edge_index(ed);
            for (std::size_t g : at_edge[e]) {
                if (g == f)
                    continue;
                int want = -o[f] * edge_sign(f, e) * edge_sign(g, e);
                if (o[g] == 0) {
                    o[g] = want;
                    stack.push_back(g);
                } else if (o[g] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool all_degrees(const std::vector<int>& deg, int d)
{
    return std::all_of(deg.begin(), deg.end(), [d](int x) { return x == d; });
}

/// Link is a connected graph with exactly `special` nodes of degree `high`, the rest degree 2.
inline bool link_shape(const LinkGraph& l, int high, std::size_t special)
{
    if (l.num_components() != 1)
        return false;
    std::size_t count = 0;
    for (int d : l.degrees()) {
        if (d == high)
            ++count;
        else if (d != 2)
            return false;
    }
    return count == special;
}

inline SpaceType recognize_impl(const TwoComplex& x);

inline SpaceType recognize_surface(const TwoComplex& x)
{
    SpaceType s;
    s.chi = x.euler();
    s.orientable = orientable_surface(x);
    s.evidence.push_back(std::string(s.orientable ? "orientable" : "non-orientable") + " closed surface");
    s.evidence.push_back("chi=" + std::to_string(s.chi));
    if (s.orientable && s.chi == 2)
        s.tag = SpaceTag::Sphere;
    else if (!s.orientable && s.chi == 1)
        s.tag = SpaceTag::ProjectivePlane;
    else if (s.orientable && s.chi == 0)
        s.tag = SpaceTag::Torus;
    else
        s.tag = SpaceTag::OtherClosedSurface;
    return s;
}

inline SpaceType recognize_pinched(const TwoComplex& x, const std::vector<LinkGraph>& links)
{
    std::optional<Vertex> pinch;
    for (const LinkGraph& l : links) {
        if (l.is_cycle())
            continue;
        std::size_t comps = 0;
        l.component_ids(&comps);
        auto d = l.degrees();
        if (pinch || comps != 2 || !all_degrees(d, 2))
            return not_recognized("degree-2 complex with links that are neither cycles nor one pinch");
        pinch = l.apex;
    }
    auto cut = cut_open(x);
    SpaceType inner = recognize_impl(cut.complex);
    if (!inner.is(SpaceTag::Sphere))
        return not_recognized("cut open at vertex " + std::to_string(*pinch) + " gives " + to_string(inner.tag));
    SpaceType s;
    s.tag = SpaceTag::Z2;
    s.chi = x.euler();
    s.singular_vertex = pinch;
    s.evidence.push_back("singular vertex " + std::to_string(*pinch) + " with two link cycles");
    s.evidence.push_back("cut open: Sphere");
    return s;
}

inline SpaceType recognize_folded(const TwoComplex& x, const std::vector<int>& deg)
{
    std::size_t ei = std::find(deg.begin(), deg.end(), 4) - deg.begin();
    Edge e = x.edges()[ei];
    for (Vertex v : x.vertices()) {
        LinkGraph l = link(x, v);
        bool ok = e.contains(v) ? link_shape(l, 4, 1) : l.is_cycle();
        if (!ok)
            return not_recognized("vertex " + std::to_string(v) + " link does not match a fold");
    }
    // Split endpoint u into two vertices, one per loop of its figure-eight link.
    const Vertex u = e.a, w = e.b;
    LinkGraph l = link(x, u);
    detail::UnionFind uf(l.arcs.size());
    for (std::size_t i = 0; i < l.arcs.size(); ++i)
        for (std::size_t j = i + 1; j < l.arcs.size(); ++j)
            for (Vertex n : {l.arcs[i].a, l.arcs[i].b})
                if (n != w && l.arcs[j].contains(n))
                    uf.unite(i, j);
    std::size_t root0 = uf.find(0);
    Vertex fresh = x.vertices().back() + 1;
    std::vector<Face> faces;
    std::size_t k = 0, in_second = 0;
    for (const Face& f : x.faces()) {
        if (!f.contains(u)) {
            faces.push_back(f);
            continue;
        }
        const Edge arc = f.opposite(u);
        std::size_t idx = std::find(l.arcs.begin(), l.arcs.end(), arc) - l.arcs.begin();
        ++k;
        if (uf.find(idx) == root0) {
            faces.push_back(f);
        } else {
            ++in_second;
            faces.push_back(Face::of(fresh, arc.a, arc.b));
        }
    }
    std::size_t groups = 0;
    for (std::size_t i = 0; i < l.arcs.size(); ++i)
        groups += uf.find(i) == i ? 1 : 0;
    if (groups != 2)
        return not_recognized("fold vertex link does not split into two loops");
    TwoComplex split = TwoComplex::build(faces);
    SpaceType inner = recognize_impl(split);
    if (!inner.is(SpaceTag::Sphere))
        return not_recognized("splitting vertex " + std::to_string(u) + " gives " + to_string(inner.tag));
    SpaceType s;
    s.tag = SpaceTag::Z3;
    s.chi = x.euler();
    s.fold_edge = e;
    s.evidence.push_back("degree-4 edge " + to_string(e) + " with figure-eight links at both ends");
    s.evidence.push_back("split at " + std::to_string(u) + " (" + std::to_string(in_second) + " of " +
                         std::to_string(k) + " faces moved): Sphere");
    return s;
}

/// Pure, strongly connected, edges of degree at most 2, boundary exactly `rim`, interior links
/// cycles, rim links single paths, chi = 1: a triangulated disc bounded by `rim`.
inline bool is_disc_with_rim(const TwoComplex& d, std::vector<Edge> rim)
{
    if (!is_strongly_connected(d) || d.euler() != 1)
        return false;
    auto deg = edge_degree_vector(d);
    if (std::any_of(deg.begin(), deg.end(), [](int x) { return x > 2; }))
        return false;
    auto bd = boundary_edges(d);
    std::sort(rim.begin(), rim.end());
    if (bd != rim)
        return false;
    for (Vertex v : d.vertices()) {
        LinkGraph l = link(d, v);
        bool on_rim = std::any_of(rim.begin(), rim.end(), [v](const Edge& e) { return e.contains(v); });
        if (!on_rim) {
            if (!l.is_cycle())
                return false;
        } else {
            auto ld = l.degrees();
            if (l.num_components() != 1 || std::count(ld.begin(), ld.end(), 1) != 2 ||
                std::count(ld.begin(), ld.end(), 2) != static_cast<long>(ld.size()) - 2)
                return false;
        }
    }
    return true;
}

inline SpaceType recognize_projective_with_disc(const TwoComplex& x, const std::vector<int>& deg)
{
    std::vector<Edge> tri;
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (deg[i] == 3)
            tri.push_back(x.edges()[i]);
    std::vector<Vertex> tv;
    for (const Edge& e : tri) {
        tv.push_back(e.a);
        tv.push_back(e.b);
    }
    detail::sort_unique(tv);
    if (tv.size() != 3)
        return not_recognized("degree-3 edges " + list_edges(tri) + " do not form a triangle");
    for (Vertex v : x.vertices()) {
        LinkGraph l = link(x, v);
        bool corner = std::binary_search(tv.begin(), tv.end(), v);
        bool ok = corner ? link_shape(l, 3, 2) : l.is_cycle();
        if (!ok)
            return not_recognized("vertex " + std::to_string(v) + " link is not " + (corner ? "a theta graph" : "a cycle"));
    }
    // regions: faces connected across degree-2 edges
    const auto& faces = x.faces();
    auto at_edge = faces_at_edges(x);
    detail::UnionFind uf(faces.size());
    for (std::size_t e = 0; e < at_edge.size(); ++e)
        if (deg[e] == 2)
            uf.unite(at_edge[e][0], at_edge[e][1]);
    std::map<std::size_t, std::vector<Face>> regions;
    for (std::size_t i = 0; i < faces.size(); ++i)
        regions[uf.find(i)].push_back(faces[i]);
    for (const auto& [root, rf] : regions) {
        TwoComplex r = TwoComplex::build(rf);
        bool one_each = std::all_of(tri.begin(), tri.end(), [&](const Edge& e) {
            return std::count_if(rf.begin(), rf.end(), [&](const Face& f) { return f.contains(e); }) == 1;
        });
        if (!one_each || !is_disc_with_rim(r, tri))
            continue;
        std::vector<Face> rest;
        std::set_difference(faces.begin(), faces.end(), rf.begin(), rf.end(), std::back_inserter(rest));
        TwoComplex p = TwoComplex::build(rest);
        SpaceType inner = recognize_impl(p);
        if (!inner.is(SpaceTag::ProjectivePlane))
            continue;
        std::vector<Vertex> loop = tv;
        if (BoundaryTest(p, Coefficients::f2()).trivial({loop})[0])
            continue;
        SpaceType s;
        s.tag = SpaceTag::Z4;
        s.chi = x.euler();
        s.triangle = tri;
        s.disc_faces = rf;
        s.projective_faces = rest;
        s.evidence.push_back("degree-3 triangle " + list_edges(tri) + " with theta links");
        s.evidence.push_back("disc of " + std::to_string(rf.size()) + " faces bounded by the triangle");
        s.evidence.push_back("complement of " + std::to_string(rest.size()) +
                             " faces: ProjectivePlane, triangle nonzero in H1(F2)");
        return s;
    }
    return not_recognized("no disc region splits off a projective plane along the triangle");
}

inline SpaceType recognize_impl(const TwoComplex& x)
{
    if (x.num_faces() == 0 || !x.is_pure() || path_components(x) != 1 || !is_closed(x))
        return not_recognized("not a pure connected closed complex");
    auto deg = edge_degree_vector(x);
    if (all_degrees(deg, 2)) {
        std::vector<LinkGraph> links;
        bool surface = true;
        for (Vertex v : x.vertices()) {
            links.push_back(link(x, v));
            surface = surface && links.back().is_cycle();
        }
        if (surface)
            return recognize_surface(x);
        return recognize_pinched(x, links);
    }
    std::size_t n4 = std::count(deg.begin(), deg.end(), 4), n3 = std::count(deg.begin(), deg.end(), 3),
                n2 = std::count(deg.begin(), deg.end(), 2);
    if (n4 == 1 && n2 + 1 == deg.size())
        return recognize_folded(x, deg);
    if (n3 == 3 && n2 + 3 == deg.size())
        return recognize_projective_with_disc(x, deg);
    return not_recognized("edge degree profile matches no catalogued space");
}

} // namespace detail

/// Decides which catalogued space a pure, connected, closed complex is.
inline SpaceType recognize_space(const TwoComplex& x)
{
    if (x.num_faces() == 0 || !x.is_pure())
        throw ComplexError("recognize_space requires a pure complex with faces");
    if (path_components(x) != 1)
        throw ComplexError("recognize_space requires a connected complex");
    if (!is_closed(x))
        throw ComplexError("recognize_space requires a closed complex");
    return detail::recognize_impl(x);
}

struct MinimalCycle {
    TwoComplex subcomplex;
    /// Absent means not applicable (mu <= 1/2); filled by classify_minimal_cycle.
    std::optional<SpaceType> classification;
};

/// True when b2(Z) = 1 and deleting any single face leaves b2 = 0.
inline bool is_minimal_cycle(const TwoComplex& z)
{
    if (b2(z) != 1)
        return false;
    for (const Face& f : z.faces())
        if (b2(pure_part(remove_face(z, f))) != 0)
            return false;
    return true;
}

/// Extracts a minimal cycle: restrict to the faces that survive collapsing, take the shortest
/// lexicographic face prefix carrying a rational 2-cycle, then delete faces in lexicographic order
/// while b2 >= 1 stays true. A face that cannot be deleted at some point can never be deleted
/// later (b2 is monotone under inclusion), so one pass equals the restart formulation.
inline std::optional<MinimalCycle> find_minimal_cycle(const TwoComplex& x)
{
    TwoComplex core = pure_part(collapse(x));
    if (core.num_faces() == 0 || b2(core) == 0)
        return std::nullopt;
    const auto& all = core.faces();
    // smallest prefix with b2 >= 1 (b2 of prefixes is nondecreasing)
    std::size_t lo = 1, hi = all.size();
    auto prefix = [&](std::size_t k) { return TwoComplex::build(std::span<const Face>(all.data(), k)); };
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (b2(prefix(mid)) >= 1)
            hi = mid;
        else
            lo = mid + 1;
    }
    std::vector<Face> cur = pure_part(collapse(prefix(lo))).faces();
    for (std::size_t i = 0; i < cur.size();) {
        std::vector<Face> trial;
        trial.reserve(cur.size() - 1);
        for (std::size_t j = 0; j < cur.size(); ++j)
            if (j != i)
                trial.push_back(cur[j]);
        TwoComplex t = pure_part(collapse(TwoComplex::build(trial)));
        if (t.num_faces() > 0 && b2(t) >= 1) {
            // faces dropped by the collapse carry no cycle and are gone for good
            Face gone = cur[i];
            cur = t.faces();
            i = std::lower_bound(cur.begin(), cur.end(), gone) - cur.begin();
        } else {
            ++i;
        }
    }
    MinimalCycle out;
    out.subcomplex = TwoComplex::build(cur);
    if (!is_minimal_cycle(out.subcomplex))
        throw std::logic_error("extracted cycle failed the minimality check");
    return out;
}

/// For mu > 1/2 the cycle must be a sphere, Z2, Z3 or Z4; anything else is an implementation bug.
inline std::optional<SpaceType> classify_minimal_cycle(MinimalCycle& z)
{
    auto d = density(z.subcomplex);
    if (!d.mu || *d.mu <= Rational(1, 2)) {
        z.classification.reset();
        return std::nullopt;
    }
    SpaceType s = recognize_space(z.subcomplex);
    if (!(s.is(SpaceTag::Sphere) || s.is(SpaceTag::Z2) || s.is(SpaceTag::Z3) || s.is(SpaceTag::Z4))) {
        std::string why;
        for (const auto& e : s.evidence)
            why += "; " + e;
        throw ClassificationFailure("minimal cycle with mu=" + to_string(*d.mu) + " recognized as " +
                                    to_string(s.tag) + why);
    }
    z.classification = s;
    return s;
}

/// A face whose boundary is null-homotopic in the rest of the cycle. Sphere, Z2, Z3: the smallest
/// face. Z4: the smallest face of the projective part (removing a disc face would leave a space
/// homotopy equivalent to the projective plane, changing the fundamental group).
inline Face deletable_face(const MinimalCycle& z)
{
    if (!z.classification)
        throw ComplexError("deletable_face needs a classified minimal cycle");
    const SpaceType& s = *z.classification;
    if (s.is(SpaceTag::Sphere) || s.is(SpaceTag::Z2) || s.is(SpaceTag::Z3))
        return z.subcomplex.faces().front();
    if (s.is(SpaceTag::Z4) && !s.projective_faces.empty())
        return *std::min_element(s.projective_faces.begin(), s.projective_faces.end());
    throw ComplexError("deletable_face: classification " + to_string(s.tag) + " has no deletable face rule");
}

struct WedgeDecomposition {
    bool ok = false;
    std::string failure;
    /// Components in attachment order.
    std::vector<StrongComponent> components;
    /// wedge_points[j] is where component j meets the union of its predecessors (absent for j = 0).
    std::vector<std::optional<Vertex>> wedge_points;
};

/// Orders strong components so each meets the union of its predecessors in exactly one vertex.
inline WedgeDecomposition wedge_decomposition(const TwoComplex& x)
{
    if (!x.is_pure() || path_components(x) != 1)
        throw ComplexError("wedge_decomposition requires a pure connected complex");
    WedgeDecomposition out;
    auto comps = strong_components(x);
    if (comps.empty()) {
        out.failure = "no faces";
        return out;
    }
    std::vector<char> placed(comps.size(), 0);
    std::vector<Vertex> uni = comps[0].complex.vertices();
    placed[0] = 1;
    out.components.push_back(comps[0]);
    out.wedge_points.push_back(std::nullopt);
    for (std::size_t round = 1; round < comps.size(); ++round) {
        bool progressed = false;
        for (std::size_t j = 0; j < comps.size() && !progressed; ++j) {
            if (placed[j])
                continue;
            std::vector<Vertex> common;
            const auto& vs = comps[j].complex.vertices();
            std::set_intersection(vs.begin(), vs.end(), uni.begin(), uni.end(), std::back_inserter(common));
            if (common.empty())
                continue;
            if (common.size() > 1) {
                out.failure = "component " + std::to_string(j) + " meets the others in " +
                              std::to_string(common.size()) + " vertices";
                return out;
            }
            placed[j] = 1;
            out.components.push_back(comps[j]);
            out.wedge_points.push_back(common[0]);
            uni.insert(uni.end(), vs.begin(), vs.end());
            detail::sort_unique(uni);
            progressed = true;
        }
        if (!progressed) {
            out.failure = "components are not connected through vertices";
            return out;
        }
    }
    out.ok = true;
    return out;
}

/// True when X is an iterated wedge of projective planes.
inline bool is_projective_wedge(const TwoComplex& x)
{
    auto w = wedge_decomposition(x);
    if (!w.ok)
        return false;
    return std::all_of(w.components.begin(), w.components.end(), [](const StrongComponent& c) {
        return is_closed(c.complex) && recognize_space(c.complex).is(SpaceTag::ProjectivePlane);
    });
}

} // namespace lmc
