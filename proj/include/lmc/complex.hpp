#pragma once

// Finite simplicial 2-complexes and their elementary structural operations.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lmc {

using Vertex = std::uint32_t;

/// Error raised when an input violates an operation's contract.
class ComplexError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unordered vertex pair stored with a < b.
struct Edge {
    Vertex a = 0, b = 0;

    static Edge of(Vertex x, Vertex y) { return x < y ? Edge{x, y} : Edge{y, x}; }
    bool contains(Vertex v) const { return a == v || b == v; }
    Vertex other(Vertex v) const { return v == a ? b : a; }
    auto operator<=>(const Edge&) const = default;
};

/// Unordered vertex triple stored with a < b < c.
struct Face {
    Vertex a = 0, b = 0, c = 0;

    static Face of(Vertex x, Vertex y, Vertex z)
    {
        if (x == y || y == z || x == z) {
            std::ostringstream os;
            os << "degenerate face " << x << ' ' << y << ' ' << z;
            throw ComplexError(os.str());
        }
        std::array<Vertex, 3> v{x, y, z};
        std::sort(v.begin(), v.end());
        return Face{v[0], v[1], v[2]};
    }

    std::array<Vertex, 3> vertices() const { return {a, b, c}; }
    std::array<Edge, 3> edges() const { return {Edge{a, b}, Edge{a, c}, Edge{b, c}}; }
    bool contains(Vertex v) const { return a == v || b == v || c == v; }
    bool contains(const Edge& e) const { return contains(e.a) && contains(e.b); }
    /// The vertex of this face not on edge e (e must be an edge of the face).
    Vertex opposite(const Edge& e) const { return a != e.a && a != e.b ? a : (b != e.a && b != e.b ? b : c); }
    /// The edge of this face not containing v.
    Edge opposite(Vertex v) const { return v == a ? Edge{b, c} : (v == b ? Edge{a, c} : Edge{a, b}); }
    auto operator<=>(const Face&) const = default;
};

inline std::string to_string(const Edge& e) { return std::to_string(e.a) + "-" + std::to_string(e.b); }
inline std::string to_string(const Face& f)
{
    return std::to_string(f.a) + "-" + std::to_string(f.b) + "-" + std::to_string(f.c);
}

namespace detail {

template <typename T>
void sort_unique(std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <typename T>
bool sorted_contains(const std::vector<T>& v, const T& x)
{
    return std::binary_search(v.begin(), v.end(), x);
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t x, std::size_t y)
    {
        x = find(x);
        y = find(y);
        if (x == y)
            return false;
        if (y < x)
            std::swap(x, y);
        parent[y] = x;
        return true;
    }
};

} // namespace detail

/// A finite simplicial complex of dimension at most two, closed under incidence.
/// Cells are kept in canonical sorted order, so every derived traversal is deterministic.
class TwoComplex {
public:
    TwoComplex() = default;

    /// Builds the closure of the given cells. Throws ComplexError on degenerate cells.
    static TwoComplex build(std::span<const Face> faces, std::span<const Edge> extra_edges = {},
                            std::span<const Vertex> extra_vertices = {})
    {
        TwoComplex x;
        x.faces_.assign(faces.begin(), faces.end());
        for (const Face& f : x.faces_)
            if (f.a >= f.b || f.b >= f.c)
                throw ComplexError("degenerate face " + to_string(f));
        detail::sort_unique(x.faces_);
        x.edges_.reserve(3 * x.faces_.size() + extra_edges.size());
        for (const Face& f : x.faces_)
            for (const Edge& e : f.edges())
                x.edges_.push_back(e);
        for (const Edge& e : extra_edges) {
            if (e.a == e.b)
                throw ComplexError("degenerate edge " + to_string(e));
            x.edges_.push_back(Edge::of(e.a, e.b));
        }
        detail::sort_unique(x.edges_);
        x.vertices_.assign(extra_vertices.begin(), extra_vertices.end());
        for (const Edge& e : x.edges_) {
            x.vertices_.push_back(e.a);
            x.vertices_.push_back(e.b);
        }
        detail::sort_unique(x.vertices_);
        return x;
    }

    /// Convenience overload taking raw triples; rejects repeated vertices with the offending triple.
    static TwoComplex from_triples(const std::vector<std::array<Vertex, 3>>& triples,
                                   const std::vector<std::array<Vertex, 2>>& extra_edges = {},
                                   const std::vector<Vertex>& extra_vertices = {})
    {
        std::vector<Face> faces;
        faces.reserve(triples.size());
        for (const auto& t : triples)
            faces.push_back(Face::of(t[0], t[1], t[2]));
        std::vector<Edge> edges;
        for (const auto& e : extra_edges) {
            if (e[0] == e[1])
                throw ComplexError("degenerate edge " + std::to_string(e[0]) + " " + std::to_string(e[1]));
            edges.push_back(Edge::of(e[0], e[1]));
        }
        return build(faces, edges, extra_vertices);
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_faces() const { return faces_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool has_vertex(Vertex v) const { return detail::sorted_contains(vertices_, v); }
    bool has_edge(const Edge& e) const { return detail::sorted_contains(edges_, e); }
    bool has_face(const Face& f) const { return detail::sorted_contains(faces_, f); }

    std::size_t vertex_index(Vertex v) const { return index_of(vertices_, v); }
    std::size_t edge_index(const Edge& e) const { return index_of(edges_, e); }
    std::size_t face_index(const Face& f) const { return index_of(faces_, f); }

    /// Euler characteristic v - e + f.
    long euler() const
    {
        return static_cast<long>(vertices_.size()) - static_cast<long>(edges_.size()) +
               static_cast<long>(faces_.size());
    }

    /// True when every vertex and edge lies in some face.
    bool is_pure() const;

    /// Subset test on cells.
    bool contains(const TwoComplex& other) const
    {
        return std::includes(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end()) &&
               std::includes(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end()) &&
               std::includes(faces_.begin(), faces_.end(), other.faces_.begin(), other.faces_.end());
    }

    bool operator==(const TwoComplex&) const = default;

private:
    template <typename T>
    static std::size_t index_of(const std::vector<T>& v, const T& x)
    {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x)
            throw ComplexError("cell not in complex");
        return static_cast<std::size_t>(it - v.begin());
    }

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
};

/// Face degree of each edge, aligned with X.edges().
inline std::vector<int> edge_degree_vector(const TwoComplex& x)
{
    std::vector<int> deg(x.num_edges(), 0);
    for (const Face& f : x.faces())
        for (const Edge& e : f.edges())
            ++deg[x.edge_index(e)];
    return deg;
}

/// deg(e): number of faces containing e, for every edge.
inline std::map<Edge, int> edge_degrees(const TwoComplex& x)
{
    std::map<Edge, int> out;
    auto deg = edge_degree_vector(x);
    for (std::size_t i = 0; i < deg.size(); ++i)
        out.emplace_hint(out.end(), x.edges()[i], deg[i]);
    return out;
}

/// Edges of degree one.
inline std::vector<Edge> boundary_edges(const TwoComplex& x)
{
    std::vector<Edge> out;
    auto deg = edge_degree_vector(x);
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (deg[i] == 1)
            out.push_back(x.edges()[i]);
    return out;
}

inline bool is_closed(const TwoComplex& x)
{
    auto deg = edge_degree_vector(x);
    return std::none_of(deg.begin(), deg.end(), [](int d) { return d == 1; });
}

inline bool TwoComplex::is_pure() const
{
    std::vector<char> seen_v(vertices_.size(), 0), seen_e(edges_.size(), 0);
    for (const Face& f : faces_) {
        for (Vertex v : f.vertices())
            seen_v[vertex_index(v)] = 1;
        for (const Edge& e : f.edges())
            seen_e[edge_index(e)] = 1;
    }
    return std::all_of(seen_v.begin(), seen_v.end(), [](char c) { return c != 0; }) &&
           std::all_of(seen_e.begin(), seen_e.end(), [](char c) { return c != 0; });
}

/// The link of a vertex: nodes are neighbours through edges, one arc per face through the apex.
struct LinkGraph {
    Vertex apex = 0;
    std::vector<Vertex> nodes;
    std::vector<Edge> arcs;

    std::size_t node_index(Vertex u) const
    {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
        return static_cast<std::size_t>(it - nodes.begin());
    }

    int degree(Vertex u) const
    {
        return static_cast<int>(std::count_if(arcs.begin(), arcs.end(), [u](const Edge& e) { return e.contains(u); }));
    }

    std::vector<int> degrees() const
    {
        std::vector<int> d(nodes.size(), 0);
        for (const Edge& e : arcs) {
            ++d[node_index(e.a)];
            ++d[node_index(e.b)];
        }
        return d;
    }

    /// Component id per node (ids ordered by smallest member).
    std::vector<std::size_t> component_ids(std::size_t* count = nullptr) const
    {
        detail::UnionFind uf(nodes.size());
        for (const Edge& e : arcs)
            uf.unite(node_index(e.a), node_index(e.b));
        std::vector<std::size_t> id(nodes.size());
        std::map<std::size_t, std::size_t> root_to_id;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            auto [it, inserted] = root_to_id.emplace(uf.find(i), root_to_id.size());
            id[i] = it->second;
        }
        if (count)
            *count = root_to_id.size();
        return id;
    }

    std::size_t num_components() const
    {
        std::size_t c = 0;
        component_ids(&c);
        return c;
    }

    /// True when the link is a single cycle (connected, every node of degree 2).
    bool is_cycle() const
    {
        if (nodes.size() < 3)
            return false;
        auto d = degrees();
        return num_components() == 1 && std::all_of(d.begin(), d.end(), [](int x) { return x == 2; });
    }
};

inline LinkGraph link(const TwoComplex& x, Vertex v)
{
    if (!x.has_vertex(v))
        throw ComplexError("unknown vertex " + std::to_string(v));
    LinkGraph g;
    g.apex = v;
    for (const Edge& e : x.edges())
        if (e.contains(v))
            g.nodes.push_back(e.other(v));
    std::sort(g.nodes.begin(), g.nodes.end());
    for (const Face& f : x.faces())
        if (f.contains(v))
            g.arcs.push_back(f.opposite(v));
    return g;
}

/// Number of link components minus one; zero for a vertex incident to no face.
inline int sing(const TwoComplex& x, Vertex v)
{
    LinkGraph g = link(x, v);
    if (g.arcs.empty())
        return 0;
    return static_cast<int>(g.num_components()) - 1;
}

/// Per-vertex face adjacency, aligned with X.vertices().
inline std::vector<std::vector<std::size_t>> faces_at_vertices(const TwoComplex& x)
{
    std::vector<std::vector<std::size_t>> at(x.num_vertices());
    for (std::size_t i = 0; i < x.num_faces(); ++i)
        for (Vertex v : x.faces()[i].vertices())
            at[x.vertex_index(v)].push_back(i);
    return at;
}

/// Per-edge face adjacency, aligned with X.edges().
inline std::vector<std::vector<std::size_t>> faces_at_edges(const TwoComplex& x)
{
    std::vector<std::vector<std::size_t>> at(x.num_edges());
    for (std::size_t i = 0; i < x.num_faces(); ++i)
        for (const Edge& e : x.faces()[i].edges())
            at[x.edge_index(e)].push_back(i);
    return at;
}

/// Number of path components (b0) of the whole complex.
inline std::size_t path_components(const TwoComplex& x)
{
    detail::UnionFind uf(x.num_vertices());
    std::size_t comps = x.num_vertices();
    for (const Edge& e : x.edges())
        if (uf.unite(x.vertex_index(e.a), x.vertex_index(e.b)))
            --comps;
    return comps;
}

struct StrongComponent {
    std::vector<Face> faces;
    TwoComplex complex;
};

/// Classes of faces under the "shares an edge" relation, ordered by smallest face.
inline std::vector<StrongComponent> strong_components(const TwoComplex& x)
{
    detail::UnionFind uf(x.num_faces());
    for (const auto& fs : faces_at_edges(x))
        for (std::size_t i = 1; i < fs.size(); ++i)
            uf.unite(fs[0], fs[i]);
    std::map<std::size_t, std::size_t> root_to_comp;
    std::vector<StrongComponent> out;
    for (std::size_t i = 0; i < x.num_faces(); ++i) {
        auto [it, inserted] = root_to_comp.emplace(uf.find(i), out.size());
        if (inserted)
            out.emplace_back();
        out[it->second].faces.push_back(x.faces()[i]);
    }
    for (auto& c : out)
        c.complex = TwoComplex::build(c.faces);
    return out;
}

inline bool is_strongly_connected(const TwoComplex& x)
{
    return x.num_faces() > 0 && strong_components(x).size() == 1;
}

/// Keeps exactly the faces with their edges and vertices.
inline TwoComplex pure_part(const TwoComplex& x) { return TwoComplex::build(x.faces()); }

/// Deletes the interior of one face; the skeleton is retained.
inline TwoComplex remove_face(const TwoComplex& x, const Face& f)
{
    if (!x.has_face(f))
        throw ComplexError("face " + to_string(f) + " not in complex");
    std::vector<Face> faces;
    faces.reserve(x.num_faces() - 1);
    for (const Face& g : x.faces())
        if (g != f)
            faces.push_back(g);
    return TwoComplex::build(faces, x.edges(), x.vertices());
}

/// Subcomplex spanned by the given faces plus every cell of `skeleton_from` that is not a face.
inline TwoComplex with_faces(const TwoComplex& skeleton_from, std::vector<Face> faces)
{
    return TwoComplex::build(faces, skeleton_from.edges(), skeleton_from.vertices());
}

struct CutOpen {
    TwoComplex complex;
    /// new_to_old[i] is the original label of new vertex i.
    std::vector<Vertex> new_to_old;
};

/// Splits every vertex into one copy per link component. New vertices are numbered
/// 0.. in order of (original vertex, link component by smallest node).
inline CutOpen cut_open(const TwoComplex& x)
{
    if (!x.is_pure())
        throw ComplexError("cut_open requires a pure complex");
    CutOpen out;
    std::vector<LinkGraph> links;
    std::vector<std::vector<std::size_t>> comp_ids;
    std::vector<Vertex> base(x.num_vertices());
    links.reserve(x.num_vertices());
    for (std::size_t i = 0; i < x.num_vertices(); ++i) {
        Vertex v = x.vertices()[i];
        links.push_back(link(x, v));
        std::size_t count = 0;
        comp_ids.push_back(links.back().component_ids(&count));
        base[i] = static_cast<Vertex>(out.new_to_old.size());
        for (std::size_t c = 0; c < count; ++c)
            out.new_to_old.push_back(v);
    }
    auto relabel = [&](Vertex corner, Vertex some_other) {
        std::size_t vi = x.vertex_index(corner);
        std::size_t node = links[vi].node_index(some_other);
        return static_cast<Vertex>(base[vi] + comp_ids[vi][node]);
    };
    std::vector<Face> faces;
    faces.reserve(x.num_faces());
    for (const Face& f : x.faces())
        faces.push_back(Face::of(relabel(f.a, f.b), relabel(f.b, f.a), relabel(f.c, f.a)));
    out.complex = TwoComplex::build(faces);
    return out;
}

struct CollapseResult {
    TwoComplex complex;
    std::vector<std::pair<Face, Edge>> steps;
};

/// Elementary collapses through free edges until no face has a free edge. Each step removes
/// the lexicographically smallest face that has a free edge, together with its smallest free edge.
inline CollapseResult collapse_with_log(const TwoComplex& x)
{
    const auto& faces = x.faces();
    const auto& edges = x.edges();
    auto deg = edge_degree_vector(x);
    auto at_edge = faces_at_edges(x);
    std::vector<char> face_alive(faces.size(), 1), edge_alive(edges.size(), 1);
    std::vector<std::array<std::size_t, 3>> fe(faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        auto es = faces[i].edges();
        for (int k = 0; k < 3; ++k)
            fe[i][k] = x.edge_index(es[k]);
    }
    std::set<std::size_t> candidates;
    for (std::size_t i = 0; i < faces.size(); ++i)
        for (std::size_t e : fe[i])
            if (deg[e] == 1)
                candidates.insert(i);
    CollapseResult out;
    while (!candidates.empty()) {
        std::size_t f = *candidates.begin();
        candidates.erase(candidates.begin());
        if (!face_alive[f])
            continue;
        std::size_t free_edge = edges.size();
        for (std::size_t e : fe[f])
            if (edge_alive[e] && deg[e] == 1) {
                free_edge = e;
                break;
            }
        if (free_edge == edges.size())
            continue;
        face_alive[f] = 0;
        edge_alive[free_edge] = 0;
        out.steps.emplace_back(faces[f], edges[free_edge]);
        for (std::size_t e : fe[f]) {
            --deg[e];
            if (e != free_edge && deg[e] == 1)
                for (std::size_t g : at_edge[e])
                    if (face_alive[g])
                        candidates.insert(g);
        }
    }
    std::vector<Face> kept_faces;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (face_alive[i])
            kept_faces.push_back(faces[i]);
    std::vector<Edge> kept_edges;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edge_alive[i])
            kept_edges.push_back(edges[i]);
    out.complex = TwoComplex::build(kept_faces, kept_edges, x.vertices());
    return out;
}

inline TwoComplex collapse(const TwoComplex& x) { return collapse_with_log(x).complex; }

/// Applies a vertex relabelling to every cell.
template <typename Map>
TwoComplex relabel(const TwoComplex& x, Map&& map)
{
    std::vector<Face> faces;
    for (const Face& f : x.faces())
        faces.push_back(Face::of(map(f.a), map(f.b), map(f.c)));
    std::vector<Edge> edges;
    for (const Edge& e : x.edges())
        edges.push_back(Edge::of(map(e.a), map(e.b)));
    std::vector<Vertex> verts;
    for (Vertex v : x.vertices())
        verts.push_back(map(v));
    return TwoComplex::build(faces, edges, verts);
}

/// Cellwise union.
inline TwoComplex merge(const TwoComplex& x, const TwoComplex& y)
{
    std::vector<Face> faces(x.faces());
    faces.insert(faces.end(), y.faces().begin(), y.faces().end());
    std::vector<Edge> edges(x.edges());
    edges.insert(edges.end(), y.edges().begin(), y.edges().end());
    std::vector<Vertex> verts(x.vertices());
    verts.insert(verts.end(), y.vertices().begin(), y.vertices().end());
    return TwoComplex::build(faces, edges, verts);
}

/// L(X) = sum over edges of (2 - deg e).
inline long defect(const TwoComplex& x)
{
    long total = 0;
    for (int d : edge_degree_vector(x))
        total += 2 - d;
    return total;
}

} // namespace lmc
