#pragma once

// Density invariants (mu, mu-tilde, L), pair densities, the Cheeger constant, homological
// systoles and counting of simplicial embeddings.

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_set>
#include <vector>

#include <boost/rational.hpp>

#include "complex.hpp"
#include "flow.hpp"
#include "homology.hpp"

namespace lmc {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r)
{
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct DensityReport {
    long v = 0, e = 0, f = 0;
    long chi = 0;
    long L = 0;
    /// v/f; absent when f = 0.
    std::optional<Rational> mu;
};

inline DensityReport density(const TwoComplex& x)
{
    DensityReport r;
    r.v = static_cast<long>(x.num_vertices());
    r.e = static_cast<long>(x.num_edges());
    r.f = static_cast<long>(x.num_faces());
    r.chi = x.euler();
    r.L = defect(x);
    if (r.f > 0) {
        r.mu = Rational(r.v, r.f);
        Rational identity = Rational(1, 2) + Rational(2 * r.chi + r.L, 2 * r.f);
        if (identity != *r.mu)
            throw std::logic_error("density identity failed on a complex with f=" + std::to_string(r.f));
    }
    return r;
}

struct PairDensity {
    Rational mu_pair;
    long dv = 0, df = 0, dchi = 0, dL = 0;
    /// 1/2 + (2*dchi + dL) / (2*df), which must equal mu_pair.
    Rational decomposition;
};

/// mu(S1, S2) = (v1 - v2) / (f1 - f2) for S2 a subcomplex of S1 with fewer faces.
inline PairDensity mu_pair(const TwoComplex& s1, const TwoComplex& s2)
{
    if (!s1.contains(s2))
        throw ComplexError("mu_pair: second complex is not contained in the first");
    if (s1.num_faces() <= s2.num_faces())
        throw ComplexError("mu_pair: the larger complex must have more faces");
    PairDensity p;
    p.dv = static_cast<long>(s1.num_vertices()) - static_cast<long>(s2.num_vertices());
    p.df = static_cast<long>(s1.num_faces()) - static_cast<long>(s2.num_faces());
    p.dchi = s1.euler() - s2.euler();
    p.dL = defect(s1) - defect(s2);
    p.mu_pair = Rational(p.dv, p.df);
    p.decomposition = Rational(1, 2) + Rational(2 * p.dchi + p.dL, 2 * p.df);
    if (p.decomposition != p.mu_pair)
        throw std::logic_error("pair density decomposition failed");
    return p;
}

struct MuTilde {
    Rational value;
    /// Faces of a minimizing subcomplex.
    std::vector<Face> witness;
    int iterations = 0;
};

/// min over face sets F != {} of |V(F)| / |F|, by Dinkelbach iteration on project-selection cuts.
inline MuTilde mu_tilde(const TwoComplex& x)
{
    if (x.num_faces() == 0)
        throw ComplexError("mu_tilde needs at least one face");
    const auto& faces = x.faces();
    const std::size_t F = faces.size();
    std::vector<Vertex> used;
    for (const Face& f : faces)
        for (Vertex v : f.vertices())
            used.push_back(v);
    detail::sort_unique(used);
    const std::size_t V = used.size();
    auto vid = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(used.begin(), used.end(), v) - used.begin()); };

    MuTilde out;
    out.value = Rational(static_cast<std::int64_t>(V), static_cast<std::int64_t>(F));
    out.witness = faces;
    for (;;) {
        ++out.iterations;
        // maximise a|F| - b|V(F)| with t = a/b: source -> face (a), face -> vertex (inf), vertex -> sink (b)
        const std::int64_t a = out.value.numerator(), b = out.value.denominator();
        const std::size_t s = F + V, t = F + V + 1;
        MaxFlow g(F + V + 2);
        for (std::size_t i = 0; i < F; ++i) {
            g.add_edge(s, i, a);
            for (Vertex v : faces[i].vertices())
                g.add_edge(i, F + vid(v), MaxFlow::kInfinity);
        }
        for (std::size_t j = 0; j < V; ++j)
            g.add_edge(F + j, t, b);
        std::int64_t cut = g.run(s, t);
        std::int64_t best = a * static_cast<std::int64_t>(F) - cut;
        if (best <= 0)
            break;
        auto side = g.source_side(s);
        std::vector<Face> chosen;
        std::size_t nv = 0;
        for (std::size_t i = 0; i < F; ++i)
            if (side[i])
                chosen.push_back(faces[i]);
        for (std::size_t j = 0; j < V; ++j)
            nv += side[F + j] ? 1 : 0;
        Rational next(static_cast<std::int64_t>(nv), static_cast<std::int64_t>(chosen.size()));
        if (!(next < out.value))
            throw std::logic_error("mu_tilde: Dinkelbach step did not improve");
        out.value = next;
        out.witness = std::move(chosen);
    }
    return out;
}

constexpr std::size_t kBruteForceFaceLimit = 20;

/// Exhaustive minimum of |V(F)|/|F| over nonempty face sets (test oracle).
inline Rational mu_tilde_bruteforce(const TwoComplex& x)
{
    const std::size_t F = x.num_faces();
    if (F == 0)
        throw ComplexError("mu_tilde needs at least one face");
    if (F > kBruteForceFaceLimit)
        throw ComplexError("mu_tilde_bruteforce: more than " + std::to_string(kBruteForceFaceLimit) + " faces");
    std::vector<std::array<std::size_t, 3>> fv(F);
    for (std::size_t i = 0; i < F; ++i)
        for (int k = 0; k < 3; ++k)
            fv[i][k] = x.vertex_index(x.faces()[i].vertices()[k]);
    std::optional<Rational> best;
    std::vector<int> count(x.num_vertices(), 0);
    for (std::uint32_t mask = 1; mask < (1u << F); ++mask) {
        std::fill(count.begin(), count.end(), 0);
        std::int64_t nf = 0, nv = 0;
        for (std::size_t i = 0; i < F; ++i)
            if (mask >> i & 1u) {
                ++nf;
                for (std::size_t v : fv[i])
                    if (count[v]++ == 0)
                        ++nv;
            }
        Rational r(nv, nf);
        if (!best || r < *best)
            best = r;
    }
    return *best;
}

struct CheegerResult {
    /// Absent when no nonempty face set has area at most half the total.
    std::optional<Rational> value;
    std::vector<Face> witness;
    /// False when the enumeration budget ran out; value is then only an upper bound.
    bool exact = true;
    std::uint64_t explored = 0;
};

constexpr std::size_t kCheegerExhaustiveLimit = 24;

namespace detail {

struct FaceEdgeIndex {
    std::vector<std::array<std::size_t, 3>> fe;
    std::vector<std::vector<std::size_t>> at_edge;

    explicit FaceEdgeIndex(const TwoComplex& x) : fe(x.num_faces()), at_edge(faces_at_edges(x))
    {
        for (std::size_t i = 0; i < x.num_faces(); ++i) {
            auto es = x.faces()[i].edges();
            for (int k = 0; k < 3; ++k)
                fe[i][k] = x.edge_index(es[k]);
        }
    }
};

inline CheegerResult cheeger_exhaustive(const TwoComplex& x)
{
    const std::size_t F = x.num_faces();
    FaceEdgeIndex idx(x);
    std::vector<int> cnt(x.num_edges(), 0);
    long boundary = 0;
    std::size_t area = 0;
    std::uint32_t state = 0, best_mask = 0;
    CheegerResult out;
    auto toggle = [&](std::size_t i, int delta) {
        for (std::size_t e : idx.fe[i]) {
            if (cnt[e] == 1)
                --boundary;
            cnt[e] += delta;
            if (cnt[e] == 1)
                ++boundary;
        }
    };
    for (std::uint32_t g = 1; g < (1u << F); ++g) {
        std::size_t bit = static_cast<std::size_t>(__builtin_ctz(g));
        bool adding = !(state >> bit & 1u);
        toggle(bit, adding ? 1 : -1);
        state ^= 1u << bit;
        area += adding ? 1 : static_cast<std::size_t>(-1);
        ++out.explored;
        if (2 * area > F)
            continue;
        Rational r(boundary, static_cast<std::int64_t>(area));
        if (!out.value || r < *out.value) {
            out.value = r;
            best_mask = state;
        }
    }
    for (std::size_t i = 0; i < F; ++i)
        if (best_mask >> i & 1u)
            out.witness.push_back(x.faces()[i]);
    return out;
}

/// Enumerates edge-connected face sets of area at most half, each exactly once (ESU-style
/// extension by exclusive neighbours above the seed). A disconnected set never beats its best
/// component, so the minimum is unchanged.
inline CheegerResult cheeger_connected(const TwoComplex& x, std::uint64_t node_budget)
{
    const std::size_t F = x.num_faces();
    const std::size_t max_area = F / 2;
    FaceEdgeIndex idx(x);
    std::vector<std::vector<std::size_t>> nb(F);
    for (std::size_t i = 0; i < F; ++i) {
        for (std::size_t e : idx.fe[i])
            for (std::size_t g : idx.at_edge[e])
                if (g != i)
                    nb[i].push_back(g);
        sort_unique(nb[i]);
    }
    std::vector<int> cnt(x.num_edges(), 0);
    long boundary = 0;
    std::vector<std::size_t> current;
    // closed-neighbourhood multiplicity of the current set
    std::vector<int> near(F, 0);
    CheegerResult out;
    bool exhausted = false;
    auto add = [&](std::size_t i, int delta) {
        for (std::size_t e : idx.fe[i]) {
            if (cnt[e] == 1)
                --boundary;
            cnt[e] += delta;
            if (cnt[e] == 1)
                ++boundary;
        }
        near[i] += delta;
        for (std::size_t g : nb[i])
            near[g] += delta;
    };
    auto record = [&]() {
        Rational r(boundary, static_cast<std::int64_t>(current.size()));
        if (!out.value || r < *out.value) {
            out.value = r;
            out.witness.clear();
            for (std::size_t i : current)
                out.witness.push_back(x.faces()[i]);
            std::sort(out.witness.begin(), out.witness.end());
        }
    };
    auto extend = [&](auto&& self, std::vector<std::size_t> ext, std::size_t seed) -> void {
        if (++out.explored > node_budget) {
            exhausted = true;
            return;
        }
        record();
        if (current.size() == max_area)
            return;
        while (!ext.empty() && !exhausted) {
            std::size_t w = ext.back();
            ext.pop_back();
            std::vector<std::size_t> next = ext;
            for (std::size_t u : nb[w])
                if (u > seed && near[u] == 0)
                    next.push_back(u);
            current.push_back(w);
            add(w, 1);
            self(self, std::move(next), seed);
            add(w, -1);
            current.pop_back();
        }
    };
    for (std::size_t s = 0; s < F && !exhausted; ++s) {
        current.assign(1, s);
        add(s, 1);
        std::vector<std::size_t> ext;
        for (std::size_t u : nb[s])
            if (u > s)
                ext.push_back(u);
        extend(extend, std::move(ext), s);
        add(s, -1);
    }
    out.exact = !exhausted;
    return out;
}

} // namespace detail

/// h = min |boundary(S)| / |S| over pure subcomplexes S with |S| <= |faces|/2. Exhaustive up to 24
/// faces; beyond that, edge-connected sets are enumerated under a node budget.
inline CheegerResult cheeger(const TwoComplex& x, std::uint64_t node_budget = 2'000'000)
{
    if (!x.is_pure())
        throw ComplexError("cheeger requires a pure complex");
    if (x.num_faces() < 2)
        return {};
    if (x.num_faces() <= kCheegerExhaustiveLimit)
        return detail::cheeger_exhaustive(x);
    return detail::cheeger_connected(x, node_budget);
}

/// Connected-set enumeration without the exhaustive shortcut (cross-checks the two paths).
inline CheegerResult cheeger_by_growth(const TwoComplex& x, std::uint64_t node_budget)
{
    if (!x.is_pure())
        throw ComplexError("cheeger requires a pure complex");
    if (x.num_faces() < 2)
        return {};
    return detail::cheeger_connected(x, node_budget);
}

struct SystoleResult {
    /// Absent when every edge cycle is trivial in H1 with these coefficients.
    std::optional<std::size_t> length;
    /// The witness cycle as a cyclic vertex sequence.
    std::vector<Vertex> cycle;
    std::size_t candidates_tested = 0;
};

namespace detail {

/// Signed edge vector of a closed vertex walk (v0 v1 ... v_{k-1} back to v0).
inline std::vector<BigInt> cycle_vector(const TwoComplex& x, const std::vector<Vertex>& walk)
{
    std::vector<BigInt> z(x.num_edges());
    for (std::size_t i = 0; i < walk.size(); ++i) {
        Vertex u = walk[i], w = walk[(i + 1) % walk.size()];
        Edge e = Edge::of(u, w);
        z[x.edge_index(e)] += (u < w) ? 1 : -1;
    }
    return z;
}

/// Decides for each cycle whether it is a boundary with the given coefficients.
class BoundaryTest {
public:
    BoundaryTest(const TwoComplex& x, const Coefficients& k) : x_(x), k_(k) {}

    std::vector<char> trivial(const std::vector<std::vector<Vertex>>& cycles) const
    {
        std::vector<std::vector<BigInt>> rhs;
        rhs.reserve(cycles.size());
        for (const auto& c : cycles)
            rhs.push_back(cycle_vector(x_, c));
        std::vector<char> out(cycles.size());
        if (x_.num_faces() <= kSnfFaceLimit || !k_.is_field()) {
            if (x_.num_faces() > kSnfFaceLimit)
                throw ComplexError("systole over " + k_.name() + " limited to " + std::to_string(kSnfFaceLimit) +
                                   " faces");
            LatticeReducer red(face_boundary_rows(x_).transposed(), rhs);
            for (std::size_t i = 0; i < cycles.size(); ++i)
                out[i] = red.in_image(i, k_.reducer_modulus());
            return out;
        }
        SparseMatrix m = face_boundary_rows(x_);
        std::size_t base = detail::field_rank(m, k_);
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            SparseMatrix aug = m;
            SparseMatrix::Row row;
            for (std::size_t e = 0; e < rhs[i].size(); ++e)
                if (rhs[i][e] != 0)
                    row.emplace_back(static_cast<std::uint32_t>(e), static_cast<std::int64_t>(rhs[i][e]));
            aug.rows.push_back(std::move(row));
            out[i] = detail::field_rank(aug, k_) == base;
        }
        return out;
    }

private:
    const TwoComplex& x_;
    Coefficients k_;
};

/// Adjacency lists aligned with X.vertices().
inline std::vector<std::vector<std::size_t>> vertex_adjacency(const TwoComplex& x)
{
    std::vector<std::vector<std::size_t>> adj(x.num_vertices());
    for (const Edge& e : x.edges()) {
        std::size_t a = x.vertex_index(e.a), b = x.vertex_index(e.b);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

} // namespace detail

/// Shortest edge cycle nontrivial in H1(X; k). Candidates are the fundamental cycles of a
/// breadth-first tree at every root; for a shortest nontrivial cycle C and a root r on C, C is a
/// sum of fundamental cycles of edges on C, each no longer than C, so some candidate is nontrivial
/// and no longer than C.
inline SystoleResult systole(const TwoComplex& x, const Coefficients& k = Coefficients::integers())
{
    const std::size_t V = x.num_vertices();
    auto adj = detail::vertex_adjacency(x);
    std::set<std::vector<Vertex>> seen;
    std::vector<std::vector<Vertex>> cands;
    for (std::size_t r = 0; r < V; ++r) {
        std::vector<std::size_t> parent(V, SIZE_MAX), depth(V, SIZE_MAX);
        std::queue<std::size_t> q;
        depth[r] = 0;
        parent[r] = r;
        q.push(r);
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (std::size_t w : adj[u])
                if (depth[w] == SIZE_MAX) {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    q.push(w);
                }
        }
        for (const Edge& e : x.edges()) {
            std::size_t u = x.vertex_index(e.a), w = x.vertex_index(e.b);
            if (depth[u] == SIZE_MAX || parent[u] == w || parent[w] == u)
                continue;
            // climb to the lowest common ancestor
            std::vector<std::size_t> pu{u}, pw{w};
            std::size_t a = u, b = w;
            while (depth[a] > depth[b])
                pu.push_back(a = parent[a]);
            while (depth[b] > depth[a])
                pw.push_back(b = parent[b]);
            while (a != b) {
                pu.push_back(a = parent[a]);
                pw.push_back(b = parent[b]);
            }
            pw.pop_back();
            std::vector<Vertex> cyc;
            for (std::size_t i : pu)
                cyc.push_back(x.vertices()[i]);
            for (auto it = pw.rbegin(); it != pw.rend(); ++it)
                cyc.push_back(x.vertices()[*it]);
            // canonical rotation and direction for deduplication
            auto mn = std::min_element(cyc.begin(), cyc.end());
            std::rotate(cyc.begin(), mn, cyc.end());
            if (cyc.size() > 2 && cyc.back() < cyc[1])
                std::reverse(cyc.begin() + 1, cyc.end());
            if (seen.insert(cyc).second)
                cands.push_back(std::move(cyc));
        }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    SystoleResult out;
    detail::BoundaryTest test(x, k);
    auto trivial = test.trivial(cands);
    out.candidates_tested = cands.size();
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (!trivial[i]) {
            out.length = cands[i].size();
            out.cycle = cands[i];
            break;
        }
    return out;
}

/// Simple edge cycles of length at most max_len, each once (smallest vertex first, then the
/// smaller of the two directions).
inline std::vector<std::vector<Vertex>> simple_cycles(const TwoComplex& x, std::size_t max_len)
{
    auto adj = detail::vertex_adjacency(x);
    std::vector<std::vector<Vertex>> out;
    std::vector<std::size_t> path;
    std::vector<char> on(x.num_vertices(), 0);
    auto dfs = [&](auto&& self, std::size_t start, std::size_t u) -> void {
        for (std::size_t w : adj[u]) {
            if (w == start && path.size() >= 3 && path[1] < path.back()) {
                std::vector<Vertex> c;
                for (std::size_t i : path)
                    c.push_back(x.vertices()[i]);
                out.push_back(std::move(c));
            }
            if (w <= start || on[w] || path.size() >= max_len)
                continue;
            on[w] = 1;
            path.push_back(w);
            self(self, start, w);
            path.pop_back();
            on[w] = 0;
        }
    };
    for (std::size_t s = 0; s < x.num_vertices(); ++s) {
        path.assign(1, s);
        on[s] = 1;
        dfs(dfs, s, s);
        on[s] = 0;
    }
    return out;
}

/// Bounded exhaustive systole over all simple cycles up to max_len (reference path).
inline SystoleResult systole_exhaustive(const TwoComplex& x, const Coefficients& k, std::size_t max_len)
{
    auto cycles = simple_cycles(x, max_len);
    std::stable_sort(cycles.begin(), cycles.end(),
                     [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    SystoleResult out;
    detail::BoundaryTest test(x, k);
    auto trivial = test.trivial(cycles);
    out.candidates_tested = cycles.size();
    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (!trivial[i]) {
            out.length = cycles[i].size();
            out.cycle = cycles[i];
            break;
        }
    return out;
}

constexpr std::size_t kEmbeddingFaceLimit = 30;

namespace detail {

class EmbeddingSearch {
public:
    EmbeddingSearch(const TwoComplex& p, const TwoComplex& x) : p_(p), x_(x)
    {
        if (!p.is_pure() || p.num_faces() == 0)
            throw ComplexError("embedding pattern must be pure with at least one face");
        if (path_components(p) != 1)
            throw ComplexError("embedding pattern must be connected");
        if (p.num_faces() > kEmbeddingFaceLimit)
            throw ComplexError("embedding pattern exceeds " + std::to_string(kEmbeddingFaceLimit) + " faces");
        order_faces();
        x_faces_at_vertex_ = faces_at_vertices(x);
        x_faces_at_edge_ = faces_at_edges(x);
        auto pdeg = faces_at_vertices(p);
        p_face_degree_.resize(p.num_vertices());
        for (std::size_t i = 0; i < p.num_vertices(); ++i)
            p_face_degree_[i] = pdeg[i].size();
        image_.assign(p.num_vertices(), kUnmapped);
        used_.assign(x.num_vertices(), 0);
    }

    std::uint64_t count(std::uint64_t stop_after = UINT64_MAX)
    {
        stop_after_ = stop_after;
        found_ = 0;
        step(0);
        return found_;
    }

private:
    static constexpr std::size_t kUnmapped = SIZE_MAX;

    void order_faces()
    {
        // breadth-first by shared vertices so each face after the first touches mapped vertices
        const auto& pf = p_.faces();
        std::vector<char> placed(pf.size(), 0), vseen(p_.num_vertices(), 0);
        for (std::size_t round = 0; round < pf.size(); ++round) {
            std::size_t best = SIZE_MAX;
            int best_score = -1;
            for (std::size_t i = 0; i < pf.size(); ++i) {
                if (placed[i])
                    continue;
                int score = 0;
                for (Vertex v : pf[i].vertices())
                    score += vseen[p_.vertex_index(v)];
                if (score > best_score) {
                    best_score = score;
                    best = i;
                }
            }
            placed[best] = 1;
            for (Vertex v : pf[best].vertices())
                vseen[p_.vertex_index(v)] = 1;
            order_.push_back(best);
        }
    }

    void step(std::size_t depth)
    {
        if (found_ >= stop_after_)
            return;
        if (depth == order_.size()) {
            ++found_;
            return;
        }
        const Face& pf = p_.faces()[order_[depth]];
        std::array<std::size_t, 3> pv{p_.vertex_index(pf.a), p_.vertex_index(pf.b), p_.vertex_index(pf.c)};
        // candidate faces of X: through a mapped edge if possible, else a mapped vertex, else all
        const std::vector<std::size_t>* cands = nullptr;
        std::vector<std::size_t> all;
        for (int i = 0; i < 3 && !cands; ++i)
            for (int j = i + 1; j < 3 && !cands; ++j)
                if (image_[pv[i]] != kUnmapped && image_[pv[j]] != kUnmapped) {
                    Edge e = Edge::of(x_.vertices()[image_[pv[i]]], x_.vertices()[image_[pv[j]]]);
                    if (!x_.has_edge(e))
                        return;
                    cands = &x_faces_at_edge_[x_.edge_index(e)];
                }
        for (int i = 0; i < 3 && !cands; ++i)
            if (image_[pv[i]] != kUnmapped)
                cands = &x_faces_at_vertex_[image_[pv[i]]];
        if (!cands) {
            all.resize(x_.num_faces());
            std::iota(all.begin(), all.end(), std::size_t{0});
            cands = &all;
        }
        static constexpr std::array<std::array<int, 3>, 6> perms{
            {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
        for (std::size_t fi : *cands) {
            const Face& xf = x_.faces()[fi];
            std::array<std::size_t, 3> xv{x_.vertex_index(xf.a), x_.vertex_index(xf.b), x_.vertex_index(xf.c)};
            for (const auto& perm : perms) {
                bool ok = true;
                for (int k = 0; k < 3 && ok; ++k) {
                    std::size_t want = xv[perm[k]];
                    if (image_[pv[k]] != kUnmapped)
                        ok = image_[pv[k]] == want;
                    else
                        ok = !used_[want] && x_faces_at_vertex_[want].size() >= p_face_degree_[pv[k]];
                }
                if (!ok)
                    continue;
                // a vertex of P appearing twice in this face is impossible, so assignments are distinct
                std::array<bool, 3> fresh{};
                for (int k = 0; k < 3; ++k)
                    if (image_[pv[k]] == kUnmapped) {
                        image_[pv[k]] = xv[perm[k]];
                        used_[xv[perm[k]]] = 1;
                        fresh[k] = true;
                    }
                step(depth + 1);
                for (int k = 0; k < 3; ++k)
                    if (fresh[k]) {
                        used_[image_[pv[k]]] = 0;
                        image_[pv[k]] = kUnmapped;
                    }
                if (found_ >= stop_after_)
                    return;
            }
        }
    }

    const TwoComplex& p_;
    const TwoComplex& x_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> x_faces_at_vertex_, x_faces_at_edge_;
    std::vector<std::size_t> p_face_degree_;
    std::vector<std::size_t> image_;
    std::vector<char> used_;
    std::uint64_t found_ = 0, stop_after_ = UINT64_MAX;
};

} // namespace detail

/// Injective vertex maps P -> X sending every face of P onto a face of X.
inline std::uint64_t count_embeddings(const TwoComplex& p, const TwoComplex& x)
{
    return detail::EmbeddingSearch(p, x).count();
}

inline bool contains_copy(const TwoComplex& p, const TwoComplex& x)
{
    return detail::EmbeddingSearch(p, x).count(1) > 0;
}

inline std::uint64_t automorphism_count(const TwoComplex& p) { return count_embeddings(p, p); }

/// Embeddings divided by |Aut(P)|.
inline std::uint64_t count_subcomplex_copies(const TwoComplex& p, const TwoComplex& x)
{
    std::uint64_t aut = automorphism_count(p);
    std::uint64_t emb = count_embeddings(p, x);
    if (emb % aut != 0)
        throw std::logic_error("embedding count not divisible by the automorphism count");
    return emb / aut;
}

} // namespace lmc
