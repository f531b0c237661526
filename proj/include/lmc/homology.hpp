#pragma once

// Boundary matrices, Betti numbers over Q and prime fields, and the torsion of H1(X; Z).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "complex.hpp"
#include "linalg.hpp"

namespace lmc {

/// Coefficient ring for homology. Betti numbers require a field (Q or Z/p with p prime);
/// membership queries (systoles) also accept Z and Z/m for composite m.
struct Coefficients {
    enum class Kind { Integers, Rationals, Modular };
    Kind kind = Kind::Rationals;
    std::uint64_t modulus = 0;

    static Coefficients integers() { return {Kind::Integers, 0}; }
    static Coefficients rationals() { return {Kind::Rationals, 0}; }
    static Coefficients mod(std::uint64_t m)
    {
        if (m < 2)
            throw std::invalid_argument("modulus must be at least 2");
        return {Kind::Modular, m};
    }
    static Coefficients f2() { return mod(2); }

    bool is_field() const { return kind == Kind::Rationals || (kind == Kind::Modular && modular::is_prime(modulus)); }

    std::string name() const
    {
        switch (kind) {
        case Kind::Integers: return "Z";
        case Kind::Rationals: return "Q";
        default: return modulus == 2 ? "F2" : "Z/" + std::to_string(modulus);
        }
    }

    /// Encoding used by LatticeReducer::in_image.
    long long reducer_modulus() const
    {
        return kind == Kind::Integers ? 0 : (kind == Kind::Rationals ? -1 : static_cast<long long>(modulus));
    }
};

struct BoundaryMatrices {
    /// d1: one row per edge, columns are vertices; (a,b) maps to b - a.
    SparseMatrix d1;
    /// d2: one row per face, columns are edges; (a<b<c) maps to (b,c) - (a,c) + (a,b).
    SparseMatrix d2;
};

inline SparseMatrix face_boundary_rows(const TwoComplex& x)
{
    SparseMatrix m;
    m.cols = x.num_edges();
    m.rows.reserve(x.num_faces());
    for (const Face& f : x.faces()) {
        SparseMatrix::Row row{{static_cast<std::uint32_t>(x.edge_index(Edge{f.a, f.b})), 1},
                              {static_cast<std::uint32_t>(x.edge_index(Edge{f.a, f.c})), -1},
                              {static_cast<std::uint32_t>(x.edge_index(Edge{f.b, f.c})), 1}};
        std::sort(row.begin(), row.end());
        m.rows.push_back(std::move(row));
    }
    return m;
}

inline BoundaryMatrices boundary_matrices(const TwoComplex& x)
{
    BoundaryMatrices bm;
    bm.d1.cols = x.num_vertices();
    for (const Edge& e : x.edges())
        bm.d1.rows.push_back({{static_cast<std::uint32_t>(x.vertex_index(e.a)), -1},
                              {static_cast<std::uint32_t>(x.vertex_index(e.b)), 1}});
    bm.d2 = face_boundary_rows(x);
    return bm;
}

namespace detail {

inline std::size_t field_rank(const SparseMatrix& m, const Coefficients& k)
{
    if (k.kind == Coefficients::Kind::Modular) {
        if (!modular::is_prime(k.modulus))
            throw std::invalid_argument("Betti numbers need a field; " + k.name() + " is not one");
        return rank_mod_p(m, k.modulus);
    }
    return rank_rational(m);
}

} // namespace detail

/// Rank of the second boundary map. Free-edge collapses are peeled off first: each removes one
/// face whose column has a single nonzero entry in a row nobody else uses, which is one unit of rank.
inline std::size_t rank_d2(const TwoComplex& x, const Coefficients& k = Coefficients::rationals())
{
    auto c = collapse_with_log(x);
    return c.steps.size() + detail::field_rank(face_boundary_rows(c.complex), k);
}

struct Betti {
    long b0 = 0, b1 = 0, b2 = 0;
    bool operator==(const Betti&) const = default;
};

inline Betti betti(const TwoComplex& x, const Coefficients& k = Coefficients::rationals())
{
    Betti b;
    long v = static_cast<long>(x.num_vertices()), e = static_cast<long>(x.num_edges()),
         f = static_cast<long>(x.num_faces());
    b.b0 = static_cast<long>(path_components(x));
    long r1 = v - b.b0;
    long r2 = static_cast<long>(rank_d2(x, k));
    b.b1 = e - r1 - r2;
    b.b2 = f - r2;
    return b;
}

inline long b2(const TwoComplex& x, const Coefficients& k = Coefficients::rationals()) { return betti(x, k).b2; }

inline long euler(const TwoComplex& x) { return x.euler(); }

/// Result of the guarded integral H1 computation.
struct H1Torsion {
    bool too_large = false;
    std::vector<BigInt> divisors;

    std::vector<long long> as_ints() const
    {
        std::vector<long long> out;
        for (const auto& d : divisors)
            out.push_back(static_cast<long long>(d));
        return out;
    }
};

constexpr std::size_t kSnfFaceLimit = 2000;

/// Torsion coefficients of H1(X; Z) = torsion of coker(d2). Collapses first (a homotopy equivalence).
inline H1Torsion integral_h1(const TwoComplex& x)
{
    H1Torsion out;
    if (x.num_faces() > kSnfFaceLimit) {
        out.too_large = true;
        return out;
    }
    TwoComplex core = collapse(x);
    LatticeReducer red(face_boundary_rows(core).transposed());
    out.divisors = red.torsion();
    return out;
}

struct HomologySummary {
    Betti rational;
    Betti mod2;
    H1Torsion h1_torsion;
};

inline HomologySummary homology_summary(const TwoComplex& x)
{
    return {betti(x), betti(x, Coefficients::f2()), integral_h1(x)};
}

} // namespace lmc
