#include <gtest/gtest.h>

#include <random>

#include "lmc/complex.hpp"
#include "lmc/fixtures.hpp"
#include "lmc/io.hpp"
#include "oracles.hpp"

using namespace lmc;
using oracle::random_complex;

TEST(Complex, ClosureOfTetrahedronBoundary)
{
    auto x = tetra_sphere();
    EXPECT_EQ(x.num_vertices(), 4u);
    EXPECT_EQ(x.num_edges(), 6u);
    EXPECT_EQ(x.num_faces(), 4u);
    EXPECT_EQ(x.euler(), 2);
    EXPECT_TRUE(x.is_pure());
    EXPECT_TRUE(is_closed(x));
    for (const auto& [e, d] : edge_degrees(x))
        EXPECT_EQ(d, 2) << to_string(e);
}

TEST(Complex, DegenerateFaceIsRejectedWithTriple)
{
    try {
        TwoComplex::from_triples({{1, 1, 2}});
        FAIL();
    } catch (const ComplexError& e) {
        EXPECT_NE(std::string(e.what()).find("1 1 2"), std::string::npos);
    }
}

TEST(Complex, DuplicatesCollapse)
{
    auto x = TwoComplex::from_triples({{0, 1, 2}, {2, 1, 0}, {1, 0, 2}});
    EXPECT_EQ(x.num_faces(), 1u);
}

TEST(Complex, LinkOfSphereVertexIsCycle)
{
    auto x = tetra_sphere();
    for (Vertex v : x.vertices()) {
        auto l = link(x, v);
        EXPECT_TRUE(l.is_cycle());
        EXPECT_EQ(sing(x, v), 0);
    }
    EXPECT_THROW(link(x, 9), ComplexError);
}

TEST(Complex, BowtieVertexIsSingular)
{
    auto x = TwoComplex::from_triples({{0, 1, 2}, {0, 3, 4}});
    EXPECT_EQ(sing(x, 0), 1);
    EXPECT_EQ(sing(x, 1), 0);
    EXPECT_EQ(strong_components(x).size(), 2u);
    auto cut = cut_open(x);
    EXPECT_EQ(cut.complex.num_vertices(), 6u);
    EXPECT_EQ(path_components(cut.complex), 2u);
}

TEST(Complex, IsolatedVertexHasZeroSing)
{
    auto x = TwoComplex::from_triples({{0, 1, 2}}, {}, {7});
    EXPECT_EQ(sing(x, 7), 0);
    EXPECT_FALSE(x.is_pure());
    EXPECT_THROW(cut_open(x), ComplexError);
}

TEST(Complex, CollapseOfDiscIsPoint)
{
    auto x = TwoComplex::from_triples({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}});
    auto c = collapse_with_log(x);
    EXPECT_EQ(c.complex.num_faces(), 0u);
    EXPECT_EQ(c.steps.size(), 3u);
    EXPECT_EQ(c.steps.front().first, (Face{0, 1, 2}));
    EXPECT_EQ(c.steps.front().second, (Edge{0, 1}));
}

TEST(Complex, ClosedSurfacesDoNotCollapse)
{
    for (const auto& x : {tetra_sphere(), rp2_six(), torus7()})
        EXPECT_EQ(collapse(x), x);
}

TEST(Complex, RemoveFaceKeepsSkeleton)
{
    auto x = tetra_sphere();
    auto y = remove_face(x, Face{0, 1, 2});
    EXPECT_EQ(y.num_faces(), 3u);
    EXPECT_EQ(y.num_edges(), 6u);
    EXPECT_THROW(remove_face(y, Face{0, 1, 2}), ComplexError);
}

TEST(Complex, DefectAndEulerIdentity)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto x = random_complex(rng, 9, 0.2);
        long f = static_cast<long>(x.num_faces()), e = static_cast<long>(x.num_edges());
        // sum of degrees counts each face three times
        EXPECT_EQ(defect(x), 2 * e - 3 * f);
    }
}

TEST(Complex, CutOpenPreservesFaceCountAndClearsSingularities)
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 50; ++t) {
        auto x = random_complex(rng, 10, 0.15);
        auto c = cut_open(x);
        EXPECT_EQ(c.complex.num_faces(), x.num_faces());
        for (Vertex v : c.complex.vertices())
            EXPECT_EQ(sing(c.complex, v), 0);
    }
}

TEST(Io, RoundTrip)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        auto x = random_complex(rng, 8, 0.25);
        auto text = to_2c(x, {"sample"});
        EXPECT_EQ(from_2c(text), x);
        EXPECT_EQ(to_2c(from_2c(text), {"sample"}), text);
    }
}

TEST(Io, BareEdgesAndVertexCount)
{
    auto x = from_2c("# hello\nv 5\ne 3 4\nf 0 1 2\n");
    EXPECT_EQ(x.num_vertices(), 5u);
    EXPECT_EQ(x.num_edges(), 4u);
    EXPECT_EQ(to_2c(x), "v 5\ne 3 4\nf 0 1 2\n");
}

TEST(Io, Errors)
{
    EXPECT_THROW(from_2c("f 0 1\n"), FormatError);
    EXPECT_THROW(from_2c("f 0 1 1\n"), FormatError);
    EXPECT_THROW(from_2c("f 0 1 2 3\n"), FormatError);
    EXPECT_THROW(from_2c("q 1\n"), FormatError);
    EXPECT_THROW(from_2c("e -1 2\n"), FormatError);
}
