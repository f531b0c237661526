#include <gtest/gtest.h>

#include "lmc/fixtures.hpp"
#include "lmc/homology.hpp"

using namespace lmc;

namespace {

int count_degree(const TwoComplex& x, int d)
{
    auto deg = edge_degree_vector(x);
    return static_cast<int>(std::count(deg.begin(), deg.end(), d));
}

bool is_surface(const TwoComplex& x)
{
    if (count_degree(x, 2) != static_cast<int>(x.num_edges()))
        return false;
    for (Vertex v : x.vertices())
        if (!link(x, v).is_cycle())
            return false;
    return true;
}

} // namespace

TEST(Fixtures, StackedSphereCounts)
{
    for (int k = 0; k <= 8; ++k) {
        auto s = stacked_sphere(k, 5);
        EXPECT_EQ(s.num_faces(), static_cast<std::size_t>(4 + 2 * k));
        EXPECT_EQ(s.euler(), 2);
        EXPECT_TRUE(is_surface(s));
        EXPECT_EQ(betti(s), (Betti{1, 0, 1}));
    }
    EXPECT_EQ(stacked_sphere(3, 9), stacked_sphere(3, 9));
}

TEST(Fixtures, SixVertexProjectivePlane)
{
    auto p = rp2_six();
    EXPECT_EQ(p.num_vertices(), 6u);
    EXPECT_EQ(p.num_edges(), 15u);
    EXPECT_EQ(p.num_faces(), 10u);
    EXPECT_TRUE(is_surface(p));
}

TEST(Fixtures, SevenVertexTorus)
{
    auto t = torus7();
    EXPECT_EQ(t.num_vertices(), 7u);
    EXPECT_EQ(t.num_edges(), 21u);
    EXPECT_EQ(t.num_faces(), 14u);
    EXPECT_TRUE(is_surface(t));
    EXPECT_EQ(t.euler(), 0);
}

TEST(Fixtures, PinchedSphere)
{
    for (int k : {0, 2, 4, 6}) {
        auto z = z2_sphere(k, 3);
        EXPECT_EQ(count_degree(z, 2), static_cast<int>(z.num_edges()));
        int singular = 0;
        for (Vertex v : z.vertices())
            singular += sing(z, v);
        EXPECT_EQ(singular, 1);
        EXPECT_EQ(strong_components(z).size(), 1u);
        EXPECT_EQ(betti(z), (Betti{1, 1, 1}));
        EXPECT_EQ(betti(cut_open(z).complex), (Betti{1, 0, 1}));
    }
}

TEST(Fixtures, FoldedSphere)
{
    for (int k : {0, 2, 4, 6}) {
        auto z = z3_sphere(k, 3);
        EXPECT_EQ(count_degree(z, 4), 1);
        EXPECT_EQ(count_degree(z, 2) + 1, static_cast<int>(z.num_edges()));
        EXPECT_EQ(betti(z), (Betti{1, 0, 1}));
        EXPECT_EQ(z.euler(), 2);
    }
}

TEST(Fixtures, ProjectivePlaneWithDisc)
{
    auto z = z4_complex();
    EXPECT_EQ(z.num_vertices(), 7u);
    EXPECT_EQ(z.num_edges(), 18u);
    EXPECT_EQ(z.num_faces(), 13u);
    EXPECT_EQ(count_degree(z, 3), 3);
    EXPECT_EQ(count_degree(z, 2), 15);
    EXPECT_EQ(defect(z), -3);
    EXPECT_EQ(z.euler(), 2);
    EXPECT_EQ(betti(z), (Betti{1, 0, 1}));
    EXPECT_TRUE(integral_h1(z).divisors.empty());
}

TEST(Fixtures, MooreSurface)
{
    auto x = moore_surface(3);
    EXPECT_EQ(x.num_faces(), 45u);
    EXPECT_EQ(count_degree(x, 3), 3);
}

TEST(Fixtures, NamesRoundTrip)
{
    for (const char* s : {"tetra", "stacked:3", "rp2six", "z2:4", "z3:2", "z4", "torus7", "moore:3"})
        EXPECT_EQ(FixtureKind::parse(s).name(), s);
    EXPECT_THROW(FixtureKind::parse("klein"), ComplexError);
    EXPECT_THROW(FixtureKind::parse("tetra:2"), ComplexError);
    EXPECT_THROW(FixtureKind::parse("stacked:x"), ComplexError);
}
