#include <gtest/gtest.h>

#include <random>

#include "lmc/cycles.hpp"
#include "lmc/fixtures.hpp"
#include "oracles.hpp"

using namespace lmc;

namespace {

TwoComplex shifted(const TwoComplex& x, Vertex by)
{
    return relabel(x, [by](Vertex v) { return v + by; });
}

/// Every vertex sees an even total of incident edge degrees (handshake in its link).
void expect_link_parity(const TwoComplex& x)
{
    auto deg = edge_degrees(x);
    for (Vertex v : x.vertices()) {
        long total = 0;
        for (const auto& [e, d] : deg)
            if (e.contains(v))
                total += d;
        EXPECT_EQ(total % 2, 0) << "vertex " << v;
    }
    if (is_closed(x)) {
        long threes = 0, others = 0;
        for (const auto& [e, d] : deg) {
            threes += d == 3;
            others += d != 2 && d != 3;
        }
        EXPECT_FALSE(threes == 1 && others == 0);
    }
}

} // namespace

TEST(Recognize, Surfaces)
{
    EXPECT_EQ(recognize_space(tetra_sphere()).tag, SpaceTag::Sphere);
    EXPECT_EQ(recognize_space(stacked_sphere(7, 3)).tag, SpaceTag::Sphere);
    auto p = recognize_space(rp2_six());
    EXPECT_EQ(p.tag, SpaceTag::ProjectivePlane);
    EXPECT_FALSE(p.orientable);
    auto t = recognize_space(torus7());
    EXPECT_EQ(t.tag, SpaceTag::Torus);
    EXPECT_TRUE(t.orientable);
    EXPECT_EQ(t.chi, 0);
}

TEST(Recognize, OtherClosedSurface)
{
    // connected sum of two projective planes: remove a face from each copy and glue the rims
    const TwoComplex p = rp2_six();
    std::vector<Face> faces;
    for (const Face& f : p.faces())
        if (f != Face{0, 1, 2})
            faces.push_back(f);
    for (const Face& f : p.faces())
        if (f != Face{0, 1, 2}) {
            auto m = [](Vertex v) { return v <= 2 ? v : v + 3; };
            faces.push_back(Face::of(m(f.a), m(f.b), m(f.c)));
        }
    auto k = recognize_space(TwoComplex::build(faces));
    EXPECT_EQ(k.tag, SpaceTag::OtherClosedSurface);
    EXPECT_FALSE(k.orientable);
    EXPECT_EQ(k.chi, 0);
}

TEST(Recognize, QuotientFixtures)
{
    for (int k : {0, 2, 4, 6})
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            auto z2 = z2_sphere(k, seed);
            EXPECT_EQ(recognize_space(z2).tag, SpaceTag::Z2) << k;
            EXPECT_EQ(recognize_space(cut_open(z2).complex).tag, SpaceTag::Sphere);
            EXPECT_EQ(recognize_space(z3_sphere(k, seed)).tag, SpaceTag::Z3) << k;
        }
    auto z4 = recognize_space(z4_complex());
    ASSERT_EQ(z4.tag, SpaceTag::Z4);
    EXPECT_EQ(z4.disc_faces.size(), 3u);
    EXPECT_EQ(z4.projective_faces, rp2_six().faces());
    EXPECT_EQ(z4.triangle.size(), 3u);
}

TEST(Recognize, Rejections)
{
    EXPECT_THROW(recognize_space(TwoComplex::from_triples({{0, 1, 2}})), ComplexError);
    EXPECT_THROW(recognize_space(merge(tetra_sphere(), shifted(tetra_sphere(), 10))), ComplexError);
    EXPECT_THROW(recognize_space(TwoComplex::from_triples({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, {{4, 5}})),
                 ComplexError);
    // two spheres sharing an edge: one degree-4 edge whose end links are not figure-eights
    auto a = tetra_sphere();
    auto b = relabel(tetra_sphere(), [](Vertex v) { return v < 2 ? v : v + 4; });
    EXPECT_EQ(recognize_space(merge(a, b)).tag, SpaceTag::NotRecognized);
    // wedge of two spheres at a point: pinch whose cut is disconnected
    EXPECT_EQ(recognize_space(merge(a, relabel(a, [](Vertex v) { return v == 0 ? 0 : v + 10; }))).tag,
              SpaceTag::NotRecognized);
}

TEST(MinimalCycle, Examples)
{
    auto s = find_minimal_cycle(tetra_sphere());
    ASSERT_TRUE(s);
    EXPECT_EQ(s->subcomplex, tetra_sphere());
    EXPECT_EQ(classify_minimal_cycle(*s)->tag, SpaceTag::Sphere);
    EXPECT_EQ(deletable_face(*s), (Face{0, 1, 2}));

    auto flap = TwoComplex::from_triples({{10, 11, 12}, {10, 11, 13}});
    auto both = merge(tetra_sphere(), flap);
    auto c = find_minimal_cycle(both);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->subcomplex, tetra_sphere());
    EXPECT_FALSE(find_minimal_cycle(rp2_six()));
    EXPECT_FALSE(find_minimal_cycle(flap));
}

TEST(MinimalCycle, ProjectivePlaneWithDisc)
{
    auto c = find_minimal_cycle(z4_complex());
    ASSERT_TRUE(c);
    EXPECT_EQ(c->subcomplex, z4_complex());
    auto s = classify_minimal_cycle(*c);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->tag, SpaceTag::Z4);
    Face f = deletable_face(*c);
    EXPECT_TRUE(rp2_six().has_face(f));
    auto rest = remove_face(c->subcomplex, f);
    EXPECT_EQ(b2(rest), 0);
    // the complement collapses to a point: fundamental group and H1 unchanged (trivial)
    EXPECT_TRUE(integral_h1(rest).divisors.empty());
    EXPECT_EQ(betti(rest), betti(remove_face(c->subcomplex, f), Coefficients::f2()));
}

TEST(MinimalCycle, FixturesAndDeletion)
{
    std::vector<TwoComplex> xs{tetra_sphere(), z4_complex()};
    for (int k : {2, 4, 6}) {
        xs.push_back(z2_sphere(k, 7));
        xs.push_back(z3_sphere(k, 7));
    }
    for (const auto& x : xs) {
        auto c = find_minimal_cycle(x);
        ASSERT_TRUE(c);
        EXPECT_EQ(c->subcomplex, x);
        auto s = classify_minimal_cycle(*c);
        ASSERT_TRUE(s);
        EXPECT_EQ(s->tag, recognize_space(x).tag);
        EXPECT_EQ(b2(remove_face(x, deletable_face(*c))), b2(x) - 1);
    }
}

TEST(MinimalCycle, RandomComplexesClassify)
{
    std::mt19937_64 rng(41);
    int classified = 0, found = 0;
    for (int t = 0; t < 120; ++t) {
        auto x = oracle::random_complex(rng, 12, 0.09 + 0.002 * (t % 20));
        auto c = find_minimal_cycle(x);
        expect_link_parity(x.num_faces() ? pure_part(collapse(x)) : x);
        if (!c)
            continue;
        ++found;
        EXPECT_TRUE(is_minimal_cycle(c->subcomplex));
        EXPECT_TRUE(x.contains(c->subcomplex));
        expect_link_parity(c->subcomplex);
        auto s = classify_minimal_cycle(*c);
        if (!s)
            continue;
        ++classified;
        EXPECT_EQ(b2(remove_face(x, deletable_face(*c))), b2(x) - 1);
    }
    EXPECT_GT(found, 10);
    EXPECT_GT(classified, 0);
}

TEST(MinimalCycle, FaceDeletionOrderIsDeterministic)
{
    std::mt19937_64 rng(42);
    auto x = oracle::random_complex(rng, 10, 0.3);
    auto a = find_minimal_cycle(x), b = find_minimal_cycle(x);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->subcomplex, b->subcomplex);
}

TEST(Wedge, ProjectivePlanes)
{
    auto p = rp2_six();
    auto q = relabel(p, [](Vertex v) { return v == 0 ? 0 : v + 10; });
    auto w = wedge_decomposition(merge(p, q));
    ASSERT_TRUE(w.ok);
    EXPECT_EQ(w.components.size(), 2u);
    EXPECT_EQ(w.wedge_points[1], std::optional<Vertex>(0));
    EXPECT_TRUE(is_projective_wedge(merge(p, q)));
    auto third = relabel(p, [](Vertex v) { return v == 0 ? 13 : v + 20; });
    EXPECT_TRUE(is_projective_wedge(merge(merge(p, q), third)));
    EXPECT_FALSE(is_projective_wedge(merge(p, relabel(tetra_sphere(), [](Vertex v) { return v == 0 ? 0 : v + 10; }))));
}

TEST(Wedge, TrivialAndFailure)
{
    auto two = TwoComplex::from_triples({{0, 1, 2}, {0, 1, 3}});
    auto w = wedge_decomposition(two);
    EXPECT_TRUE(w.ok);
    EXPECT_EQ(w.components.size(), 1u);
    // a second sphere (suspension of 12-13-14 with poles 0 and 1) meeting the first in two vertices
    std::vector<Face> faces = tetra_sphere().faces();
    faces.push_back(Face{0, 12, 13});
    faces.push_back(Face{1, 12, 14});
    faces.push_back(Face{0, 12, 14});
    faces.push_back(Face{0, 13, 14});
    faces.push_back(Face{1, 12, 13});
    faces.push_back(Face{1, 13, 14});
    auto x = TwoComplex::build(faces);
    auto bad = wedge_decomposition(x);
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(betti(x).b1, 1);
}
