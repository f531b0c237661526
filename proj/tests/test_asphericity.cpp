#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lmc/asphericity.hpp"
#include "lmc/fixtures.hpp"
#include "lmc/io.hpp"
#include "oracles.hpp"

using namespace lmc;

namespace {

AsphericityBudget eps(std::int64_t num, std::int64_t den)
{
    return AsphericityBudget::from_epsilon(Rational(num, den));
}

/// Every closed, strongly connected face subset with at most `budget` faces that recognizes as a
/// witness kind, by plain subset enumeration.
std::vector<std::vector<Face>> witnesses_oracle(const TwoComplex& x, int budget)
{
    const std::size_t F = x.num_faces();
    std::vector<std::uint32_t> edge_mask(x.num_edges(), 0);
    for (std::size_t i = 0; i < F; ++i)
        for (const Edge& e : x.faces()[i].edges())
            edge_mask[x.edge_index(e)] |= 1u << i;
    std::vector<std::vector<Face>> out;
    auto check = [&](std::uint32_t s) {
        for (std::uint32_t m : edge_mask)
            if (__builtin_popcount(s & m) == 1)
                return;
        std::vector<Face> fs;
        for (std::size_t i = 0; i < F; ++i)
            if (s >> i & 1u)
                fs.push_back(x.faces()[i]);
        TwoComplex c = TwoComplex::build(fs);
        if (!is_strongly_connected(c))
            return;
        auto t = recognize_space(c).tag;
        if (t == SpaceTag::Sphere || t == SpaceTag::ProjectivePlane || t == SpaceTag::Z2 || t == SpaceTag::Z3)
            out.push_back(fs);
    };
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t s, int size) -> void {
        if (i == F) {
            if (size > 0)
                check(s);
            return;
        }
        self(self, i + 1, s, size);
        if (size < budget)
            self(self, i + 1, s | 1u << i, size + 1);
    };
    rec(rec, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Face>> faces_of(const std::vector<Witness>& ws)
{
    std::vector<std::vector<Face>> out;
    for (const auto& w : ws)
        out.push_back(w.faces);
    return out;
}

TwoComplex octahedron()
{
    return TwoComplex::from_triples({{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}});
}

} // namespace

TEST(Budget, FromEpsilon)
{
    EXPECT_EQ(eps(1, 10).face_budget, 20);
    EXPECT_EQ(eps(1, 5).face_budget, 10);
    EXPECT_EQ(eps(3, 10).face_budget, 7);
    EXPECT_EQ(eps(1, 2).face_budget, 4);
    EXPECT_THROW(eps(2, 3), ComplexError);
    EXPECT_THROW(eps(0, 1), ComplexError);
    EXPECT_THROW(eps(-1, 4), ComplexError);
}

TEST(Witnesses, Examples)
{
    auto dangling = merge(tetra_sphere(), TwoComplex::from_triples({{0, 1, 9}}));
    auto ws = find_witnesses(dangling, eps(1, 10));
    ASSERT_EQ(ws.size(), 1u);
    EXPECT_EQ(ws[0].kind, SpaceTag::Sphere);
    EXPECT_EQ(ws[0].subcomplex, tetra_sphere());

    auto p = find_witnesses(rp2_six(), eps(1, 5));
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0].kind, SpaceTag::ProjectivePlane);
    EXPECT_EQ(p[0].faces, rp2_six().faces());
    EXPECT_TRUE(find_witnesses(rp2_six(), eps(1, 4)).empty());
}

TEST(Witnesses, FixtureKinds)
{
    for (int k : {2, 4}) {
        auto z2 = find_witnesses(z2_sphere(k, 5), eps(1, 10));
        ASSERT_EQ(z2.size(), 1u);
        EXPECT_EQ(z2[0].kind, SpaceTag::Z2);
        auto z3 = find_witnesses(z3_sphere(k, 5), eps(1, 10));
        ASSERT_EQ(z3.size(), 1u);
        EXPECT_EQ(z3[0].kind, SpaceTag::Z3);
    }
    // a projective plane with a disc shows up through its projective plane
    auto z4 = find_witnesses(z4_complex(), eps(1, 10));
    ASSERT_EQ(z4.size(), 1u);
    EXPECT_EQ(z4[0].kind, SpaceTag::ProjectivePlane);
    EXPECT_EQ(z4[0].faces, rp2_six().faces());
    EXPECT_TRUE(find_witnesses(torus7(), eps(1, 10)).empty());
    EXPECT_TRUE(find_witnesses(moore_surface(3), eps(1, 50)).empty());
}

TEST(Witnesses, FirstModeAndOrdering)
{
    auto a = tetra_sphere();
    auto b = relabel(octahedron(), [](Vertex v) { return v + 10; });
    auto both = merge(a, b);
    auto all = find_witnesses(both, eps(1, 4));
    ASSERT_EQ(all.size(), 2u);
    EXPECT_LT(all[0].faces, all[1].faces);
    auto first = find_witnesses(both, eps(1, 4), WitnessMode::First);
    ASSERT_EQ(first.size(), 1u);
    EXPECT_EQ(first[0].faces, all[0].faces);
    // octahedron has 8 faces: out of reach at budget 7
    EXPECT_EQ(find_witnesses(both, AsphericityBudget::from_epsilon(Rational(2, 7))).size(), 1u);
}

TEST(Witnesses, MatchExhaustiveEnumeration)
{
    std::mt19937_64 rng(51);
    int with_witness = 0;
    for (int t = 0; t < 200; ++t) {
        TwoComplex x = oracle::random_faces(rng, 6 + t % 2, 6 + t % 11);
        if (t % 4 == 0)
            x = merge(x, relabel(stacked_sphere(t % 3, t), [](Vertex v) { return v + 3; }));
        if (x.num_faces() > 20)
            continue;
        auto expected = witnesses_oracle(x, 8);
        auto got = faces_of(find_witnesses(x, eps(1, 4)));
        EXPECT_EQ(got, expected) << to_2c(x);
        with_witness += !expected.empty();
    }
    EXPECT_GT(with_witness, 30);
}

TEST(Witnesses, NoneWhenMod2SecondHomologyVanishes)
{
    std::mt19937_64 rng(52);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        auto x = oracle::random_complex(rng, 9, 0.15 + 0.01 * (t % 10));
        if (betti(x, Coefficients::f2()).b2 != 0)
            continue;
        ++checked;
        EXPECT_TRUE(find_witnesses(x, eps(1, 10)).empty());
    }
    EXPECT_GT(checked, 50);
}

TEST(CheckAspherical, Verdicts)
{
    auto s = check_aspherical(tetra_sphere(), eps(1, 10));
    EXPECT_EQ(s.verdict, AsphericityVerdict::NotAspherical);
    ASSERT_TRUE(s.witness);
    EXPECT_EQ(s.witness->kind, SpaceTag::Sphere);

    auto disc = TwoComplex::from_triples({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}});
    auto d = check_aspherical(disc, eps(1, 10));
    EXPECT_EQ(d.verdict, AsphericityVerdict::CriterionAspherical);
    EXPECT_FALSE(d.witness);
    EXPECT_NE(d.label.find("not a proof"), std::string::npos);

    // a known limitation: the Moore surface is not aspherical but has no small witness
    EXPECT_EQ(check_aspherical(moore_surface(3), eps(1, 10)).verdict, AsphericityVerdict::CriterionAspherical);
}

TEST(Aspherify, SphereAndProjectivePlaneWithDisc)
{
    auto s = aspherify(tetra_sphere(), eps(1, 10));
    ASSERT_EQ(s.log.size(), 1u);
    EXPECT_EQ(s.log[0].deleted_face, (Face{0, 1, 2}));
    EXPECT_EQ(s.log[0].b2_after, 0);
    EXPECT_EQ(b2(s.complex), 0);
    EXPECT_EQ(s.complex.num_edges(), 6u);
    EXPECT_TRUE(s.witness_free);

    auto z = aspherify(z4_complex(), eps(1, 10));
    ASSERT_EQ(z.log.size(), 1u);
    EXPECT_EQ(z.log[0].witness_kind, SpaceTag::Z4);
    EXPECT_TRUE(rp2_six().has_face(z.log[0].deleted_face));
    EXPECT_EQ(b2(z.complex), 0);
    EXPECT_TRUE(integral_h1(z.complex).divisors.empty());
    EXPECT_TRUE(z.witness_free);
    EXPECT_TRUE(find_witnesses(z.complex, eps(1, 10)).empty());

    // a lone projective plane has no small cycle around it and stays
    auto p = aspherify(rp2_six(), eps(1, 10));
    EXPECT_TRUE(p.log.empty());
    EXPECT_FALSE(p.witness_free);
    ASSERT_EQ(p.remaining.size(), 1u);
}

TEST(Aspherify, RandomComplexesReachFixpoint)
{
    std::mt19937_64 rng(53);
    for (int t = 0; t < 25; ++t) {
        auto y = oracle::random_complex(rng, 11, 0.2 + 0.01 * (t % 8));
        auto budget = eps(1, 6);
        auto r = aspherify(y, budget);
        EXPECT_EQ(r.complex.num_vertices(), y.num_vertices());
        EXPECT_EQ(r.complex.num_edges(), y.num_edges());
        EXPECT_EQ(b2(r.complex), r.b2_before - static_cast<long>(r.log.size()));
        for (std::size_t i = 0; i < r.log.size(); ++i) {
            const auto& rec = r.log[i];
            EXPECT_EQ(rec.step, i + 1);
            EXPECT_EQ(rec.b2_after, r.b2_before - static_cast<long>(i + 1));
            EXPECT_TRUE(std::binary_search(rec.witness_faces.begin(), rec.witness_faces.end(), rec.deleted_face));
            EXPECT_LE(rec.witness_faces.size(), static_cast<std::size_t>(budget.face_budget));
        }
        // fixpoint: only projective planes outside any small cycle survive
        auto left = find_witnesses(r.complex, budget);
        EXPECT_EQ(left.size(), r.remaining.size());
        for (const auto& w : left)
            EXPECT_EQ(w.kind, SpaceTag::ProjectivePlane);
        EXPECT_EQ(r.witness_free, left.empty());
    }
}

TEST(Aspherify, SeededRandomRule)
{
    std::mt19937_64 rng(54);
    auto y = oracle::random_complex(rng, 12, 0.25);
    auto a = aspherify(y, eps(1, 6), 9, DeletionRule::SeededRandom);
    auto b = aspherify(y, eps(1, 6), 9, DeletionRule::SeededRandom);
    ASSERT_EQ(a.log.size(), b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i)
        EXPECT_EQ(a.log[i].deleted_face, b.log[i].deleted_face);
    EXPECT_EQ(b2(a.complex), a.b2_before - static_cast<long>(a.log.size()));
    EXPECT_TRUE(find_witnesses(a.complex, eps(1, 6)).size() == a.remaining.size());
}

TEST(Aspherify, LogCsv)
{
    auto r = aspherify(tetra_sphere(), eps(1, 10));
    std::ostringstream os;
    write_deletion_log_csv(os, r.log);
    EXPECT_EQ(os.str(), "step,witness_kind,witness_faces,deleted_face,b2_after\n"
                        "1,Sphere,0-1-2;0-1-3;0-2-3;1-2-3,0-1-2,0\n");
}

TEST(CdReport, Cases)
{
    auto disc = TwoComplex::from_triples({{0, 1, 2}, {0, 2, 3}});
    auto d = cd_report(disc, eps(1, 10));
    EXPECT_TRUE(d.collapses_to_graph);
    ASSERT_FALSE(d.lines.empty());
    EXPECT_NE(d.lines[0].find("cd <= 1"), std::string::npos);

    auto p = cd_report(rp2_six(), eps(1, 5));
    EXPECT_TRUE(p.rp2_witness);
    EXPECT_NE(p.lines[0].find("RP2 witness present"), std::string::npos);

    auto s = cd_report(merge(tetra_sphere(), relabel(tetra_sphere(), [](Vertex v) { return v + 4; })), eps(1, 10));
    EXPECT_FALSE(s.rp2_witness);
    EXPECT_TRUE(s.aspherified);
    EXPECT_EQ(s.b2_after, 0);
}
