#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "lmc/fixtures.hpp"
#include "lmc/random_model.hpp"
#include "oracles.hpp"

using namespace lmc;

namespace {

TwoComplex single_face() { return TwoComplex::build(std::vector<Face>{Face{0, 1, 2}}); }

struct ThreadsEnv {
    explicit ThreadsEnv(const char* v) { setenv("LMC_THREADS", v, 1); }
    ~ThreadsEnv() { unsetenv("LMC_THREADS"); }
};

std::uint64_t choose(std::uint64_t n, std::uint64_t k)
{
    // Pascal's triangle, independent of the library's multiplicative formula
    std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (std::uint64_t i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (std::uint64_t j = 1; j <= i; ++j)
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return k > n ? 0 : c[n][k];
}

} // namespace

TEST(Probability, ExactExpressions)
{
    auto p = make_params(40, "4*n^-1", 7);
    ASSERT_TRUE(p.exact);
    EXPECT_EQ(*p.exact, ExactRational(1, 10));
    EXPECT_DOUBLE_EQ(p.p, 0.1);
    EXPECT_EQ(*make_params(30, "6/30", 0).exact, ExactRational(1, 5));
    EXPECT_EQ(*make_params(10, "0.25", 0).exact, ExactRational(1, 4));
    EXPECT_EQ(*make_params(10, "2.5e-1", 0).exact, ExactRational(1, 4));
    EXPECT_EQ(*make_params(60, "0.2/n", 0).exact, ExactRational(1, 300));
    EXPECT_EQ(*make_params(10, "(n-8)^-2", 0).exact, ExactRational(1, 4));
    EXPECT_EQ(*make_params(10, "1 - 3/4", 0).exact, ExactRational(1, 4));
    EXPECT_EQ(*make_params(10, "0.08", 0).exact, ExactRational(2, 25));
    EXPECT_EQ(*make_params(10, "000.5", 0).exact, ExactRational(1, 2));
    EXPECT_EQ(*make_params(10, "0", 0).exact, ExactRational(0));
    EXPECT_EQ(*make_params(10, "0.0", 0).exact, ExactRational(0));
}

TEST(Probability, FloatingExpressions)
{
    auto p = make_params(40, "n^-0.8", 0);
    EXPECT_FALSE(p.exact);
    EXPECT_NEAR(p.p, std::pow(40.0, -0.8), 1e-15);
    auto q = make_params(40, "n^(-3/5)", 0);
    EXPECT_FALSE(q.exact);
    EXPECT_NEAR(q.p, std::pow(40.0, -0.6), 1e-15);
    EXPECT_EQ(make_params(40, "n^(-3/5)", 0).expression, "n^(-3/5)");
}

TEST(Probability, Rejections)
{
    EXPECT_THROW(make_params(40, "2", 0), ComplexError);
    EXPECT_THROW(make_params(40, "-0.1", 0), ComplexError);
    EXPECT_THROW(make_params(40, "n^0.1", 0), ComplexError);
    EXPECT_THROW(make_params(40, "1/0", 0), ComplexError);
    EXPECT_THROW(make_params(40, "0^-1", 0), ComplexError);
    EXPECT_THROW(make_params(40, "4*", 0), ComplexError);
    EXPECT_THROW(make_params(40, "(0.1", 0), ComplexError);
    EXPECT_THROW(make_params(40, "x", 0), ComplexError);
    EXPECT_THROW(make_params(40, "1..2", 0), ComplexError);
    EXPECT_THROW(make_params(3, "0.1", 0), ComplexError);
    EXPECT_THROW(make_params(10, 1.5, 0), ComplexError);
    EXPECT_THROW(make_params(10, std::nan(""), 0), ComplexError);
    try {
        make_params(40, "2", 0);
    } catch (const ComplexError& e) {
        EXPECT_NE(std::string(e.what()).find("probability out of range"), std::string::npos);
    }
}

TEST(Sampling, Extremes)
{
    auto empty = sample_complex(make_params(9, 0.0, 3));
    EXPECT_EQ(empty.num_vertices(), 9u);
    EXPECT_EQ(empty.num_edges(), 36u);
    EXPECT_EQ(empty.num_faces(), 0u);
    auto full = sample_complex(make_params(9, 1.0, 3));
    EXPECT_EQ(full.num_faces(), choose(9, 3));
}

TEST(Sampling, FaceCountMoments)
{
    auto y = sample_complex(make_params(30, "1/2", 42));
    const double mean = 0.5 * static_cast<double>(choose(30, 3)), sd = std::sqrt(4060 * 0.25);
    EXPECT_EQ(mean, 2030);
    EXPECT_LE(std::abs(static_cast<double>(y.num_faces()) - mean), 4 * sd);
}

TEST(Sampling, FaceIndexIsColexRank)
{
    std::vector<Face> colex;
    for (Vertex c = 2; c < 12; ++c)
        for (Vertex b = 1; b < c; ++b)
            for (Vertex a = 0; a < b; ++a)
                colex.push_back(Face{a, b, c});
    for (std::size_t i = 0; i < colex.size(); ++i)
        EXPECT_EQ(face_index(colex[i]), i);
}

TEST(Sampling, UniformsLookUniform)
{
    // chi-square over 16 bins on all faces of K_40
    std::vector<double> bins(16, 0);
    std::size_t total = 0;
    for (Vertex c = 2; c < 40; ++c)
        for (Vertex b = 1; b < c; ++b)
            for (Vertex a = 0; a < b; ++a) {
                double u = face_uniform(5, Face{a, b, c});
                ASSERT_GE(u, 0.0);
                ASSERT_LT(u, 1.0);
                bins[static_cast<std::size_t>(u * 16)] += 1;
                ++total;
            }
    double expect = static_cast<double>(total) / 16, chi = 0;
    for (double b : bins)
        chi += (b - expect) * (b - expect) / expect;
    EXPECT_LT(chi, 45.0); // 15 degrees of freedom, far tail
}

TEST(Sampling, MonotoneCoupling)
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        std::vector<double> ps{0.05, 0.1, 0.3, 0.6, 0.9};
        std::vector<std::set<Face>> sets;
        for (double p : ps) {
            auto y = sample_complex(make_params(14, p, seed));
            sets.emplace_back(y.faces().begin(), y.faces().end());
        }
        for (std::size_t i = 0; i + 1 < sets.size(); ++i)
            EXPECT_TRUE(std::includes(sets[i + 1].begin(), sets[i + 1].end(), sets[i].begin(), sets[i].end()));
    }
}

TEST(Sampling, ReproducibleAcrossThreadCounts)
{
    auto params = make_params(16, "3/16", 11);
    std::string one, three;
    {
        ThreadsEnv env("1");
        EXPECT_EQ(thread_count(), 1u);
        std::ostringstream os;
        write_trials_csv(os, b2_experiment(params, 12).records);
        one = os.str();
    }
    {
        ThreadsEnv env("3");
        EXPECT_EQ(thread_count(), 3u);
        std::ostringstream os;
        write_trials_csv(os, b2_experiment(params, 12).records);
        three = os.str();
    }
    EXPECT_EQ(one, three);
    EXPECT_EQ(sample_complex(params).faces(), sample_complex(params).faces());
    EXPECT_NE(trial_seed(11, 0), trial_seed(11, 1));
    EXPECT_NE(trial_seed(11, 0), trial_seed(12, 0));
}

TEST(Sampling, BadThreadEnvironmentFallsBack)
{
    ThreadsEnv env("zero");
    EXPECT_GE(thread_count(), 1u);
}

TEST(Expectation, Formula)
{
    auto one = expected_embeddings(single_face(), 10, "1/2");
    ASSERT_TRUE(one.exact);
    EXPECT_EQ(*one.exact, ExactRational(360));

    auto tet = expected_embeddings(tetra_sphere(), 20, "1/10");
    ASSERT_TRUE(tet.exact);
    EXPECT_EQ(*tet.exact, ExactRational(choose(20, 4) * 24, 10000));
    EXPECT_EQ(*tet.exact, ExactRational(2907, 250));
    EXPECT_NEAR(tet.value, 11.628, 1e-12);

    auto rp = expected_embeddings(rp2_six(), 40, "n^(-3/5)");
    EXPECT_FALSE(rp.exact);
    double want = static_cast<double>(choose(40, 6)) * 720 * std::pow(std::pow(40.0, -0.6), 10);
    EXPECT_NEAR(rp.value, want, 1e-9 * want);

    EXPECT_EQ(*expected_embeddings(tetra_sphere(), 5, "1").exact, ExactRational(120));
    EXPECT_EQ(expected_embeddings(moore_surface(3), 5, "1").value, 0.0);
}

TEST(Containment, ZeroProbability)
{
    auto s = containment_experiment(single_face(), "face", make_params(12, 0.0, 1), 10);
    EXPECT_EQ(s.frequency, 0.0);
    EXPECT_EQ(s.mean, 0.0);
    ASSERT_EQ(s.records.size(), 10u);
    for (const auto& r : s.records) {
        EXPECT_EQ(r.pattern, "face");
        EXPECT_EQ(*r.embeddings, 0u);
        EXPECT_FALSE(*r.contains);
    }
}

TEST(Containment, MonotoneInProbability)
{
    std::vector<std::string> ps{"1/40", "1/20", "1/10", "1/5", "2/5"};
    std::vector<ContainmentStats> stats;
    for (const auto& p : ps)
        stats.push_back(containment_experiment(tetra_sphere(), "tetra", make_params(14, p, 9), 40));
    for (std::size_t i = 0; i + 1 < stats.size(); ++i) {
        EXPECT_LE(stats[i].frequency, stats[i + 1].frequency);
        for (std::size_t t = 0; t < 40; ++t) {
            EXPECT_LE(*stats[i].records[t].embeddings, *stats[i + 1].records[t].embeddings);
            EXPECT_LE(stats[i].records[t].f2, stats[i + 1].records[t].f2);
        }
    }
    EXPECT_GT(stats.back().frequency, 0.5);
}

TEST(Containment, CountsMatchBruteForce)
{
    auto s = containment_experiment(tetra_sphere(), "tetra", make_params(10, "1/3", 4), 6);
    for (const auto& r : s.records) {
        auto y = sample_complex(make_params(10, "1/3", r.seed));
        // each copy of the tetrahedron boundary is a 4-set with all four faces, counted 24 times
        std::uint64_t copies = 0;
        for (Vertex a = 0; a < 10; ++a)
            for (Vertex b = a + 1; b < 10; ++b)
                for (Vertex c = b + 1; c < 10; ++c)
                    for (Vertex d = c + 1; d < 10; ++d)
                        copies += y.has_face({a, b, c}) && y.has_face({a, b, d}) && y.has_face({a, c, d}) &&
                                  y.has_face({b, c, d});
        EXPECT_EQ(*r.embeddings, 24 * copies);
    }
}

TEST(Containment, MeanCalibration)
{
    auto params = make_params(12, "1/4", 21);
    const std::size_t trials = 200;
    auto s = containment_experiment(single_face(), "face", params, trials);
    double expect = expected_embeddings(single_face(), params).value;
    EXPECT_EQ(expect, 330.0);
    EXPECT_LE(std::abs(s.mean - expect), 4 * std::sqrt(s.variance / trials));

    auto t = containment_experiment(tetra_sphere(), "tetra", make_params(10, "1/2", 22), trials);
    double et = expected_embeddings(tetra_sphere(), make_params(10, "1/2", 0)).value;
    EXPECT_EQ(et, 315.0);
    EXPECT_LE(std::abs(t.mean - et), 4 * std::sqrt(t.variance / trials));
}

TEST(B2, Sandwich)
{
    EXPECT_TRUE(b2_sandwich(8, 21, 0));
    EXPECT_FALSE(b2_sandwich(8, 22, 0));
    EXPECT_FALSE(b2_sandwich(8, 3, 4));
    auto s = b2_experiment(make_params(14, "3/14", 5), 20);
    EXPECT_EQ(s.sandwich_violations, 0u);
    for (const auto& r : s.records) {
        auto y = sample_complex(make_params(14, "3/14", r.seed));
        EXPECT_EQ(*r.b2, static_cast<long>(y.num_faces()) - oracle::rank_d2_dense(y));
    }
}

TEST(B2, Extremes)
{
    for (const auto& r : b2_experiment(make_params(10, 0.0, 1), 5).records)
        EXPECT_EQ(*r.b2, 0);
    auto full = b2_experiment(make_params(8, 1.0, 1), 2);
    auto y = sample_complex(make_params(8, 1.0, 1));
    // rank d2 = e - (v - 1) = 21 on the full skeleton, so b2 = C(8,3) - 21 = C(7,3)
    EXPECT_EQ(oracle::rank_d2_dense(y), static_cast<long>(choose(7, 2)));
    EXPECT_EQ(static_cast<long>(y.num_faces()) - oracle::rank_d2_dense(y), 35);
    for (const auto& r : full.records) {
        EXPECT_EQ(*r.b2, static_cast<long>(choose(7, 3)));
        EXPECT_EQ(*r.b2, static_cast<long>(r.f2) - static_cast<long>(choose(7, 2)));
    }
    EXPECT_DOUBLE_EQ(full.mean_b2, 35.0);
}

TEST(Csv, Format)
{
    TrialRecord r;
    r.trial = 3;
    r.seed = 99;
    r.n = 40;
    r.p = std::pow(40.0, -0.8);
    r.f2 = 12;
    r.b2 = 2;
    std::ostringstream os;
    write_trials_csv(os, {r});
    EXPECT_EQ(os.str(), "trial,seed,n,p,f2,b2,pattern,embeddings,contains,deletions,b2_after\n"
                        "3,99,40,0.0522819776296,12,2,,,,,\n");
    EXPECT_EQ(format_probability(0.1), "0.1");
    EXPECT_EQ(format_probability(1.0 / 3), "0.333333333333");

    auto c = containment_experiment(single_face(), "face", make_params(6, "1", 2), 1);
    std::ostringstream oc;
    write_trials_csv(oc, c.records);
    std::string line = oc.str().substr(oc.str().find('\n') + 1);
    EXPECT_EQ(line, std::to_string(0) + "," + std::to_string(trial_seed(2, 0)) + ",6,1,20,,face,120,1,,\n");
}

TEST(AspherifyExperiment, ZeroProbability)
{
    auto s = aspherify_experiment(make_params(10, 0.0, 1), AsphericityBudget::from_epsilon(Rational(1, 10)), 4);
    for (const auto& r : s.records) {
        EXPECT_EQ(*r.deletions, 0u);
        EXPECT_EQ(*r.b2_after, 0);
    }
    EXPECT_EQ(s.witness_free, 4u);
    EXPECT_EQ(s.ledger_violations, 0u);
}

TEST(AspherifyExperiment, LedgerOnSmallRuns)
{
    auto params = make_params(14, "3/14", 8);
    auto s = aspherify_experiment(params, AsphericityBudget::from_epsilon(Rational(1, 5)), 8);
    EXPECT_EQ(s.ledger_violations, 0u);
    ASSERT_EQ(s.logs.size(), 8u);
    for (std::size_t t = 0; t < 8; ++t) {
        const auto& r = s.records[t];
        EXPECT_EQ(s.logs[t].size(), *r.deletions);
        auto y = sample_complex(detail::with_seed(params, r.seed));
        auto direct = aspherify(y, AsphericityBudget::from_epsilon(Rational(1, 5)));
        EXPECT_EQ(b2(direct.complex), *r.b2_after);
        EXPECT_EQ(direct.log.size(), *r.deletions);
    }
}

TEST(Trials, ExceptionsPropagate)
{
    EXPECT_THROW(detail::run_trials(5,
                                    [](std::size_t t) {
                                        if (t == 3)
                                            throw ComplexError("boom");
                                        return t;
                                    }),
                 ComplexError);
    auto v = detail::run_trials(7, [](std::size_t t) { return t * t; });
    for (std::size_t t = 0; t < 7; ++t)
        EXPECT_EQ(v[t], t * t);
}
