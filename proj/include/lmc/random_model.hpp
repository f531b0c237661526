#pragma once

// Linial-Meshulam sampling Y(n,p), expectation formulas and the Monte Carlo experiments.

#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>

#include "asphericity.hpp"

namespace lmc {

using ExactRational = boost::multiprecision::cpp_rational;

struct GnpParams {
    std::uint32_t n = 4;
    double p = 0;
    std::optional<ExactRational> exact;
    std::uint64_t seed = 0;
    std::string expression;
};

namespace detail {

/// Recursive-descent evaluator for probability expressions such as "4*n^-1" or "n^(-0.8)".
class ProbabilityParser {
public:
    struct Value {
        std::optional<ExactRational> exact;
        double approx = 0;
    };

    ProbabilityParser(const std::string& text, std::uint32_t n) : s_(text), n_(n) {}

    Value parse()
    {
        Value v = expr();
        skip();
        if (i_ != s_.size())
            fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw ComplexError("cannot parse probability \"" + s_ + "\": " + why);
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    static Value exact_value(ExactRational r) { return {r, static_cast<double>(r)}; }

    Value expr()
    {
        Value v = term();
        for (;;) {
            if (eat('+'))
                v = combine(v, term(), '+');
            else if (eat('-'))
                v = combine(v, term(), '-');
            else
                return v;
        }
    }

    Value term()
    {
        Value v = power();
        for (;;) {
            if (eat('*'))
                v = combine(v, power(), '*');
            else if (eat('/'))
                v = combine(v, power(), '/');
            else
                return v;
        }
    }

    Value power()
    {
        Value base = unary();
        if (!eat('^'))
            return base;
        Value e = power_operand();
        if (base.exact && e.exact && boost::multiprecision::denominator(*e.exact) == 1) {
            auto k = static_cast<long>(boost::multiprecision::numerator(*e.exact));
            if (std::labs(k) <= 4096) {
                if (k < 0 && *base.exact == 0)
                    fail("division by zero");
                ExactRational r = 1;
                for (long j = 0; j < std::labs(k); ++j)
                    r *= *base.exact;
                return exact_value(k < 0 ? ExactRational(1) / r : r);
            }
        }
        return {std::nullopt, std::pow(base.approx, e.approx)};
    }

    Value power_operand()
    {
        if (eat('-')) {
            Value v = power_operand();
            return negate(v);
        }
        return power();
    }

    Value unary()
    {
        if (eat('-'))
            return negate(unary());
        if (eat('+'))
            return unary();
        return primary();
    }

    static Value negate(Value v)
    {
        if (v.exact)
            *v.exact = -*v.exact;
        v.approx = -v.approx;
        return v;
    }

    Value primary()
    {
        skip();
        if (eat('(')) {
            Value v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return v;
        }
        if (i_ < s_.size() && s_[i_] == 'n') {
            ++i_;
            return exact_value(ExactRational(n_));
        }
        std::size_t start = i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.'))
            ++i_;
        if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < s_.size() && (s_[j] == '-' || s_[j] == '+'))
                ++j;
            if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
                i_ = j;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                    ++i_;
            }
        }
        if (start == i_)
            fail(i_ < s_.size() ? "unexpected '" + std::string(1, s_[i_]) + "'" : "unexpected end");
        return number(s_.substr(start, i_ - start));
    }

    Value number(const std::string& tok) const
    {
        // decimal literals are exact: digits with an optional point and exponent
        std::string mant = tok;
        long exp10 = 0;
        if (auto e = tok.find_first_of("eE"); e != std::string::npos) {
            mant = tok.substr(0, e);
            exp10 = std::stol(tok.substr(e + 1));
        }
        if (std::count(mant.begin(), mant.end(), '.') > 1 || mant == ".")
            fail("bad number \"" + tok + "\"");
        if (auto dot = mant.find('.'); dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        // cpp_int reads a leading 0 as octal
        mant.erase(0, std::min(mant.find_first_not_of('0'), mant.size() - 1));
        if (mant.empty())
            fail("bad number \"" + tok + "\"");
        if (std::labs(exp10) > 300)
            fail("number out of range \"" + tok + "\"");
        ExactRational r{boost::multiprecision::cpp_int(mant)};
        boost::multiprecision::cpp_int ten = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                          static_cast<unsigned>(std::labs(exp10)));
        if (exp10 >= 0)
            r *= ten;
        else
            r /= ten;
        return exact_value(r);
    }

    Value combine(const Value& a, const Value& b, char op) const
    {
        if (a.exact && b.exact) {
            switch (op) {
            case '+': return exact_value(*a.exact + *b.exact);
            case '-': return exact_value(*a.exact - *b.exact);
            case '*': return exact_value(*a.exact * *b.exact);
            default:
                if (*b.exact == 0)
                    fail("division by zero");
                return exact_value(*a.exact / *b.exact);
            }
        }
        switch (op) {
        case '+': return {std::nullopt, a.approx + b.approx};
        case '-': return {std::nullopt, a.approx - b.approx};
        case '*': return {std::nullopt, a.approx * b.approx};
        default: return {std::nullopt, a.approx / b.approx};
        }
    }

    std::string s_;
    std::uint32_t n_;
    std::size_t i_ = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace detail

/// Parses "0.1", "1/10", "4*n^-1", "n^(-0.8)"; rejects values outside [0,1].
inline GnpParams make_params(std::uint32_t n, const std::string& p_expr, std::uint64_t seed)
{
    if (n < 4)
        throw ComplexError("n must be at least 4");
    auto v = detail::ProbabilityParser(p_expr, n).parse();
    if (!(v.approx >= 0 && v.approx <= 1) || (v.exact && (*v.exact < 0 || *v.exact > 1)))
        throw ComplexError("probability out of range");
    return {n, v.approx, v.exact, seed, p_expr};
}

inline GnpParams make_params(std::uint32_t n, double p, std::uint64_t seed)
{
    if (n < 4)
        throw ComplexError("n must be at least 4");
    if (!(p >= 0 && p <= 1))
        throw ComplexError("probability out of range");
    return {n, p, std::nullopt, seed, {}};
}

inline std::string format_probability(double p)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", p);
    return buf;
}

/// Colexicographic index of a face among all triples of [n].
inline std::uint64_t face_index(const Face& f)
{
    return detail::binom(f.a, 1) + detail::binom(f.b, 2) + detail::binom(f.c, 3);
}

/// Uniform [0,1) value attached to a face; a face is present in Y(n,p) iff its value is below p,
/// which couples all p for a fixed seed.
inline double face_uniform(std::uint64_t seed, const Face& f)
{
    std::uint64_t h = detail::splitmix64(detail::splitmix64(seed) ^ face_index(f));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline TwoComplex sample_complex(const GnpParams& params)
{
    const std::uint32_t n = params.n;
    if (n < 4)
        throw ComplexError("n must be at least 4");
    std::vector<Vertex> verts(n);
    std::vector<Edge> edges;
    std::vector<Face> faces;
    for (Vertex a = 0; a < n; ++a) {
        verts[a] = a;
        for (Vertex b = a + 1; b < n; ++b) {
            edges.push_back(Edge{a, b});
            for (Vertex c = b + 1; c < n; ++c)
                if (Face f{a, b, c}; face_uniform(params.seed, f) < params.p)
                    faces.push_back(f);
        }
    }
    return TwoComplex::build(faces, edges, verts);
}

struct ExpectedEmbeddings {
    std::optional<ExactRational> exact;
    double value = 0;
};

/// E[#injective maps P -> Y(n,p)] = n!/(n-v)! * p^f.
inline ExpectedEmbeddings expected_embeddings(const TwoComplex& pattern, const GnpParams& params)
{
    if (!pattern.is_pure())
        throw ComplexError("pattern must be pure");
    const std::size_t v = pattern.num_vertices(), f = pattern.num_faces();
    ExpectedEmbeddings out;
    if (v > params.n)
        return {ExactRational(0), 0.0};
    boost::multiprecision::cpp_int falling = 1;
    for (std::size_t i = 0; i < v; ++i)
        falling *= params.n - i;
    out.value = static_cast<double>(falling) * std::pow(params.p, static_cast<double>(f));
    if (params.exact) {
        ExactRational r{falling};
        for (std::size_t i = 0; i < f; ++i)
            r *= *params.exact;
        out.exact = r;
        out.value = static_cast<double>(r);
    }
    return out;
}

inline ExpectedEmbeddings expected_embeddings(const TwoComplex& pattern, std::uint32_t n, const std::string& p_expr)
{
    return expected_embeddings(pattern, make_params(n, p_expr, 0));
}

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::uint32_t n = 0;
    double p = 0;
    std::size_t f2 = 0;
    std::optional<long> b2;
    std::string pattern;
    std::optional<std::uint64_t> embeddings;
    std::optional<bool> contains;
    std::optional<std::size_t> deletions;
    std::optional<long> b2_after;
};

constexpr const char* kTrialCsvHeader = "trial,seed,n,p,f2,b2,pattern,embeddings,contains,deletions,b2_after";

inline void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& rows)
{
    auto opt = [&](const auto& o) {
        if (o)
            os << *o;
    };
    os << kTrialCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.trial << ',' << r.seed << ',' << r.n << ',' << format_probability(r.p) << ',' << r.f2 << ',';
        opt(r.b2);
        os << ',' << r.pattern << ',';
        opt(r.embeddings);
        os << ',';
        if (r.contains)
            os << (*r.contains ? 1 : 0);
        os << ',';
        opt(r.deletions);
        os << ',';
        opt(r.b2_after);
        os << '\n';
    }
}

/// Worker count from LMC_THREADS (positive integer), else the hardware concurrency.
inline unsigned thread_count()
{
    if (const char* s = std::getenv("LMC_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v > 0)
            return static_cast<unsigned>(std::min(v, 256L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Seed of trial t; trials are independent of scheduling.
inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t t)
{
    return detail::splitmix64(seed ^ detail::splitmix64(0x5851f42d4c957f2dULL + t));
}

namespace detail {

template <class Fn>
auto run_trials(std::size_t trials, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using R = decltype(fn(std::size_t{}));
    std::vector<std::optional<R>> slots(trials);
    std::vector<std::exception_ptr> errors(trials);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < trials;) {
            try {
                slots[t] = fn(t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    unsigned k = std::min<std::size_t>(thread_count(), std::max<std::size_t>(trials, 1));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < k; ++i)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    std::vector<R> out;
    for (std::size_t t = 0; t < trials; ++t) {
        if (errors[t])
            std::rethrow_exception(errors[t]);
        out.push_back(std::move(*slots[t]));
    }
    return out;
}

inline GnpParams with_seed(GnpParams p, std::uint64_t seed)
{
    p.seed = seed;
    return p;
}

} // namespace detail

struct ContainmentStats {
    std::vector<TrialRecord> records;
    double frequency = 0;
    double mean = 0;
    double variance = 0;
};

inline ContainmentStats containment_experiment(const TwoComplex& pattern, const std::string& pattern_name,
                                               const GnpParams& params, std::size_t trials)
{
    ContainmentStats s;
    s.records = detail::run_trials(trials, [&](std::size_t t) {
        TrialRecord r;
        r.trial = t;
        r.seed = trial_seed(params.seed, t);
        r.n = params.n;
        r.p = params.p;
        TwoComplex y = sample_complex(detail::with_seed(params, r.seed));
        r.f2 = y.num_faces();
        r.pattern = pattern_name;
        r.embeddings = count_embeddings(pattern, y);
        r.contains = *r.embeddings > 0;
        return r;
    });
    if (trials == 0)
        return s;
    std::size_t hits = 0;
    double sum = 0, sq = 0;
    for (const auto& r : s.records) {
        hits += *r.contains;
        sum += static_cast<double>(*r.embeddings);
    }
    s.frequency = static_cast<double>(hits) / static_cast<double>(trials);
    s.mean = sum / static_cast<double>(trials);
    for (const auto& r : s.records)
        sq += (static_cast<double>(*r.embeddings) - s.mean) * (static_cast<double>(*r.embeddings) - s.mean);
    s.variance = trials > 1 ? sq / static_cast<double>(trials - 1) : 0.0;
    return s;
}

struct B2Stats {
    std::vector<TrialRecord> records;
    std::size_t sandwich_violations = 0;
    double mean_b2 = 0;
};

/// f2 - C(n-1,2) <= b2 <= f2 holds for every sample with a complete 1-skeleton.
inline bool b2_sandwich(std::uint32_t n, std::size_t f2, long b2)
{
    long lower = static_cast<long>(f2) - static_cast<long>(detail::binom(n - 1, 2));
    return lower <= b2 && b2 <= static_cast<long>(f2);
}

inline B2Stats b2_experiment(const GnpParams& params, std::size_t trials)
{
    B2Stats s;
    s.records = detail::run_trials(trials, [&](std::size_t t) {
        TrialRecord r;
        r.trial = t;
        r.seed = trial_seed(params.seed, t);
        r.n = params.n;
        r.p = params.p;
        TwoComplex y = sample_complex(detail::with_seed(params, r.seed));
        r.f2 = y.num_faces();
        r.b2 = b2(y);
        return r;
    });
    for (const auto& r : s.records) {
        s.sandwich_violations += !b2_sandwich(r.n, r.f2, *r.b2);
        s.mean_b2 += static_cast<double>(*r.b2);
    }
    if (trials)
        s.mean_b2 /= static_cast<double>(trials);
    return s;
}

struct AspherifyStats {
    std::vector<TrialRecord> records;
    std::vector<std::vector<DeletionRecord>> logs;
    std::size_t ledger_violations = 0;
    std::size_t witness_free = 0;
    std::size_t with_projective_witness = 0;
    /// Trials with n^2 (c-3)/8 <= b2_after <= n^(5/2 - epsilon), c = pn; asymptotic, reported only.
    std::size_t within_asymptotic_bounds = 0;
};

inline AspherifyStats aspherify_experiment(const GnpParams& params, const AsphericityBudget& budget, std::size_t trials)
{
    struct One {
        TrialRecord record;
        std::vector<DeletionRecord> log;
        bool free = false, projective = false;
    };
    auto runs = detail::run_trials(trials, [&](std::size_t t) {
        One o;
        TrialRecord& r = o.record;
        r.trial = t;
        r.seed = trial_seed(params.seed, t);
        r.n = params.n;
        r.p = params.p;
        TwoComplex y = sample_complex(detail::with_seed(params, r.seed));
        r.f2 = y.num_faces();
        auto a = aspherify(y, budget);
        r.b2 = a.b2_before;
        r.deletions = a.log.size();
        r.b2_after = b2(a.complex);
        o.log = std::move(a.log);
        o.free = a.witness_free;
        o.projective = a.projective_seen > 0;
        return o;
    });
    AspherifyStats s;
    const double n = params.n, c = params.p * n;
    const double eps = boost::rational_cast<double>(budget.epsilon);
    for (auto& o : runs) {
        const auto& r = o.record;
        bool ok = *r.b2_after == *r.b2 - static_cast<long>(*r.deletions);
        for (std::size_t i = 0; i < o.log.size() && ok; ++i)
            ok = o.log[i].b2_after == *r.b2 - static_cast<long>(i + 1);
        s.ledger_violations += !ok;
        s.witness_free += o.free;
        s.with_projective_witness += o.projective;
        double b = static_cast<double>(*r.b2_after);
        s.within_asymptotic_bounds += n * n * (c - 3) / 8 <= b && b <= std::pow(n, 2.5 - eps);
        s.records.push_back(r);
        s.logs.push_back(std::move(o.log));
    }
    return s;
}

} // namespace lmc
