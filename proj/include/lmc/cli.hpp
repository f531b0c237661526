#pragma once

// Command-line front end: lmc <subcommand> [options]. Exit status 0 on success, 1 on a domain
// error, 2 on a usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "fixtures.hpp"
#include "io.hpp"
#include "isoperimetry.hpp"
#include "random_model.hpp"

namespace lmc::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational parse_epsilon(const std::string& s)
{
    lmc::detail::ProbabilityParser::Value v;
    try {
        v = lmc::detail::ProbabilityParser(s, 0).parse();
    } catch (const ComplexError& e) {
        throw UsageError(std::string("epsilon: ") + e.what());
    }
    if (!v.exact)
        throw UsageError("epsilon must be rational: " + s);
    using boost::multiprecision::cpp_int;
    cpp_int num = boost::multiprecision::numerator(*v.exact), den = boost::multiprecision::denominator(*v.exact);
    if (num > cpp_int(1) << 40 || den > cpp_int(1) << 40)
        throw UsageError("epsilon too large: " + s);
    Rational r(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    if (r <= 0)
        throw UsageError("epsilon must be positive");
    return r;
}

inline AsphericityBudget budget_from(const std::string& eps)
{
    try {
        return AsphericityBudget::from_epsilon(parse_epsilon(eps));
    } catch (const ComplexError& e) {
        throw UsageError(e.what());
    }
}

inline GnpParams params_from(std::uint32_t n, const std::string& p, std::uint64_t seed)
{
    try {
        return make_params(n, p, seed);
    } catch (const ComplexError& e) {
        throw UsageError(e.what());
    }
}

inline std::string faces_line(const std::vector<Face>& fs)
{
    std::string s;
    for (const Face& f : fs)
        s += (s.empty() ? "" : " ") + to_string(f);
    return s;
}

inline std::string torsion_line(const H1Torsion& t)
{
    if (t.too_large)
        return "not computed (too many faces)";
    std::string s = "{";
    for (std::size_t i = 0; i < t.divisors.size(); ++i)
        s += (i ? "," : "") + t.divisors[i].str();
    return s + "}";
}

inline std::string betti_line(const Betti& b)
{
    return "b0=" + std::to_string(b.b0) + " b1=" + std::to_string(b.b1) + " b2=" + std::to_string(b.b2);
}

inline std::vector<Vertex> parse_vertex_list(const std::string& s)
{
    std::vector<Vertex> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.empty() || v > 0xffffffffUL)
            throw UsageError("bad vertex \"" + tok + "\" in loop");
        out.push_back(static_cast<Vertex>(v));
    }
    if (out.empty())
        throw UsageError("empty loop");
    return out;
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << text;
}

inline TwoComplex load(const std::string& path)
{
    return read_2c_file(path);
}

inline bool needs_seed(const FixtureKind& k)
{
    return k.tag == FixtureTag::StackedSphere || k.tag == FixtureTag::Z2Sphere || k.tag == FixtureTag::Z3Sphere;
}

inline FixtureKind fixture_kind(const std::string& name)
{
    try {
        return FixtureKind::parse(name);
    } catch (const ComplexError& e) {
        throw UsageError(e.what());
    }
}

} // namespace detail

/// Runs one command line; output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    using namespace detail;
    CLI::App app{"lmc: random 2-complexes, minimal cycles and asphericity", "lmc"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::string in_path, out_path, p_expr, eps = "1/10", reports = "density,homology", loop_text, cert_path, log_path,
                                         pattern, target, experiment;
    std::uint32_t n = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 0, area_cap = 20, length_cap = 12;
    bool first = false, random_order = false;

    auto* gen = app.add_subcommand("gen", "Sample Y(n,p) and write it as .2c");
    gen->add_option("-n", n, "Number of vertices (>= 4)")->required();
    gen->add_option("-p", p_expr, "Face probability: number, fraction or expression in n, e.g. 4*n^-1")->required();
    auto* gen_seed = gen->add_option("--seed", seed, "Random seed (required)");
    gen->add_option("-o,--output", out_path, "Output file (stdout if omitted)");

    auto* analyze = app.add_subcommand("analyze", "Density and homology report");
    analyze->add_option("file", in_path, ".2c input")->required()->check(CLI::ExistingFile);
    analyze->add_option("--report", reports, "Comma list of density,homology,mu-tilde,cheeger,systole,components");

    auto* classify = app.add_subcommand("classify", "Extract a minimal 2-cycle and classify it");
    classify->add_option("file", in_path, ".2c input")->required()->check(CLI::ExistingFile);

    auto* witnesses = app.add_subcommand("witnesses", "Small spheres, projective planes, pinched and folded spheres");
    witnesses->add_option("file", in_path, ".2c input")->required()->check(CLI::ExistingFile);
    witnesses->add_option("--epsilon", eps, "Budget parameter; face budget is ceil(2/epsilon)");
    witnesses->add_flag("--first", first, "Stop at the first witness");

    auto* asph = app.add_subcommand("aspherify", "Delete faces of small minimal cycles until no witness remains");
    asph->add_option("file", in_path, ".2c input")->required()->check(CLI::ExistingFile);
    asph->add_option("--epsilon", eps, "Budget parameter; face budget is ceil(2/epsilon)");
    asph->add_option("--log", log_path, "Deletion log CSV");
    asph->add_option("-o,--output", out_path, "Write the resulting complex");
    asph->add_flag("--random-order", random_order, "Pick the deleted face at random (needs --seed)");
    auto* asph_seed = asph->add_option("--seed", seed, "Seed for --random-order");

    auto* mc = app.add_subcommand("mc", "Monte Carlo experiment over Y(n,p) writing CSV");
    mc->add_option("experiment", experiment, "b2, contain or aspherify")
        ->required()
        ->check(CLI::IsMember({"b2", "contain", "aspherify"}));
    mc->add_option("-n", n, "Number of vertices (>= 4)")->required();
    mc->add_option("-p", p_expr, "Face probability expression")->required();
    mc->add_option("--trials", trials, "Number of trials")->required();
    auto* mc_seed = mc->add_option("--seed", seed, "Random seed (required)");
    mc->add_option("-o,--output", out_path, "CSV output (stdout if omitted)");
    mc->add_option("--pattern", pattern, "Fixture name for contain (default tetra)");
    mc->add_option("--epsilon", eps, "Budget parameter for aspherify");

    auto* mu = app.add_subcommand("mu-tilde", "Maximum density over subcomplexes");
    mu->add_option("file", in_path, ".2c input")->required()->check(CLI::ExistingFile);

    auto* filling = app.add_subcommand("filling", "Filling area of an edge loop");
    filling->add_option("file", in_path, ".2c input")->required()->check(CLI::ExistingFile);
    filling->add_option("--loop", loop_text, "Comma-separated vertices of the loop")->required();
    filling->add_option("--area-cap", area_cap, "Largest area reported exactly");
    filling->add_option("--length-cap", length_cap, "Longest intermediate loop");
    filling->add_option("--certificate", cert_path, "Write the move list here");

    auto* contain = app.add_subcommand("contain", "Count embeddings of a pattern");
    contain->add_option("pattern", pattern, "Pattern: .2c file or fixture name")->required();
    contain->add_option("file", in_path, ".2c input")->required()->check(CLI::ExistingFile);

    auto* fix = app.add_subcommand("fixture", "Write a named fixture");
    fix->add_option("name", pattern, "tetra, stacked:k, rp2six, z2:k, z3:k, z4, torus7, moore:m")->required();
    auto* fix_seed = fix->add_option("--seed", seed, "Seed (subdivided fixtures)");
    fix->add_option("-o,--output", out_path, "Output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "lmc: " << e.what() << "\n";
        for (auto* sub : app.get_subcommands())
            if (sub->parsed())
                err << "run 'lmc " << sub->get_name() << " --help' for usage\n";
        return 2;
    }

    auto emit = [&](const std::string& text) {
        if (out_path.empty())
            out << text;
        else
            write_file(out_path, text);
    };

    try {
        if (gen->parsed()) {
            GnpParams p = params_from(n, p_expr, seed);
            if (gen_seed->count() == 0)
                throw UsageError("--seed is required");
            TwoComplex y = sample_complex(p);
            emit(to_2c(y, {"Y(n,p) n=" + std::to_string(n) + " p=" + format_probability(p.p) + " (" + p_expr +
                           ") seed=" + std::to_string(seed)}));
            if (!out_path.empty())
                out << "n=" << n << " p=" << format_probability(p.p) << " f2=" << y.num_faces() << "\n";
        } else if (analyze->parsed()) {
            TwoComplex x = load(in_path);
            std::stringstream list(reports);
            std::string item;
            while (std::getline(list, item, ',')) {
                if (item == "density") {
                    auto d = density(x);
                    out << "density: v=" << d.v << " e=" << d.e << " f=" << d.f << " chi=" << d.chi << " L=" << d.L
                        << " mu=" << (d.mu ? to_string(*d.mu) : "undefined") << "\n";
                } else if (item == "homology") {
                    auto h = homology_summary(x);
                    out << "homology Q: " << betti_line(h.rational) << "\n";
                    out << "homology F2: " << betti_line(h.mod2) << "\n";
                    out << "H1 torsion: " << torsion_line(h.h1_torsion) << "\n";
                } else if (item == "mu-tilde") {
                    if (x.num_faces() == 0)
                        throw ComplexError("mu-tilde needs at least one face");
                    out << "mu-tilde: " << to_string(mu_tilde(x).value) << "\n";
                } else if (item == "cheeger") {
                    auto h = cheeger(pure_part(x));
                    out << "cheeger: " << (h.value ? to_string(*h.value) : "undefined")
                        << (h.exact ? "" : " (upper bound, search budget exhausted)") << "\n";
                } else if (item == "systole") {
                    auto s = systole(x, Coefficients::integers());
                    out << "systole: " << (s.length ? std::to_string(*s.length) : "none") << "\n";
                } else if (item == "components") {
                    out << "strong components: " << strong_components(pure_part(x)).size() << "\n";
                } else {
                    throw UsageError("unknown report \"" + item + "\"");
                }
            }
        } else if (classify->parsed()) {
            TwoComplex x = load(in_path);
            auto c = find_minimal_cycle(x);
            if (!c) {
                out << "no 2-cycle (b2 = 0)\n";
                return 0;
            }
            auto d = density(c->subcomplex);
            auto s = classify_minimal_cycle(*c);
            if (!s) {
                out << "minimal cycle with mu=" << to_string(*d.mu) << " <= 1/2; outside the classification\n";
                out << "faces: " << faces_line(c->subcomplex.faces()) << "\n";
                return 0;
            }
            out << to_string(s->tag) << "; L=" << d.L << "; deletable face: " << to_string(deletable_face(*c)) << "\n";
        } else if (witnesses->parsed()) {
            TwoComplex x = load(in_path);
            auto b = budget_from(eps);
            auto ws = find_witnesses(x, b, first ? WitnessMode::First : WitnessMode::All);
            out << "face budget: " << b.face_budget << "\n";
            for (const auto& w : ws)
                out << to_string(w.kind) << ": " << faces_line(w.faces) << "\n";
            out << "witnesses: " << ws.size() << "\n";
            out << "verdict: " << to_string(ws.empty() ? AsphericityVerdict::CriterionAspherical
                                                          : AsphericityVerdict::NotAspherical)
                << " (" << kCriterionLabel << ")\n";
        } else if (asph->parsed()) {
            if (random_order && asph_seed->count() == 0)
                throw UsageError("--random-order requires --seed");
            TwoComplex x = load(in_path);
            auto b = budget_from(eps);
            auto r = aspherify(x, b, seed, random_order ? DeletionRule::SeededRandom : DeletionRule::Lexicographic);
            if (!log_path.empty()) {
                std::ostringstream csv;
                write_deletion_log_csv(csv, r.log);
                write_file(log_path, csv.str());
            }
            if (!out_path.empty())
                write_file(out_path, to_2c(r.complex));
            out << "deletions: " << r.log.size() << "\n";
            out << "b2: " << r.b2_before << " -> " << b2(r.complex) << "\n";
            out << "witness-free: " << (r.witness_free ? "yes" : "no") << "\n";
            for (const auto& w : r.remaining)
                out << "remaining " << to_string(w.kind) << ": " << faces_line(w.faces) << "\n";
            for (const auto& line : cd_report(x, b).lines)
                out << line << "\n";
        } else if (mc->parsed()) {
            GnpParams p = params_from(n, p_expr, seed);
            if (mc_seed->count() == 0)
                throw UsageError("--seed is required");
            std::ostringstream csv;
            std::string summary;
            if (experiment == "b2") {
                auto s = b2_experiment(p, trials);
                write_trials_csv(csv, s.records);
                summary = "sandwich violations: " + std::to_string(s.sandwich_violations);
            } else if (experiment == "contain") {
                FixtureKind k = fixture_kind(pattern.empty() ? "tetra" : pattern);
                auto s = containment_experiment(fixture(k, seed), k.name(), p, trials);
                write_trials_csv(csv, s.records);
                char buf[128];
                std::snprintf(buf, sizeof buf, "frequency: %.6g; mean embeddings: %.6g", s.frequency, s.mean);
                summary = buf;
            } else {
                auto s = aspherify_experiment(p, budget_from(eps), trials);
                write_trials_csv(csv, s.records);
                summary = "ledger violations: " + std::to_string(s.ledger_violations) +
                          "; witness-free: " + std::to_string(s.witness_free) + "/" + std::to_string(trials) +
                          "; trials with RP2 witness: " + std::to_string(s.with_projective_witness);
            }
            emit(csv.str());
            if (!out_path.empty())
                out << "p=" << format_probability(p.p) << " (" << p_expr << "); trials=" << trials << "; " << summary
                    << "\n";
        } else if (mu->parsed()) {
            TwoComplex x = load(in_path);
            if (x.num_faces() == 0)
                throw ComplexError("mu-tilde needs at least one face");
            auto m = mu_tilde(x);
            out << "mu-tilde: " << to_string(m.value) << "\n";
            out << "witness: " << faces_line(m.witness) << "\n";
        } else if (filling->parsed()) {
            TwoComplex x = load(in_path);
            EdgeLoop g = make_loop(parse_vertex_list(loop_text));
            auto r = filling_area(x, g, area_cap, length_cap);
            out << to_string(r.outcome);
            if (r.outcome != FillingOutcome::NotShownNullHomotopic)
                out << " " << r.area;
            out << " (area cap " << area_cap << ", length cap " << length_cap << ")\n";
            if (r.homologically_nontrivial)
                out << "loop is not a mod-2 boundary\n";
            if (!cert_path.empty())
                write_file(cert_path, serialize_certificate(r.certificate));
            else
                out << serialize_certificate(r.certificate);
        } else if (contain->parsed()) {
            TwoComplex x = load(in_path);
            TwoComplex p;
            std::ifstream probe(pattern);
            p = probe ? load(pattern) : fixture(fixture_kind(pattern), 0);
            auto e = count_embeddings(p, x);
            out << "embeddings: " << e << "\n";
            out << "automorphisms: " << automorphism_count(p) << "\n";
            out << "copies: " << e / automorphism_count(p) << "\n";
            out << "contains: " << (e ? "yes" : "no") << "\n";
        } else if (fix->parsed()) {
            FixtureKind k = fixture_kind(pattern);
            if (needs_seed(k) && k.param > 0 && fix_seed->count() == 0)
                throw UsageError(k.name() + " is randomized; pass --seed");
            emit(to_2c(fixture(k, seed), {k.name()}));
        }
    } catch (const UsageError& e) {
        err << "lmc: " << e.what() << "\n";
        return 2;
    } catch (const ComplexError& e) {
        err << "lmc: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        err << "lmc: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "lmc: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace lmc::cli
