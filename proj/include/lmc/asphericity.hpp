#pragma once

// Small-witness search (spheres, projective planes, pinched and folded spheres), the resulting
// asphericity criterion, aspherification by deletion of null-bounding faces, and cd reporting.

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_set>

#include "cycles.hpp"

namespace lmc {

struct AsphericityBudget {
    Rational epsilon{1, 10};
    int face_budget = 20;

    /// face_budget = ceil(2 / epsilon); epsilon must leave room for at least four faces.
    static AsphericityBudget from_epsilon(Rational eps)
    {
        if (eps <= 0)
            throw ComplexError("epsilon must be positive");
        Rational two_over = Rational(2) / eps;
        std::int64_t q = two_over.numerator() / two_over.denominator();
        if (q * two_over.denominator() != two_over.numerator())
            ++q;
        if (q < 4)
            throw ComplexError("epsilon " + to_string(eps) + " gives a face budget below 4");
        return {eps, static_cast<int>(q)};
    }
};

struct Witness {
    TwoComplex subcomplex;
    SpaceTag kind = SpaceTag::NotRecognized;
    std::vector<Face> faces;
};

enum class WitnessMode { First, All };

namespace detail {

/// Growth search for face sets in which every edge has even degree. Starting from a given set,
/// an odd edge with the fewest usable faces is repaired by adding one of them; a set is reported
/// as soon as it is even. Sets of minimal even type (every witness kind) are reached from any of
/// their subsets this way, because a smaller even subset would contradict minimality.
/// Edges can be exempted from the parity condition and every edge carries a degree cap.
class EvenSetSearch {
public:
    EvenSetSearch(const TwoComplex& y) : y_(y), idx_(y)
    {
        const std::size_t F = y.num_faces();
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        key1_.resize(F);
        key2_.resize(F);
        for (std::size_t i = 0; i < F; ++i) {
            key1_[i] = rng();
            key2_[i] = rng();
        }
        in_.assign(F, 0);
        usable_.assign(F, 1);
        deg_.assign(y.num_edges(), 0);
        odd_pos_.assign(y.num_edges(), SIZE_MAX);
        parity_free_.assign(y.num_edges(), 0);
        max_deg_.assign(y.num_edges(), 4);
    }

    void set_usable(std::vector<char> usable) { usable_ = std::move(usable); }

    /// Defaults suit witnesses: degree at most four and at most one edge above two.
    void set_edge_rules(std::vector<char> parity_free, std::vector<int> max_deg, int max_high)
    {
        parity_free_ = std::move(parity_free);
        max_deg_ = std::move(max_deg);
        max_high_ = max_high;
    }

    /// Visits even supersets of `start` reachable within `budget` faces. The visitor returns true
    /// to stop the search. Returns false if the node budget ran out.
    bool run(const std::vector<std::size_t>& start, int budget, const std::function<bool(const std::vector<std::size_t>&)>& visit,
             std::uint64_t node_budget = UINT64_MAX)
    {
        budget_ = budget;
        visit_ = &visit;
        stop_ = false;
        nodes_left_ = node_budget;
        out_of_nodes_ = false;
        seen_.clear();
        for (std::size_t f : start)
            add(f);
        if (odd_.empty())
            stop_ = visit(members_);
        else
            grow();
        for (auto it = start.rbegin(); it != start.rend(); ++it)
            remove(*it);
        return !out_of_nodes_;
    }

    std::uint64_t nodes() const { return nodes_; }
    const std::vector<std::vector<std::size_t>>& faces_at_edge() const { return idx_.at_edge; }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const
        {
            return static_cast<std::size_t>(p.first ^ (p.second * 0x9e3779b97f4a7c15ULL));
        }
    };

    void toggle_odd(std::size_t e)
    {
        if (parity_free_[e])
            return;
        if (deg_[e] % 2 == 1) {
            odd_pos_[e] = odd_.size();
            odd_.push_back(e);
        } else {
            std::size_t p = odd_pos_[e];
            odd_[p] = odd_.back();
            odd_pos_[odd_[p]] = p;
            odd_.pop_back();
            odd_pos_[e] = SIZE_MAX;
        }
    }

    void add(std::size_t f)
    {
        in_[f] = 1;
        members_.push_back(f);
        h1_ ^= key1_[f];
        h2_ ^= key2_[f];
        for (std::size_t e : idx_.fe[f]) {
            if (++deg_[e] == 3)
                ++high_;
            toggle_odd(e);
        }
    }

    void remove(std::size_t f)
    {
        in_[f] = 0;
        members_.erase(std::find(members_.begin(), members_.end(), f));
        h1_ ^= key1_[f];
        h2_ ^= key2_[f];
        for (std::size_t e : idx_.fe[f]) {
            if (deg_[e]-- == 3)
                --high_;
            toggle_odd(e);
        }
    }

    bool usable(std::size_t g) const { return !in_[g] && usable_[g]; }

    bool admissible(std::size_t g) const
    {
        int new_high = 0;
        for (std::size_t e : idx_.fe[g]) {
            if (deg_[e] >= max_deg_[e])
                return false;
            if (deg_[e] == 2)
                ++new_high;
        }
        return high_ + new_high <= max_high_;
    }

    void grow()
    {
        if (stop_)
            return;
        if (nodes_left_ == 0) {
            out_of_nodes_ = true;
            stop_ = true;
            return;
        }
        --nodes_left_;
        ++nodes_;
        if (!seen_.insert({h1_, h2_}).second)
            return;
        // pick the odd edge with fewest usable faces; compute the covering bound on the way
        std::size_t best = SIZE_MAX, best_count = SIZE_MAX;
        int n1 = 0, n2 = 0, n3 = 0;
        for (std::size_t e : odd_) {
            std::size_t count = 0;
            int c = 0;
            for (std::size_t g : idx_.at_edge[e]) {
                if (!usable(g) || !admissible(g))
                    continue;
                ++count;
                int k = 0;
                for (std::size_t e2 : idx_.fe[g])
                    k += !parity_free_[e2] && deg_[e2] % 2;
                c = std::max(c, k);
            }
            if (count == 0)
                return;
            (c == 1 ? n1 : c == 2 ? n2 : n3)++;
            if (count < best_count) {
                best_count = count;
                best = e;
            }
        }
        int need = (6 * n1 + 3 * n2 + 2 * n3 + 5) / 6;
        if (static_cast<int>(members_.size()) + need > budget_)
            return;
        std::vector<std::size_t> cands;
        for (std::size_t g : idx_.at_edge[best])
            if (usable(g) && admissible(g))
                cands.push_back(g);
        for (std::size_t g : cands) {
            add(g);
            if (odd_.empty())
                stop_ = (*visit_)(members_);
            else
                grow();
            remove(g);
            if (stop_)
                return;
        }
    }

    const TwoComplex& y_;
    FaceEdgeIndex idx_;
    std::vector<std::uint64_t> key1_, key2_;
    std::vector<char> in_, usable_;
    std::vector<int> deg_, max_deg_;
    std::vector<char> parity_free_;
    int max_high_ = 1;
    std::vector<std::size_t> odd_, odd_pos_, members_;
    int high_ = 0;
    std::uint64_t h1_ = 0, h2_ = 0;
    int budget_ = 0;
    const std::function<bool(const std::vector<std::size_t>&)>* visit_ = nullptr;
    bool stop_ = false, out_of_nodes_ = false;
    std::uint64_t nodes_left_ = 0, nodes_ = 0;
    std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PairHash> seen_;
};

inline bool is_witness_kind(SpaceTag t)
{
    return t == SpaceTag::Sphere || t == SpaceTag::ProjectivePlane || t == SpaceTag::Z2 || t == SpaceTag::Z3;
}

inline std::optional<Witness> as_witness(const TwoComplex& y, const std::vector<std::size_t>& ids)
{
    std::vector<Face> faces;
    for (std::size_t i : ids)
        faces.push_back(y.faces()[i]);
    std::sort(faces.begin(), faces.end());
    TwoComplex w = TwoComplex::build(faces);
    if (!is_strongly_connected(w))
        return std::nullopt;
    SpaceType s = recognize_space(w);
    if (!is_witness_kind(s.tag))
        return std::nullopt;
    return Witness{w, s.tag, faces};
}

/// Witnesses of Y whose smallest face is y.faces()[seed].
inline std::vector<Witness> witnesses_at_seed(const TwoComplex& y, EvenSetSearch& search, std::size_t seed,
                                              int budget, bool first_only)
{
    std::vector<char> usable(y.num_faces(), 0);
    for (std::size_t i = seed; i < y.num_faces(); ++i)
        usable[i] = 1;
    search.set_usable(std::move(usable));
    std::vector<Witness> out;
    std::function<bool(const std::vector<std::size_t>&)> visit = [&](const std::vector<std::size_t>& ids) {
        if (auto w = as_witness(y, ids)) {
            out.push_back(std::move(*w));
            return first_only;
        }
        return false;
    };
    search.run({seed}, budget, visit);
    std::sort(out.begin(), out.end(), [](const Witness& a, const Witness& b) { return a.faces < b.faces; });
    return out;
}

} // namespace detail

/// Closed subcomplexes of at most face_budget faces homeomorphic to a sphere, a projective plane,
/// or a pinched or folded sphere, ordered by face list. A projective plane with a disc shows up
/// through its projective plane.
inline std::vector<Witness> find_witnesses(const TwoComplex& y, const AsphericityBudget& budget,
                                           WitnessMode mode = WitnessMode::All)
{
    // closed subcomplexes survive collapsing, so the search runs on the 2-core
    TwoComplex core = pure_part(collapse(y));
    std::vector<Witness> out;
    if (core.num_faces() == 0)
        return out;
    detail::EvenSetSearch search(core);
    for (std::size_t s = 0; s < core.num_faces(); ++s) {
        auto ws = detail::witnesses_at_seed(core, search, s, budget.face_budget, mode == WitnessMode::First);
        for (auto& w : ws) {
            out.push_back(std::move(w));
            if (mode == WitnessMode::First)
                return out;
        }
    }
    return out;
}

enum class AsphericityVerdict { CriterionAspherical, NotAspherical };

inline std::string to_string(AsphericityVerdict v)
{
    return v == AsphericityVerdict::CriterionAspherical ? "CriterionAspherical" : "NotAspherical";
}

constexpr const char* kCriterionLabel =
    "small-witness criterion; conclusive only asymptotically almost surely for subcomplexes of Y(n,p) "
    "with p << n^(-1/2-epsilon), not a proof of asphericity";

struct AsphericityReport {
    AsphericityVerdict verdict = AsphericityVerdict::CriterionAspherical;
    std::optional<Witness> witness;
    std::string label = kCriterionLabel;
};

inline AsphericityReport check_aspherical(const TwoComplex& y, const AsphericityBudget& budget)
{
    AsphericityReport r;
    auto ws = find_witnesses(y, budget, WitnessMode::First);
    if (!ws.empty()) {
        r.verdict = AsphericityVerdict::NotAspherical;
        r.witness = ws.front();
    }
    return r;
}

struct DeletionRecord {
    std::size_t step = 0;
    SpaceTag witness_kind = SpaceTag::NotRecognized;
    std::vector<Face> witness_faces;
    Face deleted_face;
    long b2_after = 0;
};

enum class DeletionRule { Lexicographic, SeededRandom };

struct AspherifyResult {
    TwoComplex complex;
    std::vector<DeletionRecord> log;
    long b2_before = 0;
    /// Projective planes that are not part of a small cycle and therefore cannot be removed.
    std::vector<Witness> remaining;
    /// Distinct projective-plane witnesses met during the run.
    std::size_t projective_seen = 0;
    /// True when no witness of any kind remains.
    bool witness_free = true;
};

namespace detail {

inline std::string faces_field(const std::vector<Face>& fs)
{
    std::string s;
    for (const Face& f : fs)
        s += (s.empty() ? "" : ";") + to_string(f);
    return s;
}

/// A projective plane with a disc (Z4) around the projective plane W within budget, if any.
/// The disc is grown from faces outside W: edges of W take at most one disc face and are exempt
/// from parity, every other edge needs degree two.
inline std::optional<MinimalCycle> projective_with_disc(const TwoComplex& y, const Witness& w, int budget)
{
    const int room = budget - static_cast<int>(w.faces.size());
    if (room < 1)
        return std::nullopt;
    EvenSetSearch search(y);
    std::vector<char> usable(y.num_faces(), 1), on_w(y.num_edges(), 0);
    for (const Face& f : w.faces) {
        usable[y.face_index(f)] = 0;
        for (const Edge& e : f.edges())
            on_w[y.edge_index(e)] = 1;
    }
    std::vector<int> max_deg(y.num_edges(), 2);
    for (std::size_t e = 0; e < on_w.size(); ++e)
        if (on_w[e])
            max_deg[e] = 1;
    search.set_edge_rules(on_w, max_deg, static_cast<int>(y.num_edges()));
    std::optional<MinimalCycle> found;
    std::function<bool(const std::vector<std::size_t>&)> visit = [&](const std::vector<std::size_t>& ids) {
        std::vector<Face> faces = w.faces;
        for (std::size_t i : ids)
            faces.push_back(y.faces()[i]);
        auto c = find_minimal_cycle(TwoComplex::build(faces));
        if (!c)
            return false;
        auto s = classify_minimal_cycle(*c);
        if (!s || !s->is(SpaceTag::Z4))
            return false;
        found = std::move(*c);
        return true;
    };
    const auto& at_edge = search.faces_at_edge();
    std::vector<char> tried(y.num_faces(), 0);
    for (std::size_t e = 0; e < on_w.size() && !found; ++e) {
        if (!on_w[e])
            continue;
        for (std::size_t g : at_edge[e]) {
            if (!usable[g] || tried[g])
                continue;
            tried[g] = 1;
            search.set_usable(usable);
            search.run({g}, room, visit, 2'000'000);
            if (found)
                break;
            // discs through g are done; later seeds need not revisit them
            usable[g] = 0;
        }
    }
    return found;
}

} // namespace detail

/// Repeatedly deletes a null-bounding face from a small minimal cycle until no witness with
/// b2 >= 1 (or projective plane inside a small cycle) remains. Vertices and edges are kept.
inline AspherifyResult aspherify(const TwoComplex& y, const AsphericityBudget& budget, std::uint64_t seed = 0,
                                 DeletionRule rule = DeletionRule::Lexicographic)
{
    AspherifyResult out;
    out.b2_before = b2(y);
    long b2_now = out.b2_before;
    std::mt19937_64 rng(seed);
    TwoComplex cur = y;
    // Deleting faces never creates witnesses, so seeds already cleared stay cleared: each face of
    // the 2-core is visited once as the smallest face of its witnesses.
    TwoComplex core = pure_part(collapse(y));
    detail::EvenSetSearch search(core);
    std::vector<char> alive(core.num_faces(), 1);
    for (std::size_t s = 0; s < core.num_faces(); ++s) {
        if (!alive[s])
            continue;
        std::vector<char> usable(core.num_faces(), 0);
        for (std::size_t i = s; i < core.num_faces(); ++i)
            usable[i] = alive[i];
        auto ws = [&] {
            std::vector<Witness> list;
            search.set_usable(usable);
            std::function<bool(const std::vector<std::size_t>&)> visit = [&](const std::vector<std::size_t>& ids) {
                if (auto w = detail::as_witness(core, ids))
                    list.push_back(std::move(*w));
                return false;
            };
            search.run({s}, budget.face_budget, visit);
            std::sort(list.begin(), list.end(), [](const Witness& a, const Witness& b) { return a.faces < b.faces; });
            return list;
        }();
        for (const Witness& w : ws) {
            bool intact = std::all_of(w.faces.begin(), w.faces.end(),
                                      [&](const Face& f) { return alive[core.face_index(f)]; });
            if (!intact)
                continue;
            std::optional<MinimalCycle> cycle;
            if (w.kind == SpaceTag::ProjectivePlane) {
                ++out.projective_seen;
                cycle = detail::projective_with_disc(cur, w, budget.face_budget);
                if (!cycle) {
                    out.remaining.push_back(w);
                    continue;
                }
            } else {
                cycle = find_minimal_cycle(w.subcomplex);
                if (!cycle || cycle->subcomplex != w.subcomplex)
                    throw std::logic_error("witness of kind " + to_string(w.kind) + " is not a minimal cycle");
                classify_minimal_cycle(*cycle);
            }
            if (!cycle->classification)
                throw ClassificationFailure("witness cycle has density at most one half");
            Face victim = deletable_face(*cycle);
            if (rule == DeletionRule::SeededRandom) {
                const auto& kind = cycle->classification->tag;
                std::vector<Face> eligible =
                    kind == SpaceTag::Z4 ? cycle->classification->projective_faces : cycle->subcomplex.faces();
                victim = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
            }
            cur = remove_face(cur, victim);
            if (core.has_face(victim))
                alive[core.face_index(victim)] = 0;
            long after = b2(cur);
            if (after != b2_now - 1)
                throw std::logic_error("deleting " + to_string(victim) + " changed b2 from " + std::to_string(b2_now) +
                                       " to " + std::to_string(after));
            b2_now = after;
            out.log.push_back({out.log.size() + 1, cycle->classification->tag, cycle->subcomplex.faces(), victim, after});
        }
    }
    // projective planes whose faces were deleted later are no longer present
    std::vector<Witness> still;
    for (auto& w : out.remaining)
        if (std::all_of(w.faces.begin(), w.faces.end(), [&](const Face& f) { return cur.has_face(f); }))
            still.push_back(std::move(w));
    out.remaining = std::move(still);
    out.witness_free = out.remaining.empty();
    out.complex = std::move(cur);
    return out;
}

inline void write_deletion_log_csv(std::ostream& os, const std::vector<DeletionRecord>& log)
{
    os << "step,witness_kind,witness_faces,deleted_face,b2_after\n";
    for (const auto& r : log)
        os << r.step << ',' << to_string(r.witness_kind) << ',' << detail::faces_field(r.witness_faces) << ','
           << to_string(r.deleted_face) << ',' << r.b2_after << '\n';
}

struct CdReport {
    bool rp2_witness = false;
    bool aspherified = false;
    long b2_after = 0;
    bool collapses_to_graph = false;
    std::vector<std::string> lines;
};

/// Cohomological-dimension evidence; every conclusion is conditional on the random regime.
inline CdReport cd_report(const TwoComplex& y, const AsphericityBudget& budget)
{
    CdReport r;
    TwoComplex core = pure_part(collapse(y));
    r.collapses_to_graph = core.num_faces() == 0;
    auto ws = find_witnesses(y, budget, WitnessMode::All);
    r.rp2_witness = std::any_of(ws.begin(), ws.end(), [](const Witness& w) { return w.kind == SpaceTag::ProjectivePlane; });
    auto a = aspherify(y, budget);
    r.aspherified = a.witness_free;
    r.b2_after = b2(a.complex);
    if (r.collapses_to_graph) {
        r.lines.push_back("collapses to a graph: aspherical, fundamental group free, cd <= 1");
        return r;
    }
    if (r.rp2_witness)
        r.lines.push_back("RP2 witness present: 2-torsion evidence, cd infinite (conditional)");
    else
        r.lines.push_back("no RP2 witness");
    if (r.aspherified && !r.rp2_witness)
        r.lines.push_back("aspherified after " + std::to_string(a.log.size()) + " deletions; cd <= 2 (conditional)");
    else if (!r.aspherified)
        r.lines.push_back("witnesses remain after aspherification");
    if (r.b2_after > 0)
        r.lines.push_back("b2 of aspherified complex = " + std::to_string(r.b2_after) +
                          " > 0: fundamental group not free (conditional)");
    return r;
}

} // namespace lmc
