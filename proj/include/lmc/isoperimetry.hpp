#pragma once

// Filling area of edge loops by cost-bounded word rewriting, and the empirical isoperimetric ratio.

#include <map>
#include <queue>
#include <unordered_map>

#include "invariants.hpp"
#include "io.hpp"

namespace lmc {

/// Cyclic vertex sequence; consecutive vertices (and last to first) span edges.
struct EdgeLoop {
    std::vector<Vertex> vertices;

    std::size_t length() const { return vertices.size(); }
    bool operator==(const EdgeLoop&) const = default;
};

/// Accepts a closed walk written with or without its repeated endpoint.
inline EdgeLoop make_loop(std::vector<Vertex> vs)
{
    if (vs.size() > 1 && vs.front() == vs.back())
        vs.pop_back();
    return {std::move(vs)};
}

inline std::string to_string(const EdgeLoop& l)
{
    std::string s = "(";
    for (std::size_t i = 0; i < l.vertices.size(); ++i)
        s += (i ? "," : "") + std::to_string(l.vertices[i]);
    return s + ")";
}

/// Concatenation of two loops through a common vertex.
inline EdgeLoop concatenate(const EdgeLoop& g1, const EdgeLoop& g2, Vertex base)
{
    auto rotated = [&](const EdgeLoop& g) {
        auto it = std::find(g.vertices.begin(), g.vertices.end(), base);
        if (it == g.vertices.end())
            throw ComplexError("loop " + to_string(g) + " misses vertex " + std::to_string(base));
        std::vector<Vertex> r(it, g.vertices.end());
        r.insert(r.end(), g.vertices.begin(), it);
        return r;
    };
    auto a = rotated(g1), b = rotated(g2);
    a.insert(a.end(), b.begin(), b.end());
    return {a};
}

struct FillingMove {
    enum Kind { Expand, Contract } kind = Expand;
    /// expand: a->b becomes a->c->b; contract: a->c->b becomes a->b
    Vertex a = 0, b = 0, c = 0;

    bool operator==(const FillingMove&) const = default;
};

enum class FillingOutcome { Area, NullHomotopicBeyondCap, NotShownNullHomotopic };

inline std::string to_string(FillingOutcome o)
{
    switch (o) {
    case FillingOutcome::Area: return "Area";
    case FillingOutcome::NullHomotopicBeyondCap: return "NullHomotopicBeyondCap";
    default: return "NotShownNullHomotopic";
    }
}

struct FillingResult {
    FillingOutcome outcome = FillingOutcome::NotShownNullHomotopic;
    std::size_t area = 0;
    std::size_t area_cap = 0, length_cap = 0;
    std::vector<FillingMove> certificate;
    std::size_t states = 0;
    /// True when the loop is not null-homologous mod 2, hence certainly not null-homotopic.
    bool homologically_nontrivial = false;
};

inline std::string serialize_certificate(const std::vector<FillingMove>& moves)
{
    std::string s;
    for (const auto& m : moves)
        s += std::string(m.kind == FillingMove::Expand ? "expand " : "contract ") + std::to_string(m.a) + ' ' +
             std::to_string(m.b) + ' ' + std::to_string(m.c) + '\n';
    return s;
}

inline std::vector<FillingMove> parse_certificate(const std::string& text)
{
    std::vector<FillingMove> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        std::string kind;
        long a, b, c;
        std::string rest;
        if (!(ls >> kind >> a >> b >> c) || (ls >> rest) || (kind != "expand" && kind != "contract") || a < 0 ||
            b < 0 || c < 0)
            throw FormatError("bad certificate line \"" + line + "\"");
        out.push_back({kind == "expand" ? FillingMove::Expand : FillingMove::Contract, static_cast<Vertex>(a),
                       static_cast<Vertex>(b), static_cast<Vertex>(c)});
    }
    return out;
}

namespace detail {

using Word = std::vector<Vertex>;

/// Cancels backtracks a->b->a cyclically; words of length below 3 are empty.
inline Word reduce_word(const Word& w)
{
    Word s;
    for (Vertex v : w) {
        if (!s.empty() && s.back() == v)
            continue;
        if (s.size() >= 2 && s[s.size() - 2] == v) {
            s.pop_back();
            continue;
        }
        s.push_back(v);
    }
    std::size_t lo = 0, hi = s.size();
    for (;;) {
        while (hi > lo && s[hi - 1] == s[lo])
            --hi;
        if (hi - lo < 3)
            return {};
        if (s[hi - 1] == s[lo + 1])
            lo += 1, hi -= 1; // backtrack through s[lo]
        else if (s[hi - 2] == s[lo])
            hi -= 2; // backtrack through s[hi-1]
        else
            break;
    }
    return Word(s.begin() + static_cast<long>(lo), s.begin() + static_cast<long>(hi));
}

inline Word canonical_rotation(const Word& w)
{
    const std::size_t k = w.size();
    std::size_t best = 0;
    for (std::size_t r = 1; r < k; ++r)
        for (std::size_t i = 0; i < k; ++i) {
            Vertex x = w[(r + i) % k], y = w[(best + i) % k];
            if (x != y) {
                if (x < y)
                    best = r;
                break;
            }
        }
    Word out(k);
    for (std::size_t i = 0; i < k; ++i)
        out[i] = w[(best + i) % k];
    return out;
}

struct WordHash {
    std::size_t operator()(const Word& w) const
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (Vertex v : w)
            h = (h ^ v) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

/// Minimum number of faces in a mod-2 chain bounding a word: a consistent lower bound on area.
class F2FillingNorm {
public:
    explicit F2FillingNorm(const TwoComplex& x) : x_(x)
    {
        const std::size_t E = x.num_edges(), F = x.num_faces();
        ew_ = (E + 63) / 64;
        fw_ = (F + 63) / 64;
        for (std::size_t f = 0; f < F; ++f) {
            Bits col(ew_, 0), combo(fw_, 0);
            for (const Edge& e : x.faces()[f].edges()) {
                std::size_t i = x.edge_index(e);
                col[i / 64] ^= 1ULL << (i % 64);
            }
            combo[f / 64] |= 1ULL << (f % 64);
            for (const auto& [p, bcol, bcombo] : basis_)
                if (col[p / 64] >> (p % 64) & 1ULL) {
                    xor_into(col, bcol);
                    xor_into(combo, bcombo);
                }
            std::size_t p = lowest(col);
            if (p == SIZE_MAX) {
                kernel_.push_back(combo);
                continue;
            }
            for (auto& [q, bcol, bcombo] : basis_)
                if (bcol[p / 64] >> (p % 64) & 1ULL) {
                    xor_into(bcol, col);
                    xor_into(bcombo, combo);
                }
            basis_.push_back({p, col, combo});
        }
    }

    /// nullopt when the word is not a mod-2 boundary.
    std::optional<std::size_t> operator()(const Word& w) const
    {
        Bits rhs(ew_, 0), sol(fw_, 0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::size_t e = x_.edge_index(Edge::of(w[i], w[(i + 1) % w.size()]));
            rhs[e / 64] ^= 1ULL << (e % 64);
        }
        for (const auto& [p, bcol, bcombo] : basis_)
            if (rhs[p / 64] >> (p % 64) & 1ULL) {
                xor_into(rhs, bcol);
                xor_into(sol, bcombo);
            }
        if (lowest(rhs) != SIZE_MAX)
            return std::nullopt;
        if (kernel_.size() > kMaxKernel)
            return 0;
        std::size_t best = weight(sol);
        Bits cur = sol;
        // Gray-code walk over the mod-2 cycle space
        for (std::uint64_t g = 1; g < (1ULL << kernel_.size()); ++g) {
            xor_into(cur, kernel_[static_cast<std::size_t>(__builtin_ctzll(g))]);
            best = std::min(best, weight(cur));
        }
        return best;
    }

private:
    using Bits = std::vector<std::uint64_t>;
    static constexpr std::size_t kMaxKernel = 16;

    static void xor_into(Bits& a, const Bits& b)
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] ^= b[i];
    }
    static std::size_t lowest(const Bits& a)
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i])
                return i * 64 + static_cast<std::size_t>(__builtin_ctzll(a[i]));
        return SIZE_MAX;
    }
    static std::size_t weight(const Bits& a)
    {
        std::size_t w = 0;
        for (auto x : a)
            w += static_cast<std::size_t>(__builtin_popcountll(x));
        return w;
    }

    const TwoComplex& x_;
    std::size_t ew_ = 0, fw_ = 0;
    std::vector<std::tuple<std::size_t, Bits, Bits>> basis_;
    std::vector<Bits> kernel_;
};

inline Word checked_word(const TwoComplex& x, const EdgeLoop& loop)
{
    const auto& w = loop.vertices;
    for (std::size_t i = 0; i < w.size() && w.size() > 1; ++i) {
        Vertex a = w[i], b = w[(i + 1) % w.size()];
        if (a == b || !x.has_edge(Edge::of(a, b)))
            throw ComplexError("loop step " + std::to_string(a) + "->" + std::to_string(b) + " is not an edge");
    }
    if (w.size() == 1 && !x.has_vertex(w[0]))
        throw ComplexError("loop vertex " + std::to_string(w[0]) + " is not in the complex");
    return w;
}

} // namespace detail

constexpr std::size_t kFillingStateBudget = 2'000'000;

/// Minimal number of unit face moves rewriting the loop to the empty word, searching reduced
/// cyclic words of length at most length_cap (A* guided by the mod-2 filling norm).
inline FillingResult filling_area(const TwoComplex& x, const EdgeLoop& loop, std::size_t area_cap,
                                  std::size_t length_cap, std::size_t state_budget = kFillingStateBudget)
{
    using detail::Word;
    FillingResult out;
    out.area_cap = area_cap;
    out.length_cap = length_cap;
    Word start = detail::canonical_rotation(detail::reduce_word(detail::checked_word(x, loop)));
    if (start.empty()) {
        out.outcome = FillingOutcome::Area;
        return out;
    }
    detail::F2FillingNorm norm(x);
    auto h0 = norm(start);
    if (!h0) {
        out.homologically_nontrivial = true;
        return out;
    }
    if (start.size() > length_cap)
        return out;
    auto at_edge = faces_at_edges(x);

    struct Node {
        Word word;
        std::size_t g;
        std::size_t parent;
        FillingMove move;
    };
    std::vector<Node> nodes;
    std::unordered_map<Word, std::size_t, detail::WordHash> index;
    // (f, -g, node): smallest f first, deeper nodes first among ties
    using Entry = std::tuple<std::size_t, long, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    nodes.push_back({start, 0, SIZE_MAX, {}});
    index.emplace(start, 0);
    open.emplace(*h0, 0L, 0);
    std::vector<char> closed{0};

    auto relax = [&](std::size_t from, Word next, FillingMove mv) -> std::optional<std::size_t> {
        next = detail::reduce_word(next);
        if (next.size() > length_cap)
            return std::nullopt;
        next = detail::canonical_rotation(next);
        std::size_t g = nodes[from].g + 1;
        auto it = index.find(next);
        if (it != index.end()) {
            Node& n = nodes[it->second];
            if (n.g <= g)
                return std::nullopt;
            n.g = g;
            n.parent = from;
            n.move = mv;
            closed[it->second] = 0;
            std::size_t h = next.empty() ? 0 : *norm(next);
            open.emplace(g + h, -static_cast<long>(g), it->second);
            return it->second;
        }
        std::size_t id = nodes.size();
        std::size_t h = next.empty() ? 0 : *norm(next);
        nodes.push_back({next, g, from, mv});
        closed.push_back(0);
        index.emplace(std::move(next), id);
        open.emplace(g + h, -static_cast<long>(g), id);
        return id;
    };

    while (!open.empty()) {
        auto [f, neg_g, id] = open.top();
        open.pop();
        if (closed[id] || static_cast<std::size_t>(-neg_g) != nodes[id].g)
            continue;
        closed[id] = 1;
        if (nodes[id].word.empty()) {
            out.area = nodes[id].g;
            out.outcome = out.area <= area_cap ? FillingOutcome::Area : FillingOutcome::NullHomotopicBeyondCap;
            for (std::size_t k = id; nodes[k].parent != SIZE_MAX; k = nodes[k].parent)
                out.certificate.push_back(nodes[k].move);
            std::reverse(out.certificate.begin(), out.certificate.end());
            out.states = nodes.size();
            return out;
        }
        if (nodes.size() > state_budget)
            break;
        const Word w = nodes[id].word;
        const std::size_t k = w.size();
        for (std::size_t i = 0; i < k; ++i) {
            Vertex a = w[i], b = w[(i + 1) % k];
            for (std::size_t fi : at_edge[x.edge_index(Edge::of(a, b))]) {
                Vertex c = x.faces()[fi].opposite(Edge::of(a, b));
                Word next;
                next.reserve(k + 1);
                next.insert(next.end(), w.begin(), w.begin() + static_cast<long>(i) + 1);
                next.push_back(c);
                next.insert(next.end(), w.begin() + static_cast<long>(i) + 1, w.end());
                relax(id, std::move(next), {FillingMove::Expand, a, b, c});
            }
            Vertex c = b, d = w[(i + 2) % k];
            if (k >= 3 && a != d && x.has_face(Face::of(a, c, d))) {
                Word next;
                next.reserve(k - 1);
                for (std::size_t j = 0; j < k; ++j)
                    if (j != (i + 1) % k)
                        next.push_back(w[j]);
                relax(id, std::move(next), {FillingMove::Contract, a, d, c});
            }
        }
    }
    out.states = nodes.size();
    return out;
}

/// Checks that the moves, each applied at some occurrence, rewrite the loop to the empty word.
inline bool replay_certificate(const TwoComplex& x, const EdgeLoop& loop, const std::vector<FillingMove>& moves)
{
    using detail::Word;
    Word start = detail::reduce_word(detail::checked_word(x, loop));
    for (const auto& m : moves)
        if (!x.has_face(Face::of(m.a, m.b, m.c)))
            return false;
    auto rec = [&](auto&& self, const Word& w, std::size_t step) -> bool {
        if (step == moves.size())
            return w.empty();
        const FillingMove& m = moves[step];
        const std::size_t k = w.size();
        for (std::size_t i = 0; i < k; ++i) {
            if (m.kind == FillingMove::Expand && w[i] == m.a && w[(i + 1) % k] == m.b) {
                Word next(w.begin(), w.begin() + static_cast<long>(i) + 1);
                next.push_back(m.c);
                next.insert(next.end(), w.begin() + static_cast<long>(i) + 1, w.end());
                if (self(self, detail::reduce_word(next), step + 1))
                    return true;
            }
            if (m.kind == FillingMove::Contract && k >= 3 && w[i] == m.a && w[(i + 1) % k] == m.c &&
                w[(i + 2) % k] == m.b) {
                Word next;
                for (std::size_t j = 0; j < k; ++j)
                    if (j != (i + 1) % k)
                        next.push_back(w[j]);
                if (self(self, detail::reduce_word(next), step + 1))
                    return true;
            }
        }
        return false;
    };
    return rec(rec, start, 0);
}

struct IsoperimetricEstimate {
    std::optional<Rational> ratio;
    EdgeLoop witness;
    std::size_t witness_area = 0;
    std::size_t loops_examined = 0;
    std::size_t loops_filled = 0;
    std::string label = "upper bound on I(X) over simple loops within the length and area caps";
};

/// min |g|/A(g) over simple edge cycles g of length <= length_cap with 1 <= A(g) <= area_cap.
inline IsoperimetricEstimate empirical_isoperimetric(const TwoComplex& x, std::size_t length_cap, std::size_t area_cap)
{
    IsoperimetricEstimate est;
    auto cycles = simple_cycles(x, length_cap);
    est.loops_examined = cycles.size();
    // null-homotopic loops are integral boundaries; skip the rest cheaply
    auto trivial = detail::BoundaryTest(x, Coefficients::integers()).trivial(cycles);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (!trivial[i])
            continue;
        EdgeLoop g{cycles[i]};
        auto r = filling_area(x, g, area_cap, length_cap);
        if (r.outcome != FillingOutcome::Area || r.area == 0)
            continue;
        ++est.loops_filled;
        Rational q(static_cast<std::int64_t>(g.length()), static_cast<std::int64_t>(r.area));
        if (!est.ratio || q < *est.ratio) {
            est.ratio = q;
            est.witness = g;
            est.witness_area = r.area;
        }
    }
    return est;
}

} // namespace lmc
