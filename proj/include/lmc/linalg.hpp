#pragma once

// Exact sparse linear algebra over Z, Q and Z/p for boundary matrices.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lmc {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse integer matrix stored by rows; every row is sorted by column and has no zeros.
struct SparseMatrix {
    using Entry = std::pair<std::uint32_t, std::int64_t>;
    using Row = std::vector<Entry>;

    std::size_t cols = 0;
    std::vector<Row> rows;

    std::size_t num_rows() const { return rows.size(); }

    SparseMatrix transposed() const
    {
        SparseMatrix t;
        t.cols = rows.size();
        t.rows.resize(cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (auto [c, v] : rows[i])
                t.rows[c].emplace_back(static_cast<std::uint32_t>(i), v);
        return t;
    }
};

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

namespace modular {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

inline std::uint64_t reduce(std::int64_t v, std::uint64_t p)
{
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
        if (n % q == 0)
            return n == q;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

/// Two distinct 62-bit primes drawn from a fixed-seed SplitMix64 stream.
inline const std::pair<std::uint64_t, std::uint64_t>& check_primes()
{
    static const std::pair<std::uint64_t, std::uint64_t> primes = [] {
        std::uint64_t state = 0x6c6d2d636f6d706cULL;
        auto next = [&state] {
            std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        auto draw = [&] {
            std::uint64_t c = (next() >> 2) | (1ULL << 61) | 1ULL;
            while (!is_prime(c))
                c += 2;
            return c;
        };
        std::uint64_t p1 = draw(), p2 = draw();
        while (p2 == p1)
            p2 = draw();
        return std::pair{p1, p2};
    }();
    return primes;
}

} // namespace modular

/// Rank over Z/p (p prime) by incremental sparse echelon reduction.
inline std::size_t rank_mod_p(const SparseMatrix& m, std::uint64_t p)
{
    using Row = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
    std::vector<Row> pivot(m.cols);
    std::vector<char> has(m.cols, 0);
    std::size_t rank = 0;
    Row row, tmp;
    for (const auto& src : m.rows) {
        row.clear();
        for (auto [c, v] : src) {
            std::uint64_t r = modular::reduce(v, p);
            if (r)
                row.emplace_back(c, r);
        }
        while (!row.empty()) {
            std::uint32_t lead = row.front().first;
            if (!has[lead]) {
                std::uint64_t inv = modular::inverse(row.front().second, p);
                for (auto& e : row)
                    e.second = modular::mul(e.second, inv, p);
                pivot[lead] = row;
                has[lead] = 1;
                ++rank;
                break;
            }
            // row -= row[lead] * pivot[lead]
            std::uint64_t factor = row.front().second;
            const Row& pv = pivot[lead];
            tmp.clear();
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < pv.size()) {
                if (j == pv.size() || (i < row.size() && row[i].first < pv[j].first)) {
                    tmp.push_back(row[i++]);
                } else if (i == row.size() || pv[j].first < row[i].first) {
                    tmp.emplace_back(pv[j].first, (p - modular::mul(factor, pv[j].second, p)) % p);
                    ++j;
                } else {
                    std::uint64_t sub = modular::mul(factor, pv[j].second, p);
                    std::uint64_t v = row[i].second >= sub ? row[i].second - sub : row[i].second + p - sub;
                    if (v)
                        tmp.emplace_back(row[i].first, v);
                    ++i;
                    ++j;
                }
            }
            row.swap(tmp);
        }
    }
    return rank;
}

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("int64 overflow in fraction-free elimination");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("int64 overflow in fraction-free elimination");
    return r;
}

inline std::int64_t int_abs(std::int64_t a) { return a < 0 ? -a : a; }
inline BigInt int_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline std::int64_t int_gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline BigInt int_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline std::int64_t mul_int(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
inline BigInt mul_int(const BigInt& a, const BigInt& b) { return a * b; }
inline std::int64_t sub_int(std::int64_t a, std::int64_t b) { return checked_sub(a, b); }
inline BigInt sub_int(const BigInt& a, const BigInt& b) { return a - b; }

/// Rank over Q by fraction-free elimination: r <- p*r - r_lead*pivot, then divide by the row content.
template <typename Int>
std::size_t rank_fraction_free(const SparseMatrix& m)
{
    using Row = std::vector<std::pair<std::uint32_t, Int>>;
    std::vector<Row> pivot(m.cols);
    std::vector<char> has(m.cols, 0);
    std::size_t rank = 0;
    Row row, tmp;
    for (const auto& src : m.rows) {
        row.clear();
        for (auto [c, v] : src)
            if (v != 0)
                row.emplace_back(c, Int(v));
        while (!row.empty()) {
            std::uint32_t lead = row.front().first;
            if (!has[lead]) {
                Int g = 0;
                for (const auto& e : row)
                    g = int_gcd(g, int_abs(e.second));
                bool neg = row.front().second < 0;
                for (auto& e : row) {
                    e.second /= g;
                    if (neg)
                        e.second = -e.second;
                }
                pivot[lead] = row;
                has[lead] = 1;
                ++rank;
                break;
            }
            const Row& pv = pivot[lead];
            Int a = pv.front().second; // > 0
            Int b = row.front().second;
            Int g = int_gcd(int_abs(a), int_abs(b));
            Int ra = a / g, rb = b / g;
            tmp.clear();
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < pv.size()) {
                if (j == pv.size() || (i < row.size() && row[i].first < pv[j].first)) {
                    tmp.emplace_back(row[i].first, mul_int(ra, row[i].second));
                    ++i;
                } else if (i == row.size() || pv[j].first < row[i].first) {
                    tmp.emplace_back(pv[j].first, sub_int(Int(0), mul_int(rb, pv[j].second)));
                    ++j;
                } else {
                    Int v = sub_int(mul_int(ra, row[i].second), mul_int(rb, pv[j].second));
                    if (v != 0)
                        tmp.emplace_back(row[i].first, v);
                    ++i;
                    ++j;
                }
            }
            Int content = 0;
            for (const auto& e : tmp)
                content = int_gcd(content, int_abs(e.second));
            if (content > 1)
                for (auto& e : tmp)
                    e.second /= content;
            row.swap(tmp);
        }
    }
    return rank;
}

} // namespace detail

class RankMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rank over Q, cross-checked against the rank modulo two large primes.
inline std::size_t rank_rational(const SparseMatrix& m)
{
    std::size_t r;
    try {
        r = detail::rank_fraction_free<std::int64_t>(m);
    } catch (const OverflowError&) {
        r = detail::rank_fraction_free<BigInt>(m);
    }
    const auto& [p1, p2] = modular::check_primes();
    std::size_t r1 = rank_mod_p(m, p1), r2 = rank_mod_p(m, p2);
    if (r1 != r || r2 != r)
        throw RankMismatch("rank disagreement: Q=" + std::to_string(r) + " mod " + std::to_string(p1) + "=" +
                           std::to_string(r1) + " mod " + std::to_string(p2) + "=" + std::to_string(r2) + " (" +
                           std::to_string(m.num_rows()) + "x" + std::to_string(m.cols) + ")");
    return r;
}

/// Diagonal reduction of an integer matrix by unimodular row and column operations, carrying a
/// set of right-hand-side vectors through the row operations. After reduction the matrix is
/// diag(d_1..d_r, 0..) in the transformed basis, and a RHS z is in the image of the original
/// matrix over a coefficient ring exactly when the transformed z satisfies the diagonal system.
class LatticeReducer {
public:
    /// `m` has rows indexed like the RHS vectors (e.g. edges) and columns as generators (e.g. faces).
    LatticeReducer(const SparseMatrix& m, std::vector<std::vector<BigInt>> rhs = {}) : rhs_(std::move(rhs))
    {
        reduce(m);
    }

    const std::vector<BigInt>& diagonal() const { return diagonal_; }
    std::size_t rank() const { return dropped_units_ + diagonal_.size(); }

    /// Invariant factors greater than one (the torsion of the cokernel).
    std::vector<BigInt> torsion() const
    {
        std::vector<BigInt> d = diagonal_;
        for (auto& x : d)
            x = detail::int_abs(x);
        // gcd/lcm normalisation into a divisibility chain
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                BigInt g = boost::multiprecision::gcd(d[i], d[j]);
                BigInt l = d[i] / g * d[j];
                d[i] = g;
                d[j] = l;
            }
        std::vector<BigInt> out;
        for (const auto& x : d)
            if (x > 1)
                out.push_back(x);
        return out;
    }

    /// modulus 0 means Z, modulus < 0 means Q, otherwise Z/modulus.
    bool in_image(std::size_t rhs_index, long long modulus) const
    {
        const auto& z = transformed_[rhs_index];
        for (std::size_t k = 0; k < z.size(); ++k) {
            const BigInt& zk = z[k];
            if (k < diagonal_.size() + dropped_units_ && k >= dropped_units_) {
                const BigInt& d = diagonal_[k - dropped_units_];
                if (modulus < 0)
                    continue;
                if (modulus == 0) {
                    if (zk % d != 0)
                        return false;
                } else {
                    BigInt m(modulus);
                    BigInt g = boost::multiprecision::gcd(detail::int_abs(d), m);
                    BigInt r = zk % m;
                    if (r % g != 0)
                        return false;
                }
            } else if (k >= diagonal_.size() + dropped_units_) {
                if (modulus <= 0) {
                    if (zk != 0)
                        return false;
                } else if (zk % BigInt(modulus) != 0) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    void reduce(const SparseMatrix& m)
    {
        const std::size_t nrows = m.num_rows();
        const std::size_t nrhs = rhs_.size();
        // Phase 1: sparse elimination on unit pivots. Each unit pivot contributes a divisor 1 and
        // its row carries no constraint, so both the row and the column can be discarded.
        std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> rows(nrows);
        for (std::size_t i = 0; i < nrows; ++i)
            for (auto [c, v] : m.rows[i])
                rows[i].emplace_back(c, BigInt(v));
        std::vector<std::vector<BigInt>> rhs_rows(nrows, std::vector<BigInt>(nrhs));
        for (std::size_t k = 0; k < nrhs; ++k)
            for (std::size_t i = 0; i < nrows && i < rhs_[k].size(); ++i)
                rhs_rows[i][k] = rhs_[k][i];
        std::vector<std::vector<std::uint32_t>> col_rows(m.cols);
        for (std::size_t i = 0; i < nrows; ++i)
            for (const auto& e : rows[i])
                col_rows[e.first].push_back(static_cast<std::uint32_t>(i));
        std::vector<char> row_alive(nrows, 1), col_alive(m.cols, 1);
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t i = 0; i < nrows; ++i) {
                if (!row_alive[i])
                    continue;
                // shortest unit entry in this row
                std::size_t best = SIZE_MAX;
                for (std::size_t t = 0; t < rows[i].size(); ++t)
                    if (col_alive[rows[i][t].first] && detail::int_abs(rows[i][t].second) == 1) {
                        best = t;
                        break;
                    }
                if (best == SIZE_MAX)
                    continue;
                std::uint32_t col = rows[i][best].first;
                BigInt u = rows[i][best].second;
                for (std::uint32_t k : col_rows[col]) {
                    if (k == i || !row_alive[k])
                        continue;
                    auto it = std::find_if(rows[k].begin(), rows[k].end(),
                                           [col](const auto& e) { return e.first == col; });
                    if (it == rows[k].end() || it->second == 0)
                        continue;
                    BigInt factor = it->second * u; // u = +-1 so u^{-1} = u
                    add_row(rows[k], rows[i], -factor, col_rows, static_cast<std::uint32_t>(k));
                    for (std::size_t r = 0; r < nrhs; ++r)
                        rhs_rows[k][r] -= factor * rhs_rows[i][r];
                }
                row_alive[i] = 0;
                col_alive[col] = 0;
                ++dropped_units_;
                progress = true;
            }
        }
        // Phase 2: dense reduction of the remainder.
        std::vector<std::size_t> live_rows, live_cols;
        for (std::size_t i = 0; i < nrows; ++i)
            if (row_alive[i])
                live_rows.push_back(i);
        std::vector<std::size_t> col_pos(m.cols, SIZE_MAX);
        for (std::size_t c = 0; c < m.cols; ++c)
            if (col_alive[c]) {
                col_pos[c] = live_cols.size();
                live_cols.push_back(c);
            }
        const std::size_t R = live_rows.size(), C = live_cols.size();
        std::vector<std::vector<BigInt>> a(R, std::vector<BigInt>(C));
        std::vector<std::vector<BigInt>> z(R, std::vector<BigInt>(nrhs));
        for (std::size_t r = 0; r < R; ++r) {
            for (const auto& e : rows[live_rows[r]])
                if (col_alive[e.first])
                    a[r][col_pos[e.first]] = e.second;
            z[r] = rhs_rows[live_rows[r]];
        }
        std::size_t t = 0;
        while (t < R && t < C) {
            // smallest nonzero |entry| in the trailing block
            std::size_t pr = R, pc = C;
            for (std::size_t r = t; r < R; ++r)
                for (std::size_t c = t; c < C; ++c)
                    if (a[r][c] != 0 && (pr == R || detail::int_abs(a[r][c]) < detail::int_abs(a[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == R)
                break;
            std::swap(a[t], a[pr]);
            std::swap(z[t], z[pr]);
            for (auto& row : a)
                std::swap(row[t], row[pc]);
            bool clean = false;
            while (!clean) {
                clean = true;
                for (std::size_t r = t + 1; r < R; ++r) {
                    if (a[r][t] == 0)
                        continue;
                    BigInt q = a[r][t] / a[t][t];
                    for (std::size_t c = t; c < C; ++c)
                        a[r][c] -= q * a[t][c];
                    for (std::size_t k = 0; k < nrhs; ++k)
                        z[r][k] -= q * z[t][k];
                    if (a[r][t] != 0) {
                        std::swap(a[t], a[r]);
                        std::swap(z[t], z[r]);
                        clean = false;
                    }
                }
                for (std::size_t c = t + 1; c < C; ++c) {
                    if (a[t][c] == 0)
                        continue;
                    BigInt q = a[t][c] / a[t][t];
                    for (std::size_t r = t; r < R; ++r)
                        a[r][c] -= q * a[r][t];
                    if (a[t][c] != 0) {
                        for (auto& row : a)
                            std::swap(row[t], row[c]);
                        clean = false;
                    }
                }
            }
            diagonal_.push_back(a[t][t]);
            ++t;
        }
        // Transformed RHS: unit rows first (always solvable), then the dense rows in order.
        transformed_.assign(nrhs, std::vector<BigInt>(dropped_units_ + R));
        for (std::size_t k = 0; k < nrhs; ++k)
            for (std::size_t r = 0; r < R; ++r)
                transformed_[k][dropped_units_ + r] = z[r][k];
    }

    static void add_row(std::vector<std::pair<std::uint32_t, BigInt>>& target,
                        const std::vector<std::pair<std::uint32_t, BigInt>>& source, const BigInt& factor,
                        std::vector<std::vector<std::uint32_t>>& col_rows, std::uint32_t target_index)
    {
        std::vector<std::pair<std::uint32_t, BigInt>> out;
        out.reserve(target.size() + source.size());
        std::size_t i = 0, j = 0;
        while (i < target.size() || j < source.size()) {
            if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
                out.push_back(target[i++]);
            } else if (i == target.size() || source[j].first < target[i].first) {
                col_rows[source[j].first].push_back(target_index);
                out.emplace_back(source[j].first, factor * source[j].second);
                ++j;
            } else {
                BigInt v = target[i].second + factor * source[j].second;
                if (v != 0)
                    out.emplace_back(target[i].first, v);
                ++i;
                ++j;
            }
        }
        target.swap(out);
    }

    std::vector<std::vector<BigInt>> rhs_;
    std::vector<std::vector<BigInt>> transformed_;
    std::vector<BigInt> diagonal_;
    std::size_t dropped_units_ = 0;
};

} // namespace lmc
