#pragma once

// Dinic maximum flow with integer capacities.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace lmc {

class MaxFlow {
public:
    using Cap = std::int64_t;
    static constexpr Cap kInfinity = std::numeric_limits<Cap>::max() / 4;

    explicit MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), iter_(nodes) {}

    void add_edge(std::size_t from, std::size_t to, Cap cap)
    {
        adj_[from].push_back({to, adj_[to].size(), cap});
        adj_[to].push_back({from, adj_[from].size() - 1, 0});
    }

    Cap run(std::size_t s, std::size_t t)
    {
        Cap flow = 0;
        while (bfs(s, t)) {
            std::fill(iter_.begin(), iter_.end(), 0);
            while (Cap pushed = dfs(s, t, kInfinity))
                flow += pushed;
        }
        return flow;
    }

    /// Nodes reachable from s in the residual graph after run(): the source side of a minimum cut.
    std::vector<char> source_side(std::size_t s) const
    {
        std::vector<char> seen(adj_.size(), 0);
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (const Arc& a : adj_[u])
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = 1;
                    stack.push_back(a.to);
                }
        }
        return seen;
    }

private:
    struct Arc {
        std::size_t to, rev;
        Cap cap;
    };

    bool bfs(std::size_t s, std::size_t t)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (const Arc& a : adj_[u])
                if (a.cap > 0 && level_[a.to] < 0) {
                    level_[a.to] = level_[u] + 1;
                    q.push(a.to);
                }
        }
        return level_[t] >= 0;
    }

    Cap dfs(std::size_t u, std::size_t t, Cap limit)
    {
        if (u == t)
            return limit;
        for (std::size_t& i = iter_[u]; i < adj_[u].size(); ++i) {
            Arc& a = adj_[u][i];
            if (a.cap <= 0 || level_[a.to] != level_[u] + 1)
                continue;
            Cap d = dfs(a.to, t, std::min(limit, a.cap));
            if (d > 0) {
                a.cap -= d;
                adj_[a.to][a.rev].cap += d;
                return d;
            }
        }
        return 0;
    }

    std::vector<std::vector<Arc>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

} // namespace lmc
