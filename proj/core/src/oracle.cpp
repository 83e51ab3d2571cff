#include "tetris/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace tetris::oracle {

namespace {

// Clause as two bitmasks over variables (bit v-1).
struct MaskClause {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
};

std::vector<MaskClause> to_masks(const CnfProblem &cnf)
{
    if (cnf.variable_count < 0 || cnf.variable_count > kMaxBruteVariables)
        throw OracleRefusal("brute force refuses n = " + std::to_string(cnf.variable_count) + " (limit " +
                            std::to_string(kMaxBruteVariables) + ")");
    std::vector<MaskClause> out;
    for (const auto &c : cnf.clauses) {
        MaskClause m;
        for (int lit : c.literals) {
            const int v = std::abs(lit);
            if (v < 1 || v > cnf.variable_count)
                throw OracleRefusal("literal out of range");
            (lit > 0 ? m.pos : m.neg) |= std::uint32_t{1} << (v - 1);
        }
        out.push_back(m);
    }
    return out;
}

bool satisfies(const std::vector<MaskClause> &clauses, std::uint32_t assignment)
{
    for (const auto &c : clauses)
        if ((c.pos & assignment) == 0 && (c.neg & ~assignment) == 0)
            return false;
    return true;
}

} // namespace

std::uint64_t brute_count(const CnfProblem &cnf)
{
    const auto clauses = to_masks(cnf);
    std::uint64_t count = 0;
    const std::uint64_t total = std::uint64_t{1} << cnf.variable_count;
    for (std::uint64_t a = 0; a < total; ++a)
        count += satisfies(clauses, static_cast<std::uint32_t>(a)) ? 1 : 0;
    return count;
}

std::vector<std::vector<int>> brute_models(const CnfProblem &cnf)
{
    const auto clauses = to_masks(cnf);
    const int n = cnf.variable_count;
    std::vector<std::vector<int>> models;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        // x1 is the most significant bit of x.
        std::uint32_t a = 0;
        for (int v = 1; v <= n; ++v)
            if ((x >> (n - v)) & 1u)
                a |= std::uint32_t{1} << (v - 1);
        if (!satisfies(clauses, a))
            continue;
        std::vector<int> lits;
        for (int v = 1; v <= n; ++v)
            lits.push_back((a >> (v - 1)) & 1u ? v : -v);
        models.push_back(std::move(lits));
    }
    return models;
}

std::vector<Box> linear_containing(const std::vector<Box> &boxes, const Box &q)
{
    std::vector<Box> out;
    const auto &qt = q.trits();
    for (const auto &b : boxes) {
        const auto &bt = b.trits();
        if (bt.size() != qt.size())
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < bt.size() && ok; ++i)
            ok = bt[i] == Trit::Lambda || bt[i] == qt[i];
        if (ok)
            out.push_back(b);
    }
    return out;
}

std::optional<std::vector<int>> resolve_clauses(const std::vector<int> &a, const std::vector<int> &b)
{
    std::map<int, int> sign_a;
    for (int lit : a)
        sign_a[std::abs(lit)] = lit > 0 ? 1 : -1;
    int clashes = 0;
    int pivot = 0;
    for (int lit : b) {
        auto it = sign_a.find(std::abs(lit));
        if (it != sign_a.end() && it->second != (lit > 0 ? 1 : -1)) {
            ++clashes;
            pivot = std::abs(lit);
        }
    }
    if (clashes != 1)
        return std::nullopt;
    std::map<int, int> merged;
    for (int lit : a)
        if (std::abs(lit) != pivot)
            merged[std::abs(lit)] = lit;
    for (int lit : b)
        if (std::abs(lit) != pivot)
            merged[std::abs(lit)] = lit;
    std::vector<int> out;
    for (auto [v, lit] : merged)
        out.push_back(lit);
    return out;
}

std::uint64_t count_subgraphs(const InputGraph &g, const GraphQuery &query)
{
    const int V = g.vertex_count;
    const int k = query.size;
    if (V > kMaxSubgraphVertices || k > kMaxSubgraphSize || k < 2)
        throw OracleRefusal("subgraph oracle handles V <= 64 and 2 <= k <= 3");
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(V), std::vector<bool>(static_cast<std::size_t>(V)));
    for (auto [u, v] : g.edges) {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    std::uint64_t count = 0;
    if (k == 2) {
        for (int u = 0; u < V; ++u)
            for (int v = u + 1; v < V; ++v)
                count += adj[u][v] ? 1 : 0;
        return count;
    }
    for (int a = 0; a < V; ++a)
        for (int b = 0; b < V; ++b)
            for (int c = 0; c < V; ++c) {
                if (a == b || b == c || a == c)
                    continue;
                if (query.kind == QueryKind::Clique) {
                    if (a < b && b < c && adj[a][b] && adj[b][c] && adj[a][c])
                        ++count;
                } else if (a < c && adj[a][b] && adj[b][c]) {
                    ++count;
                }
            }
    return count;
}

} // namespace tetris::oracle
