#include "tetris/ordering.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tetris {

std::string_view to_string(OrderingStrategy s)
{
    switch (s) {
    case OrderingStrategy::NaiveDegree: return "naive-degree";
    case OrderingStrategy::GroupedOptimal: return "grouped-optimal";
    case OrderingStrategy::GroupedHeuristic: return "grouped-heuristic";
    case OrderingStrategy::Treewidth: return "treewidth";
    case OrderingStrategy::Minfill: return "minfill";
    }
    return "unknown";
}

std::optional<OrderingStrategy> parse_ordering_strategy(std::string_view name)
{
    for (auto s : kAllOrderingStrategies)
        if (to_string(s) == name)
            return s;
    return std::nullopt;
}

std::uint64_t VariableStats::key(int u, int v)
{
    if (u > v)
        std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

int VariableStats::smallest_shared_clause(int u, int v) const
{
    if (u == v)
        return 0;
    auto it = smallest_.find(key(u, v));
    return it == smallest_.end() ? 0 : it->second;
}

std::optional<Rational> VariableStats::closeness(int u, int v) const
{
    const int s = smallest_shared_clause(u, v);
    if (s == 0)
        return std::nullopt;
    return Rational(1, s - 1);
}

VariableStats compute_stats(const CnfProblem &cnf)
{
    VariableStats stats(cnf.variable_count);
    for (const auto &clause : cnf.clauses) {
        const int size = static_cast<int>(clause.size());
        for (std::size_t i = 0; i < clause.literals.size(); ++i) {
            const int u = std::abs(clause.literals[i]);
            ++stats.degree_[static_cast<std::size_t>(u)];
            for (std::size_t j = i + 1; j < clause.literals.size(); ++j) {
                const int v = std::abs(clause.literals[j]);
                auto [it, fresh] = stats.smallest_.try_emplace(VariableStats::key(u, v), size);
                if (!fresh)
                    it->second = std::min(it->second, size);
            }
        }
    }
    return stats;
}

Rational interconnectedness(std::span<const int> group, const VariableStats &stats)
{
    Rational sum(0);
    for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = i + 1; j < group.size(); ++j)
            if (auto c = stats.closeness(group[i], group[j]))
                sum += *c;
    return sum;
}

namespace {

std::vector<int> by_degree_descent(std::vector<int> vars, const VariableStats &stats)
{
    std::stable_sort(vars.begin(), vars.end(), [&](int a, int b) {
        if (stats.degree(a) != stats.degree(b))
            return stats.degree(a) > stats.degree(b);
        return a < b;
    });
    return vars;
}

std::vector<int> all_variables(int n)
{
    std::vector<int> vars(static_cast<std::size_t>(n));
    std::iota(vars.begin(), vars.end(), 1);
    return vars;
}

// Dense closeness weights scaled to integers by the lcm of all denominators;
// falls back to exact rationals when that lcm gets too large.
template <class W> struct WeightMatrix {
    int n = 0;
    std::vector<W> w; // (n+1) x (n+1)

    W at(int u, int v) const { return w[static_cast<std::size_t>(u) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(v)]; }
};

std::optional<WeightMatrix<std::int64_t>> integer_weights(const VariableStats &stats)
{
    constexpr std::int64_t kLimit = std::int64_t{1} << 50;
    std::int64_t scale = 1;
    for (const auto &[k, size] : stats.pairs()) {
        scale = std::lcm(scale, static_cast<std::int64_t>(size - 1));
        if (scale > kLimit)
            return std::nullopt;
    }
    const int n = stats.variable_count();
    WeightMatrix<std::int64_t> m;
    m.n = n;
    m.w.assign(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), 0);
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            if (int s = stats.smallest_shared_clause(u, v))
                m.w[static_cast<std::size_t>(u) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(v)] = scale / (s - 1);
    return m;
}

WeightMatrix<Rational> rational_weights(const VariableStats &stats)
{
    const int n = stats.variable_count();
    WeightMatrix<Rational> m;
    m.n = n;
    m.w.assign(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), Rational(0));
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            if (auto c = stats.closeness(u, v))
                m.w[static_cast<std::size_t>(u) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(v)] = *c;
    return m;
}

template <class W>
std::vector<int> grouped_optimal(const VariableStats &stats, const WeightMatrix<W> &m)
{
    const int n = stats.variable_count();
    std::vector<int> remaining = all_variables(n);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));

    while (remaining.size() >= 4) {
        const std::size_t r = remaining.size();
        bool have = false;
        W best_ic{};
        int best_deg = 0;
        std::array<int, 4> best{};
        for (std::size_t a = 0; a < r; ++a) {
            const int va = remaining[a];
            for (std::size_t b = a + 1; b < r; ++b) {
                const int vb = remaining[b];
                const W ab = m.at(va, vb);
                for (std::size_t c = b + 1; c < r; ++c) {
                    const int vc = remaining[c];
                    const W abc = ab + m.at(va, vc) + m.at(vb, vc);
                    for (std::size_t d = c + 1; d < r; ++d) {
                        const int vd = remaining[d];
                        const W ic = abc + m.at(va, vd) + m.at(vb, vd) + m.at(vc, vd);
                        if (have && ic < best_ic)
                            continue;
                        const int deg = stats.degree(va) + stats.degree(vb) + stats.degree(vc) + stats.degree(vd);
                        if (!have || best_ic < ic || deg > best_deg) {
                            have = true;
                            best_ic = ic;
                            best_deg = deg;
                            best = {va, vb, vc, vd};
                        }
                    }
                }
            }
        }
        for (int v : by_degree_descent({best.begin(), best.end()}, stats))
            order.push_back(v);
        std::erase_if(remaining, [&](int v) { return std::find(best.begin(), best.end(), v) != best.end(); });
    }
    for (int v : by_degree_descent(remaining, stats))
        order.push_back(v);
    return order;
}

template <class W>
std::vector<int> grouped_heuristic(const VariableStats &stats, const WeightMatrix<W> &m)
{
    const int n = stats.variable_count();
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<int> group;

    for (int placed = 0; placed < n; ++placed) {
        if (group.size() == 4)
            group.clear();
        int pick = 0;
        W pick_score{};
        for (int v = 1; v <= n; ++v) {
            if (used[static_cast<std::size_t>(v)])
                continue;
            W score{};
            for (int x : group)
                score = score + m.at(v, x);
            // Seeds compare on degree alone (score stays zero).
            bool better = pick == 0 || pick_score < score ||
                          (!(score < pick_score) && stats.degree(v) > stats.degree(pick));
            if (better) {
                pick = v;
                pick_score = score;
            }
        }
        used[static_cast<std::size_t>(pick)] = 1;
        group.push_back(pick);
        order.push_back(pick);
    }
    return order;
}

using Graph = std::vector<std::set<int>>;

Graph primal_graph(const CnfProblem &cnf)
{
    Graph g(static_cast<std::size_t>(cnf.variable_count) + 1);
    for (const auto &clause : cnf.clauses)
        for (std::size_t i = 0; i < clause.literals.size(); ++i)
            for (std::size_t j = i + 1; j < clause.literals.size(); ++j) {
                const int u = std::abs(clause.literals[i]);
                const int v = std::abs(clause.literals[j]);
                g[static_cast<std::size_t>(u)].insert(v);
                g[static_cast<std::size_t>(v)].insert(u);
            }
    return g;
}

std::size_t fill_in(const Graph &g, int v)
{
    const auto &nb = g[static_cast<std::size_t>(v)];
    std::size_t missing = 0;
    for (auto a = nb.begin(); a != nb.end(); ++a)
        for (auto b = std::next(a); b != nb.end(); ++b)
            if (!g[static_cast<std::size_t>(*a)].count(*b))
                ++missing;
    return missing;
}

// Greedy elimination; `fill_first` picks min fill (then degree), otherwise
// min degree (then fill). Ties fall to the smaller id.
std::vector<int> eliminate(const CnfProblem &cnf, bool fill_first)
{
    Graph g = primal_graph(cnf);
    const int n = cnf.variable_count;
    std::vector<char> gone(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        int pick = 0;
        std::pair<std::size_t, std::size_t> pick_key{};
        for (int v = 1; v <= n; ++v) {
            if (gone[static_cast<std::size_t>(v)])
                continue;
            const std::size_t deg = g[static_cast<std::size_t>(v)].size();
            const std::size_t fill = fill_in(g, v);
            const auto key = fill_first ? std::pair{fill, deg} : std::pair{deg, fill};
            if (pick == 0 || key < pick_key) {
                pick = v;
                pick_key = key;
            }
        }
        const auto nb = g[static_cast<std::size_t>(pick)];
        for (auto a = nb.begin(); a != nb.end(); ++a) {
            g[static_cast<std::size_t>(*a)].erase(pick);
            for (auto b = std::next(a); b != nb.end(); ++b) {
                g[static_cast<std::size_t>(*a)].insert(*b);
                g[static_cast<std::size_t>(*b)].insert(*a);
            }
        }
        g[static_cast<std::size_t>(pick)].clear();
        gone[static_cast<std::size_t>(pick)] = 1;
        order.push_back(pick);
    }
    return order;
}

} // namespace

Ordering order_naive_degree(const CnfProblem &cnf)
{
    const VariableStats stats = compute_stats(cnf);
    return Ordering::from_sequence(by_degree_descent(all_variables(cnf.variable_count), stats));
}

Ordering order_grouped_optimal(const CnfProblem &cnf)
{
    const VariableStats stats = compute_stats(cnf);
    if (auto m = integer_weights(stats))
        return Ordering::from_sequence(grouped_optimal(stats, *m));
    return Ordering::from_sequence(grouped_optimal(stats, rational_weights(stats)));
}

Ordering order_grouped_heuristic(const CnfProblem &cnf)
{
    const VariableStats stats = compute_stats(cnf);
    if (auto m = integer_weights(stats))
        return Ordering::from_sequence(grouped_heuristic(stats, *m));
    return Ordering::from_sequence(grouped_heuristic(stats, rational_weights(stats)));
}

Ordering order_treewidth(const CnfProblem &cnf)
{
    return Ordering::from_sequence(eliminate(cnf, false));
}

Ordering order_minfill(const CnfProblem &cnf)
{
    return Ordering::from_sequence(eliminate(cnf, true));
}

Ordering compute_ordering(const CnfProblem &cnf, OrderingStrategy strategy)
{
    switch (strategy) {
    case OrderingStrategy::NaiveDegree: return order_naive_degree(cnf);
    case OrderingStrategy::GroupedOptimal: return order_grouped_optimal(cnf);
    case OrderingStrategy::GroupedHeuristic: return order_grouped_heuristic(cnf);
    case OrderingStrategy::Treewidth: return order_treewidth(cnf);
    case OrderingStrategy::Minfill: return order_minfill(cnf);
    }
    throw std::invalid_argument("unknown ordering strategy");
}

} // namespace tetris
