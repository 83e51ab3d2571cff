#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "tetris/cnf.hpp"

namespace tetris {

// Closeness sums are kept exact so that tie-breaks are reproducible.
using Rational = boost::rational<std::int64_t>;

enum class OrderingStrategy { NaiveDegree, GroupedOptimal, GroupedHeuristic, Treewidth, Minfill };

inline constexpr OrderingStrategy kAllOrderingStrategies[] = {
    OrderingStrategy::NaiveDegree, OrderingStrategy::GroupedOptimal, OrderingStrategy::GroupedHeuristic,
    OrderingStrategy::Treewidth, OrderingStrategy::Minfill};

std::string_view to_string(OrderingStrategy s);
std::optional<OrderingStrategy> parse_ordering_strategy(std::string_view name);

class VariableStats {
public:
    explicit VariableStats(int n = 0) : degree_(static_cast<std::size_t>(n) + 1, 0) {}

    int variable_count() const { return static_cast<int>(degree_.size()) - 1; }
    int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }

    // 1 / (size of the smallest clause holding both - 1); nullopt if the two
    // never share a clause.
    std::optional<Rational> closeness(int u, int v) const;

    // Size of the smallest shared clause, 0 if none.
    int smallest_shared_clause(int u, int v) const;

    const std::unordered_map<std::uint64_t, int> &pairs() const { return smallest_; }

private:
    friend VariableStats compute_stats(const CnfProblem &cnf);
    static std::uint64_t key(int u, int v);

    std::vector<int> degree_; // index 0 unused
    std::unordered_map<std::uint64_t, int> smallest_;
};

VariableStats compute_stats(const CnfProblem &cnf);

// Sum of closeness over all pairs of the group; absent pairs count 0.
Rational interconnectedness(std::span<const int> group, const VariableStats &stats);

Ordering order_naive_degree(const CnfProblem &cnf);
Ordering order_grouped_optimal(const CnfProblem &cnf);
Ordering order_grouped_heuristic(const CnfProblem &cnf);
// Greedy minimum-degree elimination (a treewidth upper-bound heuristic).
Ordering order_treewidth(const CnfProblem &cnf);
Ordering order_minfill(const CnfProblem &cnf);

Ordering compute_ordering(const CnfProblem &cnf, OrderingStrategy strategy);

} // namespace tetris
