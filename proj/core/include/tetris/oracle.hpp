#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tetris/benchgen.hpp"
#include "tetris/box.hpp"
#include "tetris/cnf.hpp"

// Brute-force reference implementations. Deliberately naive and written
// without the solver/trie/box helpers, so they can be used to check them.
namespace tetris::oracle {

class OracleRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxBruteVariables = 24;
inline constexpr int kMaxSubgraphVertices = 64;
inline constexpr int kMaxSubgraphSize = 3;

// Counts satisfying assignments by trying all 2^n. Refuses n > 24.
std::uint64_t brute_count(const CnfProblem &cnf);

// All satisfying assignments as signed literal vectors, in increasing order
// of the binary number x1 x2 .. xn (x1 most significant, false = 0).
std::vector<std::vector<int>> brute_models(const CnfProblem &cnf);

// Boxes of `boxes` containing q, in input order.
std::vector<Box> linear_containing(const std::vector<Box> &boxes, const Box &q);

// Textbook resolution on literal sets. nullopt unless the clauses clash on
// exactly one variable. Result is sorted by variable.
std::optional<std::vector<int>> resolve_clauses(const std::vector<int> &a, const std::vector<int> &b);

// Occurrences of the query pattern: k-cliques, or k-vertex simple paths
// counted once per unordered endpoint pair. Refuses V > 64 or k > 3.
std::uint64_t count_subgraphs(const InputGraph &g, const GraphQuery &query);

} // namespace tetris::oracle
