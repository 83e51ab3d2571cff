#pragma once

#include <iosfwd>
#include <set>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "tetris/cnf.hpp"

namespace tetris {

// Undirected simple graph with dense 0-based vertex ids.
struct InputGraph {
    int vertex_count = 0;
    std::set<std::pair<int, int>> edges; // (u, v) with u < v

    bool has_edge(int u, int v) const
    {
        if (u == v)
            return false;
        return edges.count(u < v ? std::pair{u, v} : std::pair{v, u}) != 0;
    }
    void add_edge(int u, int v)
    {
        if (u != v)
            edges.insert(u < v ? std::pair{u, v} : std::pair{v, u});
    }
};

// SNAP-style edge list: "u v" per line, '#' comments. Ids are densified in
// order of first appearance; duplicates, reversed pairs and loops collapse.
InputGraph read_edge_list(std::istream &in);
InputGraph read_edge_list(std::string_view text);

enum class QueryKind { Clique, Path };

struct GraphQuery {
    QueryKind kind = QueryKind::Clique;
    int size = 3; // vertices in the pattern, >= 2
};

struct GraphQuerySpec {
    QueryKind kind;
    int size;
    int bits_per_vertex;
    // Slot pairs that must be joined by an edge.
    std::vector<std::pair<int, int>> edge_slots;

    int variable_count() const { return size * bits_per_vertex; }
    // 1-based variable of bit `bit` (0 = most significant) of slot `slot`.
    int variable(int slot, int bit) const { return slot * bits_per_vertex + bit + 1; }
};

GraphQuerySpec make_query_spec(const InputGraph &g, const GraphQuery &query);

struct GenerateOptions {
    int max_variables = 256;
    // Merge clause pairs that differ in one literal's polarity, to fixpoint.
    bool simplify = false;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Encodes the query so that models correspond one-to-one with occurrences:
// k-cliques as strictly increasing vertex tuples, k-vertex paths with
// distinct vertices and first endpoint < last endpoint.
CnfProblem generate_cnf(const InputGraph &g, const GraphQuery &query, const GenerateOptions &options = {});

// Merges clauses {A, x} and {A, -x} into {A} until none remain.
std::vector<Clause> simplify_clauses(std::vector<Clause> clauses);

// Slot vertices encoded by a model (signed literals, original numbering).
std::vector<int> decode_model(const GraphQuerySpec &spec, std::span<const int> model);

} // namespace tetris
