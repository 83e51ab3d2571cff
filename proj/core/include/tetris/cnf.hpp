#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tetris/box.hpp"

namespace tetris {

// A disjunction of DIMACS-style signed literals, kept sorted by variable.
// A variable appears at most once.
struct Clause {
    std::vector<int> literals;

    bool empty() const { return literals.empty(); }
    std::size_t size() const { return literals.size(); }

    friend bool operator==(const Clause &, const Clause &) = default;
};

// Builds a clause from literals in any order. Duplicates are folded; returns
// false in `tautology` when both polarities of a variable occur.
Clause make_clause(std::span<const int> literals, bool *tautology = nullptr);

struct CnfProblem {
    int variable_count = 0;
    std::vector<Clause> clauses;
    std::vector<std::string> comments;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Reads DIMACS CNF. Tautological clauses count toward the header's clause
// total but are not retained. Content after a '%' line is ignored.
CnfProblem parse_dimacs(std::istream &in);
CnfProblem parse_dimacs(std::string_view text);

void write_dimacs(std::ostream &out, const CnfProblem &cnf);

// Global variable ordering: variable id (1-based) <-> box position (1-based).
class Ordering {
public:
    Ordering() = default;

    static Ordering identity(int n);
    // sequence[i] is the variable placed at position i+1.
    // Throws std::invalid_argument unless it is a permutation of 1..n.
    static Ordering from_sequence(std::vector<int> sequence);

    int size() const { return static_cast<int>(inverse_.size()); }
    int position_of(int variable) const { return forward_[static_cast<std::size_t>(variable - 1)]; }
    int variable_at(int position) const { return inverse_[static_cast<std::size_t>(position - 1)]; }
    const std::vector<int> &sequence() const { return inverse_; }

    friend bool operator==(const Ordering &, const Ordering &) = default;

private:
    std::vector<int> forward_; // variable-1 -> position
    std::vector<int> inverse_; // position-1 -> variable
};

// Negates the clause into a box: a positive literal forbids T, so the box
// holds F there; a negative literal gives T; absent variables are lambda.
Box clause_to_box(const Clause &clause, int n, const Ordering &ordering);
Clause box_to_clause(const Box &box, const Ordering &ordering);

// Full point (in box positions) -> signed literals in original numbering.
std::vector<int> point_to_literals(const Box &point, const Ordering &ordering);

} // namespace tetris
