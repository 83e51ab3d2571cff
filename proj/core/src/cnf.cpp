#include "tetris/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace tetris {

Clause make_clause(std::span<const int> literals, bool *tautology)
{
    Clause c;
    c.literals.assign(literals.begin(), literals.end());
    std::sort(c.literals.begin(), c.literals.end(), [](int a, int b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
    });
    c.literals.erase(std::unique(c.literals.begin(), c.literals.end()), c.literals.end());
    bool taut = false;
    for (std::size_t i = 1; i < c.literals.size(); ++i)
        if (c.literals[i] == -c.literals[i - 1])
            taut = true;
    if (tautology)
        *tautology = taut;
    return c;
}

namespace {

bool parse_int(std::string_view token, long long &out)
{
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

} // namespace

CnfProblem parse_dimacs(std::istream &in)
{
    CnfProblem cnf;
    bool have_header = false;
    long long declared_clauses = 0;
    long long seen_clauses = 0;
    std::vector<int> pending;
    std::size_t pending_line = 0;

    auto finish_clause = [&](std::size_t line_no) {
        ++seen_clauses;
        if (seen_clauses > declared_clauses)
            throw ParseError(line_no, "more clauses than declared in header (" + std::to_string(declared_clauses) + ")");
        bool taut = false;
        Clause c = make_clause(pending, &taut);
        if (!taut)
            cnf.clauses.push_back(std::move(c));
        pending.clear();
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (!view.empty() && view.back() == '\r')
            view.remove_suffix(1);
        auto tokens = split_ws(view);
        if (tokens.empty())
            continue;
        if (tokens[0][0] == 'c') {
            cnf.comments.emplace_back(view.size() > 1 ? view.substr(std::min<std::size_t>(2, view.size())) : "");
            continue;
        }
        if (tokens[0] == "%")
            break;
        if (tokens[0] == "p") {
            if (have_header)
                throw ParseError(line_no, "duplicate problem line");
            long long n = 0;
            if (tokens.size() != 4 || tokens[1] != "cnf" || !parse_int(tokens[2], n) ||
                !parse_int(tokens[3], declared_clauses) || n < 0 || declared_clauses < 0)
                throw ParseError(line_no, "malformed problem line, expected 'p cnf <vars> <clauses>'");
            cnf.variable_count = static_cast<int>(n);
            have_header = true;
            continue;
        }
        if (!have_header)
            throw ParseError(line_no, "clause before 'p cnf' header");
        for (auto tok : tokens) {
            long long lit = 0;
            if (!parse_int(tok, lit))
                throw ParseError(line_no, "bad literal '" + std::string(tok) + "'");
            if (lit == 0) {
                finish_clause(line_no);
                continue;
            }
            if (std::llabs(lit) > cnf.variable_count)
                throw ParseError(line_no, "literal " + std::to_string(lit) + " out of range 1.." +
                                              std::to_string(cnf.variable_count));
            if (pending.empty())
                pending_line = line_no;
            pending.push_back(static_cast<int>(lit));
        }
    }
    if (!have_header)
        throw ParseError(line_no, "missing 'p cnf' header");
    // A final clause without its terminating 0.
    if (!pending.empty())
        finish_clause(pending_line);
    if (seen_clauses != declared_clauses)
        throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                      std::to_string(seen_clauses));
    return cnf;
}

CnfProblem parse_dimacs(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

void write_dimacs(std::ostream &out, const CnfProblem &cnf)
{
    for (const auto &c : cnf.comments)
        out << "c " << c << '\n';
    out << "p cnf " << cnf.variable_count << ' ' << cnf.clauses.size() << '\n';
    for (const auto &clause : cnf.clauses) {
        for (int lit : clause.literals)
            out << lit << ' ';
        out << "0\n";
    }
}

Ordering Ordering::identity(int n)
{
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        seq[static_cast<std::size_t>(i)] = i + 1;
    return from_sequence(std::move(seq));
}

Ordering Ordering::from_sequence(std::vector<int> sequence)
{
    Ordering o;
    const int n = static_cast<int>(sequence.size());
    o.forward_.assign(sequence.size(), 0);
    for (int pos = 1; pos <= n; ++pos) {
        int v = sequence[static_cast<std::size_t>(pos - 1)];
        if (v < 1 || v > n || o.forward_[static_cast<std::size_t>(v - 1)] != 0)
            throw std::invalid_argument("ordering is not a permutation of 1.." + std::to_string(n));
        o.forward_[static_cast<std::size_t>(v - 1)] = pos;
    }
    o.inverse_ = std::move(sequence);
    return o;
}

Box clause_to_box(const Clause &clause, int n, const Ordering &ordering)
{
    if (ordering.size() != n)
        throw std::invalid_argument("clause_to_box: ordering size does not match variable count");
    Box b(static_cast<std::size_t>(n));
    for (int lit : clause.literals) {
        int pos = ordering.position_of(std::abs(lit));
        b[static_cast<std::size_t>(pos - 1)] = lit > 0 ? Trit::False : Trit::True;
    }
    return b;
}

Clause box_to_clause(const Box &box, const Ordering &ordering)
{
    if (static_cast<int>(box.size()) != ordering.size())
        throw std::invalid_argument("box_to_clause: ordering size does not match box length");
    std::vector<int> lits;
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (box[i] == Trit::Lambda)
            continue;
        int v = ordering.variable_at(static_cast<int>(i) + 1);
        lits.push_back(box[i] == Trit::False ? v : -v);
    }
    return make_clause(lits);
}

std::vector<int> point_to_literals(const Box &point, const Ordering &ordering)
{
    std::vector<int> lits(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        int v = ordering.variable_at(static_cast<int>(i) + 1);
        lits[static_cast<std::size_t>(v - 1)] = point[i] == Trit::True ? v : -v;
    }
    return lits;
}

} // namespace tetris
