#include "tetris/benchgen.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace tetris {

InputGraph read_edge_list(std::istream &in)
{
    InputGraph g;
    std::map<long long, int> dense;
    auto id_of = [&](long long raw) {
        auto [it, fresh] = dense.try_emplace(raw, static_cast<int>(dense.size()));
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first) || first[0] == '#')
            continue;
        std::vector<long long> values;
        for (std::string tok = first;; ) {
            long long value = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw ParseError(line_no, "non-integer token '" + tok + "' in edge list");
            values.push_back(value);
            if (!(tokens >> tok))
                break;
        }
        if (values.size() < 2)
            throw ParseError(line_no, "expected 'u v' on edge line");
        const int u = id_of(values[0]);
        const int v = id_of(values[1]);
        g.add_edge(u, v);
    }
    g.vertex_count = static_cast<int>(dense.size());
    return g;
}

InputGraph read_edge_list(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return read_edge_list(in);
}

GraphQuerySpec make_query_spec(const InputGraph &g, const GraphQuery &query)
{
    if (query.size < 2)
        throw GenerationError("query size must be at least 2");
    if (g.vertex_count < 2)
        throw GenerationError("graph needs at least 2 vertices");
    GraphQuerySpec spec{query.kind, query.size, 0, {}};
    while ((1ll << spec.bits_per_vertex) < g.vertex_count)
        ++spec.bits_per_vertex;
    if (query.kind == QueryKind::Clique) {
        for (int i = 0; i < query.size; ++i)
            for (int j = i + 1; j < query.size; ++j)
                spec.edge_slots.emplace_back(i, j);
    } else {
        for (int i = 0; i + 1 < query.size; ++i)
            spec.edge_slots.emplace_back(i, i + 1);
    }
    return spec;
}

namespace {

struct ClauseSink {
    const GraphQuerySpec &spec;
    std::vector<Clause> clauses;
    std::set<std::vector<int>> seen;

    // Literal set violated exactly when `slot` encodes `value`.
    void reject_slot(std::vector<int> &lits, int slot, long long value) const
    {
        for (int bit = 0; bit < spec.bits_per_vertex; ++bit) {
            const bool one = (value >> (spec.bits_per_vertex - 1 - bit)) & 1;
            const int var = spec.variable(slot, bit);
            lits.push_back(one ? -var : var);
        }
    }

    void emit(std::vector<int> lits)
    {
        Clause c = make_clause(lits);
        if (seen.insert(c.literals).second)
            clauses.push_back(std::move(c));
    }

    void reject(int slot_a, long long a, int slot_b, long long b)
    {
        std::vector<int> lits;
        reject_slot(lits, slot_a, a);
        reject_slot(lits, slot_b, b);
        emit(std::move(lits));
    }
};

std::string_view kind_name(QueryKind k)
{
    return k == QueryKind::Clique ? "clique" : "path";
}

} // namespace

CnfProblem generate_cnf(const InputGraph &g, const GraphQuery &query, const GenerateOptions &options)
{
    const GraphQuerySpec spec = make_query_spec(g, query);
    if (spec.variable_count() > options.max_variables)
        throw GenerationError("query needs " + std::to_string(spec.variable_count()) +
                              " variables, above the cap of " + std::to_string(options.max_variables));
    const int V = g.vertex_count;
    const int k = query.size;
    ClauseSink sink{spec, {}, {}};

    // Slots joined by a pattern edge must hold adjacent vertices.
    for (int u = 0; u < V; ++u)
        for (int v = 0; v < V; ++v)
            if (!g.has_edge(u, v))
                for (auto [i, j] : spec.edge_slots)
                    sink.reject(i, u, j, v);

    if (query.kind == QueryKind::Clique) {
        // Only strictly increasing slot tuples survive.
        for (int u = 0; u < V; ++u)
            for (int v = 0; v <= u; ++v)
                for (auto [i, j] : spec.edge_slots)
                    sink.reject(i, u, j, v);
    } else {
        // Distinct vertices on non-adjacent slots, and first endpoint < last.
        for (int i = 0; i < k; ++i)
            for (int j = i + 2; j < k; ++j)
                for (int u = 0; u < V; ++u)
                    sink.reject(i, u, j, u);
        for (int u = 0; u < V; ++u)
            for (int v = 0; v < u; ++v)
                sink.reject(0, u, k - 1, v);
    }

    // Codewords past the last vertex are not vertices.
    const long long codewords = 1ll << spec.bits_per_vertex;
    for (int slot = 0; slot < k; ++slot)
        for (long long w = V; w < codewords; ++w) {
            std::vector<int> lits;
            sink.reject_slot(lits, slot, w);
            sink.emit(std::move(lits));
        }

    CnfProblem cnf;
    cnf.variable_count = spec.variable_count();
    cnf.clauses = options.simplify ? simplify_clauses(std::move(sink.clauses)) : std::move(sink.clauses);
    cnf.comments.push_back("generated " + std::string(kind_name(query.kind)) + " query");
    cnf.comments.push_back("kind " + std::string(kind_name(query.kind)));
    cnf.comments.push_back("k " + std::to_string(k));
    cnf.comments.push_back("vertices " + std::to_string(V));
    cnf.comments.push_back("edges " + std::to_string(g.edges.size()));
    cnf.comments.push_back("bits " + std::to_string(spec.bits_per_vertex));
    cnf.comments.push_back("slot i uses variables i*bits+1 .. i*bits+bits, most significant bit first");
    if (query.kind == QueryKind::Clique)
        cnf.comments.push_back("convention: one model per clique, slots strictly increasing");
    else
        cnf.comments.push_back("convention: one model per path, distinct vertices, first slot < last slot");
    return cnf;
}

std::vector<Clause> simplify_clauses(std::vector<Clause> clauses)
{
    std::set<std::vector<int>> live;
    for (auto &c : clauses)
        live.insert(c.literals);
    std::vector<std::vector<int>> work(live.begin(), live.end());
    while (!work.empty()) {
        auto c = std::move(work.back());
        work.pop_back();
        if (!live.count(c))
            continue;
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto sibling = c;
            sibling[i] = -sibling[i];
            if (!live.count(sibling))
                continue;
            auto merged = c;
            merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
            live.erase(c);
            live.erase(sibling);
            if (live.insert(merged).second)
                work.push_back(std::move(merged));
            break;
        }
    }
    std::vector<Clause> out;
    out.reserve(live.size());
    for (const auto &lits : live)
        out.push_back(Clause{lits});
    return out;
}

std::vector<int> decode_model(const GraphQuerySpec &spec, std::span<const int> model)
{
    std::vector<int> values(static_cast<std::size_t>(model.size()) + 1, 0);
    for (int lit : model)
        values[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : 0;
    std::vector<int> slots(static_cast<std::size_t>(spec.size));
    for (int s = 0; s < spec.size; ++s) {
        int value = 0;
        for (int bit = 0; bit < spec.bits_per_vertex; ++bit)
            value = value * 2 + values[static_cast<std::size_t>(spec.variable(s, bit))];
        slots[static_cast<std::size_t>(s)] = value;
    }
    return slots;
}

} // namespace tetris
