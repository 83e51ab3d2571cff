// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 iff
// every selected criterion passes. Pass criterion numbers to run a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "support/generators.hpp"
#include "support/instances.hpp"
#include "tetris/benchgen.hpp"
#include "tetris/cluster_trie.hpp"
#include "tetris/oracle.hpp"
#include "tetris/solver.hpp"

using namespace tetris;
using tetris::testing::Rng;
using tetris::testing::uniform;

namespace {

// Pinned limits.
constexpr double kWalkthroughSeconds = 1.0;
constexpr double kSweepSeconds = 600.0;
constexpr double kGraphSeconds = 300.0;
constexpr int kSweepInstances = 500;
constexpr int kTrieCases = 10000;
constexpr int kResolutionPairs = 10000;
constexpr int kGraphInstances = 100;
constexpr std::size_t kMinClauses = 10000;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> notes; // printed as indented "#" lines

    void fail(const std::string &why)
    {
        if (pass)
            detail << "first failure: " << why << "; ";
        pass = false;
    }
};

Box B(const char *s) { return Box::parse(s); }

std::set<Box> as_set(const std::vector<Box> &v) { return {v.begin(), v.end()}; }

std::string fmt(double seconds)
{
    std::ostringstream o;
    o << std::fixed << std::setprecision(3) << seconds << "s";
    return o.str();
}

// 1. Walkthrough golden trace.
void walkthrough(Outcome &out)
{
    const auto start = Clock::now();
    SolverConfig c;
    c.explicit_ordering = Ordering::identity(3);
    c.insertion_ratio = Rational(0);
    Solver solver(parse_dimacs("p cnf 3 3\n1 2 0\n1 -2 0\n2 3 0\n"), c);
    std::vector<Box> models;
    auto sink = [&](std::span<const int> m) {
        Box p(3);
        for (int lit : m)
            p[static_cast<std::size_t>(std::abs(lit) - 1)] = lit > 0 ? Trit::True : Trit::False;
        models.push_back(p);
    };
    const std::set<Box> expected_cache[] = {
        {B("F**")},
        {B("F**"), B("*FF")},
        {B("F**"), B("*FF"), B("TFT"), B("TF*")},
    };
    for (int probe = 0; probe < 3; ++probe) {
        solver.step(sink);
        if (as_set(solver.state().cache.boxes()) != expected_cache[probe])
            out.fail("cache after probe " + std::to_string(probe + 1) + " differs");
    }
    while (solver.step(sink)) {
    }
    const double t = since(start);
    if (solver.state().model_count != 3)
        out.fail("count " + std::to_string(solver.state().model_count));
    if (models != std::vector<Box>{B("TFT"), B("TTF"), B("TTT")})
        out.fail("model list differs");
    if (t >= kWalkthroughSeconds)
        out.fail("too slow");
    out.detail << "count " << solver.state().model_count << ", models";
    for (const auto &m : models)
        out.detail << ' ' << m.to_string();
    out.detail << ", cache after probes 1-3 {F**} +{*FF} +{TFT,TF*}, " << fmt(t) << " (limit "
               << fmt(kWalkthroughSeconds) << ")";
}

// 2. Exactness sweep against brute force.
void exactness_sweep(Outcome &out)
{
    const auto start = Clock::now();
    Rng rng(2024);
    const Rational ratios[] = {Rational(0), Rational(45, 100), Rational(1)};
    std::uint64_t runs = 0, mismatches = 0;
    for (int i = 0; i < kSweepInstances; ++i) {
        const int n = uniform(rng, 1, 16);
        const auto cnf = tetris::testing::random_cnf(rng, n, uniform(rng, 0, 60), 1, 5);
        const auto expected = oracle::brute_count(cnf);
        for (auto strategy : kAllOrderingStrategies)
            for (const auto &ratio : ratios)
                for (bool skip : {true, false}) {
                    SolverConfig c;
                    c.ordering = strategy;
                    c.insertion_ratio = ratio;
                    c.lambda_skip = skip;
                    ++runs;
                    const auto got = count_models(cnf, c).model_count;
                    if (got != expected) {
                        ++mismatches;
                        std::ostringstream why;
                        why << "instance " << i << " " << to_string(strategy) << " ratio " << ratio << " skip "
                            << skip << ": " << got << " != " << expected;
                        out.fail(why.str());
                    }
                }
    }
    const double t = since(start);
    if (t >= kSweepSeconds)
        out.fail("too slow");
    out.detail << kSweepInstances << " CNFs x 5 orderings x 3 ratios x 2 skip settings = " << runs
               << " runs, " << mismatches << " mismatches, " << fmt(t) << " (limit " << fmt(kSweepSeconds) << ")";
}

// Containing boxes under the no-descend-under-hit rule, from a linear scan.
std::set<Box> no_descend_reference(const std::vector<Box> &stored, const Box &q)
{
    const auto hits = oracle::linear_containing(stored, q);
    auto terminal = [](const Box &b) { return b.index() == 0 ? 0 : (b.index() - 1) / 4; };
    std::set<Box> out;
    for (const auto &b : hits) {
        bool hidden = false;
        for (const auto &a : hits) {
            const std::size_t ta = terminal(a);
            if (ta < terminal(b) &&
                std::equal(a.trits().begin(), a.trits().begin() + static_cast<std::ptrdiff_t>(4 * ta),
                           b.trits().begin()))
                hidden = true;
        }
        if (!hidden)
            out.insert(b);
    }
    return out;
}

// 3. Trie against linear scan.
void trie_equivalence(Outcome &out)
{
    Rng rng(3033);
    int cases = 0, mismatches = 0;
    const int queries_per_set = 5;
    while (cases < kTrieCases) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 16));
        BoxDatabase db(n, tetris::testing::coin(rng));
        const double lp = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
        const int count = uniform(rng, 0, 200);
        for (int i = 0; i < count; ++i)
            db.insert(tetris::testing::random_box(rng, n, lp));
        const auto stored = db.boxes();
        for (int k = 0; k < queries_per_set; ++k, ++cases) {
            // Half the queries are drawn from inside a stored box.
            Box q = tetris::testing::random_point(rng, n);
            if (!stored.empty() && tetris::testing::coin(rng)) {
                q = stored[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(stored.size()) - 1))];
                for (std::size_t i = 0; i < n; ++i)
                    if (q[i] == Trit::Lambda)
                        q[i] = tetris::testing::coin(rng) ? Trit::True : Trit::False;
            }
            const auto linear = oracle::linear_containing(stored, q);
            const auto found = db.find_containing(q);
            bool ok = found.has_value() == !linear.empty() && (!found || contains(*found, q));
            ok = ok && as_set(db.all_containing(q, true)) == as_set(linear);
            ok = ok && as_set(db.all_containing(q)) == no_descend_reference(stored, q);
            if (!ok) {
                ++mismatches;
                out.fail("n=" + std::to_string(n) + " query " + q.to_string());
            }
        }
    }
    out.detail << cases << " (box set, query) cases, " << mismatches
               << " mismatches (verdict, no-descend set, full set)";
}

// 4. Box resolution equals clause resolution.
void resolution_agreement(Outcome &out)
{
    Rng rng(4044);
    int pairs = 0, mismatches = 0;
    while (pairs < kResolutionPairs) {
        const int n = uniform(rng, 1, 12);
        Clause a = tetris::testing::random_clause(rng, n, uniform(rng, 1, n));
        const int pivot = a.literals[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(a.size()) - 1))];
        std::vector<int> lits{-pivot};
        for (int v = 1; v <= n; ++v) {
            if (v == std::abs(pivot) || !tetris::testing::coin(rng, 0.4))
                continue;
            // Shared variables keep a's polarity so the pivot is the only clash.
            auto it = std::find_if(a.literals.begin(), a.literals.end(), [&](int l) { return std::abs(l) == v; });
            lits.push_back(it != a.literals.end() ? *it : (tetris::testing::coin(rng) ? v : -v));
        }
        const Clause b = make_clause(lits);
        std::vector<int> seq(static_cast<std::size_t>(n));
        std::iota(seq.begin(), seq.end(), 1);
        std::shuffle(seq.begin(), seq.end(), rng);
        const auto order = Ordering::from_sequence(seq);
        const auto expected = oracle::resolve_clauses(a.literals, b.literals);
        const Box r = resolve(clause_to_box(a, n, order), clause_to_box(b, n, order));
        const Clause back = box_to_clause(r, order);
        ++pairs;
        if (!expected || back.literals != *expected) {
            ++mismatches;
            out.fail("pair " + std::to_string(pairs));
        }
    }
    out.detail << pairs << " resolvable clause pairs (n <= 12, random orderings), " << mismatches << " mismatches";
}

// 5. Lookup tables against digit-level containment.
void lookup_tables_check(Outcome &out)
{
    struct Sub {
        int value;
        std::vector<int> digits;
    };
    std::vector<Sub> subs;
    for (int len = 0; len <= 4; ++len) {
        int combos = 1;
        for (int i = 0; i < len; ++i)
            combos *= 3;
        for (int x = 0; x < combos; ++x) {
            Sub s{0, std::vector<int>(static_cast<std::size_t>(len))};
            int y = x;
            for (int i = len - 1; i >= 0; --i, y /= 3)
                s.digits[static_cast<std::size_t>(i)] = y % 3 + 1;
            for (int d : s.digits)
                s.value = s.value * 3 + d;
            subs.push_back(s);
        }
    }
    auto covers = [](const std::vector<int> &outer, const std::vector<int> &inner, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) {
            const int o = i < outer.size() ? outer[i] : 1;
            const int in = i < inner.size() ? inner[i] : 1;
            if (o != 1 && o != in)
                return false;
        }
        return true;
    };
    const auto &t = lookup_tables();
    int wrong = 0;
    for (const auto &v : subs)
        for (const auto &j : subs) {
            const bool box = j.digits.size() <= v.digits.size() && covers(j.digits, v.digits, v.digits.size());
            const bool child = j.digits.size() == 4 && covers(j.digits, v.digits, 4);
            if (t.box_containers[static_cast<std::size_t>(v.value)].test(j.value) != box ||
                t.child_containers[static_cast<std::size_t>(v.value)].test(j.value) != child)
                ++wrong;
        }
    if (wrong)
        out.fail(std::to_string(wrong) + " wrong bits");
    std::vector<int> row;
    t.box_containers[9].for_each([&](int j) { row.push_back(j); });
    if (row != std::vector<int>{0, 1, 2, 4, 6, 7, 9})
        out.fail("<F,T> row differs");
    out.detail << subs.size() << "x" << subs.size() << " pairs checked, " << wrong << " wrong bits; <F,T> row {";
    for (std::size_t i = 0; i < row.size(); ++i)
        out.detail << (i ? "," : "") << row[i];
    out.detail << "}";
}

// 6. Graph benchmark counts.
void graph_counts(Outcome &out)
{
    const auto start = Clock::now();
    const auto fig = read_edge_list("0 1\n1 2\n2 3\n3 0\n0 2\n");
    const auto fig_count = count_models(generate_cnf(fig, {QueryKind::Clique, 3})).model_count;
    if (fig_count != 2)
        out.fail("square-with-diagonal gives " + std::to_string(fig_count) + " triangles");
    Rng rng(6066);
    int mismatches = 0;
    for (int i = 0; i < kGraphInstances; ++i) {
        const int V = uniform(rng, 2, 32);
        const auto g = tetris::testing::random_graph(rng, V, std::uniform_real_distribution<double>(0.05, 0.9)(rng));
        for (auto kind : {QueryKind::Clique, QueryKind::Path}) {
            const int k = kind == QueryKind::Clique ? 3 : 2;
            const auto got = count_models(generate_cnf(g, {kind, k})).model_count;
            const auto want = oracle::count_subgraphs(g, {kind, k});
            if (got != want) {
                ++mismatches;
                out.fail("graph " + std::to_string(i));
            }
        }
    }
    const double t = since(start);
    if (t >= kGraphSeconds)
        out.fail("too slow");
    out.detail << "square-with-diagonal: " << fig_count << " triangles; " << kGraphInstances
               << " random graphs (V <= 32), triangle + 2-path, " << mismatches << " mismatches, " << fmt(t)
               << " (limit " << fmt(kGraphSeconds) << ")";
}

// 7. Insertion-ratio sweep on a generated instance.
void ratio_sweep(Outcome &out)
{
    Rng rng(7077);
    const auto g = tetris::testing::random_graph(rng, 64, 0.15);
    const auto cnf = generate_cnf(g, {QueryKind::Clique, 3});
    if (cnf.clauses.size() < kMinClauses)
        out.fail("instance too small");
    const auto expected = oracle::count_subgraphs(g, {QueryKind::Clique, 3});
    std::set<std::uint64_t> counts;
    out.detail << "triangles in G(64, 0.15): " << cnf.variable_count << " vars, " << cnf.clauses.size()
               << " clauses; counts";
    const Rational ratios[] = {Rational(0), Rational(1, 4), Rational(45, 100), Rational(3, 4), Rational(1)};
    for (const auto &ratio : ratios) {
        SolverConfig c;
        c.insertion_ratio = ratio;
        const auto r = count_models(cnf, c);
        counts.insert(r.model_count);
        out.detail << ' ' << r.model_count;
        std::ostringstream note;
        note << "ratio " << boost::rational_cast<double>(ratio) << ": load " << fmt(r.load_seconds) << ", run "
             << fmt(r.run_seconds) << ", iterations " << r.stats.iterations << ", cache insertions "
             << r.stats.cache_insertions;
        out.notes.push_back(note.str());
    }
    if (counts.size() != 1)
        out.fail("counts differ across ratios");
    if (*counts.begin() != expected)
        out.fail("count differs from direct enumeration");
    out.detail << " (direct enumeration " << expected << "); runtimes informational";
}

// 8. Ordering strategies on the all-interval-series instance of size 6.
void ordering_invariance(Outcome &out)
{
    const auto cnf = tetris::testing::all_interval_series(6);
    const auto expected = tetris::testing::count_all_interval_series(6);
    std::set<std::uint64_t> counts;
    out.detail << "all-interval series n=6: " << cnf.variable_count << " vars, " << cnf.clauses.size()
               << " clauses; counts";
    for (auto lookup : {CacheLookup::FirstHit, CacheLookup::MinimalIndex})
        for (auto strategy : kAllOrderingStrategies) {
            SolverConfig c;
            c.ordering = strategy;
            c.cache_lookup = lookup;
            const auto r = count_models(cnf, c);
            counts.insert(r.model_count);
            if (lookup == CacheLookup::FirstHit)
                out.detail << ' ' << r.model_count;
            std::ostringstream note;
            note << to_string(strategy) << (lookup == CacheLookup::FirstHit ? " (first-hit)" : " (minimal-index)")
                 << ": load " << fmt(r.load_seconds) << ", run " << fmt(r.run_seconds) << ", iterations "
                 << r.stats.iterations;
            out.notes.push_back(note.str());
        }
    if (counts.size() != 1)
        out.fail("counts differ across orderings");
    if (*counts.begin() != expected)
        out.fail("count differs from permutation enumeration");
    out.detail << " (permutation enumeration " << expected << "); timings informational";
}

} // namespace

int main(int argc, char **argv)
{
    struct Criterion {
        int id;
        const char *name;
        std::function<void(Outcome &)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "walkthrough golden trace", walkthrough},
        {2, "oracle exactness sweep", exactness_sweep},
        {3, "trie oracle equivalence", trie_equivalence},
        {4, "box resolution equals clause resolution", resolution_agreement},
        {5, "lookup table correctness", lookup_tables_check},
        {6, "graph benchmark correctness", graph_counts},
        {7, "insertion ratio sweep", ratio_sweep},
        {8, "ordering strategy invariance", ordering_invariance},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto &c : criteria) {
        if (!selected.empty() && !selected.count(c.id))
            continue;
        Outcome out;
        try {
            c.run(out);
        } catch (const std::exception &e) {
            out.fail(std::string("exception: ") + e.what());
        }
        failures += out.pass ? 0 : 1;
        std::cout << (out.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << out.detail.str()
                  << std::endl;
        for (const auto &note : out.notes)
            std::cout << "     # " << note << '\n';
    }
    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : "acceptance: all passed")
              << std::endl;
    return failures ? 1 : 0;
}
