// cnftetris: count/enumerate models of a DIMACS CNF, generate graph query
// instances, print ordering statistics.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "tetris/benchgen.hpp"
#include "tetris/model_queue.hpp"
#include "tetris/oracle.hpp"
#include "tetris/solver.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kTimeout = 3, kMismatch = 4 };

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int)
{
    g_interrupted.store(true);
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact decimal -> rational: "0.45" is 45/100, not the nearest double.
tetris::Rational parse_ratio(const std::string &text)
{
    std::int64_t num = 0, den = 1;
    bool digits = false, dot = false;
    for (char ch : text) {
        if (ch == '.' && !dot) {
            dot = true;
        } else if (ch >= '0' && ch <= '9') {
            if (num > 100000000000ll || den > 100000000000ll)
                throw UsageError("insertion ratio has too many digits: " + text);
            num = num * 10 + (ch - '0');
            if (dot)
                den *= 10;
            digits = true;
        } else {
            throw UsageError("insertion ratio must be a decimal in [0,1], got '" + text + "'");
        }
    }
    if (!digits)
        throw UsageError("insertion ratio must be a decimal in [0,1], got '" + text + "'");
    tetris::Rational r(num, den);
    if (r > tetris::Rational(1))
        throw UsageError("insertion ratio " + text + " is outside [0,1]");
    return r;
}

template <class F> auto with_input(const std::string &path, F &&f)
{
    if (path == "-")
        return f(std::cin);
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return f(in);
}

tetris::CnfProblem read_cnf(const std::string &path)
{
    return with_input(path, [](std::istream &in) { return tetris::parse_dimacs(in); });
}

std::vector<std::string> strategy_names()
{
    std::vector<std::string> out;
    for (auto s : tetris::kAllOrderingStrategies)
        out.emplace_back(tetris::to_string(s));
    return out;
}

struct CountOptions {
    std::string input;
    std::string ordering = "grouped-heuristic";
    std::string ratio = "0.45";
    bool no_lambda_skip = false;
    double timeout = 0;
    bool verify = false;
    std::string cache_lookup = "first-hit";
};

void add_count_options(CLI::App *cmd, CountOptions &o)
{
    cmd->add_option("input", o.input, "DIMACS CNF file, '-' for stdin")->required();
    cmd->add_option("--ordering", o.ordering, "variable ordering strategy")
        ->check(CLI::IsMember(strategy_names()))
        ->capture_default_str();
    cmd->add_option("--insertion-ratio", o.ratio, "minimum lambda fraction for cached resolvents, in [0,1]")
        ->capture_default_str();
    cmd->add_flag("--no-lambda-skip", o.no_lambda_skip, "disable skipping of all-lambda trie layers");
    cmd->add_option("--timeout", o.timeout, "wall-clock limit in seconds (0 = none)")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--verify", o.verify, "cross-check the count by brute force when n <= 24");
    cmd->add_option("--cache-lookup", o.cache_lookup,
                    "cache query: first-hit (greedy per cluster) or minimal-index (usually much faster)")
        ->check(CLI::IsMember({"first-hit", "minimal-index"}))
        ->capture_default_str();
}

int run_count(const CountOptions &o, bool enumerate)
{
    tetris::SolverConfig config;
    config.insertion_ratio = parse_ratio(o.ratio);
    config.ordering = *tetris::parse_ordering_strategy(o.ordering);
    config.lambda_skip = !o.no_lambda_skip;
    config.interrupt = &g_interrupted;
    config.cache_lookup =
        o.cache_lookup == "first-hit" ? tetris::CacheLookup::FirstHit : tetris::CacheLookup::MinimalIndex;
    if (o.timeout > 0)
        config.timeout = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(o.timeout));

    const auto cnf = read_cnf(o.input);

    std::signal(SIGINT, on_sigint);
    tetris::SolveResult result;
    if (enumerate) {
        tetris::ModelQueue queue(1024);
        std::thread writer([&] {
            std::string line;
            while (auto model = queue.pop()) {
                line = "v";
                for (int lit : *model)
                    line += ' ' + std::to_string(lit);
                line += " 0\n";
                std::cout << line;
            }
            std::cout.flush();
        });
        try {
            result = tetris::count_models(cnf, config, [&](std::span<const int> m) {
                queue.push(std::vector<int>(m.begin(), m.end()));
            });
        } catch (...) {
            queue.close();
            writer.join();
            throw;
        }
        queue.close();
        writer.join();
    } else {
        result = tetris::count_models(cnf, config);
    }
    std::signal(SIGINT, SIG_DFL);

    std::cout << "c loadtime " << result.load_seconds << '\n';
    std::cout << "c runtime " << result.run_seconds << '\n';
    const auto &st = result.stats;
    std::cout << "c iterations " << st.iterations << " cache-hits " << st.cache_hits << " database-hits "
              << st.database_hits << " resolutions " << st.resolutions << " cache-insertions "
              << st.cache_insertions << " skipped-insertions " << st.skipped_insertions << '\n';
    if (result.status != tetris::RunStatus::Complete) {
        std::cout << "c " << (result.status == tetris::RunStatus::TimedOut ? "timeout" : "interrupted")
                  << ", partial count " << result.model_count << '\n';
        std::cout << "s UNKNOWN" << std::endl;
        return kTimeout;
    }
    int code = kOk;
    if (o.verify) {
        if (cnf.variable_count <= tetris::oracle::kMaxBruteVariables) {
            const auto expected = tetris::oracle::brute_count(cnf);
            if (expected == result.model_count) {
                std::cout << "c verify ok\n";
            } else {
                std::cout << "c verify MISMATCH brute-force count " << expected << '\n';
                code = kMismatch;
            }
        } else {
            std::cout << "c verify skipped, " << cnf.variable_count << " variables exceed the brute-force limit\n";
        }
    }
    std::cout << "s MODELS " << result.model_count << std::endl;
    return code;
}

struct GenOptions {
    std::string input;
    std::string query = "clique";
    int size = 3;
    std::string out;
    bool simplify = false;
    int max_variables = 256;
};

int run_gen(const GenOptions &o)
{
    const auto g = with_input(o.input, [](std::istream &in) { return tetris::read_edge_list(in); });
    tetris::GraphQuery q{o.query == "clique" ? tetris::QueryKind::Clique : tetris::QueryKind::Path, o.size};
    tetris::GenerateOptions opt;
    opt.simplify = o.simplify;
    opt.max_variables = o.max_variables;
    tetris::CnfProblem cnf;
    try {
        cnf = tetris::generate_cnf(g, q, opt);
    } catch (const tetris::GenerationError &e) {
        throw UsageError(e.what());
    }
    if (o.out.empty() || o.out == "-") {
        tetris::write_dimacs(std::cout, cnf);
    } else {
        std::ofstream file(o.out);
        if (!file)
            throw UsageError("cannot write '" + o.out + "'");
        tetris::write_dimacs(file, cnf);
    }
    return kOk;
}

int run_stats(const std::string &input, const std::string &ordering)
{
    const auto cnf = read_cnf(input);
    const auto stats = tetris::compute_stats(cnf);
    std::cout << "n " << cnf.variable_count << '\n';
    std::cout << "m " << cnf.clauses.size() << '\n';
    std::map<int, int> histogram;
    for (int v = 1; v <= cnf.variable_count; ++v)
        ++histogram[stats.degree(v)];
    for (auto [degree, count] : histogram)
        std::cout << "degree " << degree << ' ' << count << '\n';
    const auto order = tetris::compute_ordering(cnf, *tetris::parse_ordering_strategy(ordering));
    std::cout << "ordering " << ordering;
    for (int v : order.sequence())
        std::cout << ' ' << v;
    std::cout << std::endl;
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact model counter based on geometric resolution"};
    app.require_subcommand(1);

    CountOptions count_opts, enum_opts;
    auto *count = app.add_subcommand("count", "count the models of a CNF");
    add_count_options(count, count_opts);
    auto *enumerate = app.add_subcommand("enumerate", "count and print every model as a 'v' line");
    add_count_options(enumerate, enum_opts);

    GenOptions gen_opts;
    auto *gen = app.add_subcommand("gen", "encode a graph query over an edge list as CNF");
    gen->add_option("input", gen_opts.input, "edge list file, '-' for stdin")->required();
    gen->add_option("--query", gen_opts.query, "query kind")->check(CLI::IsMember({"clique", "path"}))->capture_default_str();
    gen->add_option("--size", gen_opts.size, "vertices in the pattern")->check(CLI::Range(2, 64))->capture_default_str();
    gen->add_option("--out", gen_opts.out, "output file (default stdout)");
    gen->add_flag("--simplify", gen_opts.simplify, "merge clauses differing in one literal's polarity");
    gen->add_option("--max-variables", gen_opts.max_variables, "refuse larger encodings")->capture_default_str();

    std::string stats_input, stats_ordering = "grouped-heuristic";
    auto *stats = app.add_subcommand("stats", "print size, degree histogram and variable ordering");
    stats->add_option("input", stats_input, "DIMACS CNF file, '-' for stdin")->required();
    stats->add_option("--ordering", stats_ordering, "variable ordering strategy")
        ->check(CLI::IsMember(strategy_names()))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*count)
            return run_count(count_opts, false);
        if (*enumerate)
            return run_count(enum_opts, true);
        if (*gen)
            return run_gen(gen_opts);
        if (*stats)
            return run_stats(stats_input, stats_ordering);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const tetris::ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    }
    return kUsage;
}
