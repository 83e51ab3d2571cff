#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "tetris/box.hpp"
#include "tetris/cluster_trie.hpp"
#include "tetris/cnf.hpp"
#include "tetris/ordering.hpp"

namespace tetris {

enum class InsertionGate {
    TritFraction,  // lambda trits / n >= ratio
    LambdaClusters // fully-lambda clusters / cluster count >= ratio (experimental)
};

enum class CacheLookup {
    FirstHit,    // BoxDatabase::find_containing (greedy per cluster)
    MinimalIndex // BoxDatabase::find_minimal_containing (largest skip)
};

struct SolverConfig {
    Rational insertion_ratio{45, 100};
    OrderingStrategy ordering = OrderingStrategy::GroupedHeuristic;
    // Overrides `ordering` when set.
    std::optional<Ordering> explicit_ordering;
    bool lambda_skip = true;
    InsertionGate insertion_gate = InsertionGate::TritFraction;
    // Replace clause-box pairs that differ only in one polarity by their
    // resolvent before the run (repeated until no such pair remains).
    bool merge_database_siblings = true;
    // How the cache is queried. Both are exact; MinimalIndex usually needs far
    // fewer iterations.
    CacheLookup cache_lookup = CacheLookup::FirstHit;
    // Cache every database hit for a probe, not only the one advanced past.
    bool cache_all_database_hits = false;
    // Provenance and soundness checks on every cache insertion (slow).
    bool check_invariants = false;
    std::optional<std::chrono::steady_clock::duration> timeout;
    // Polled every 64 iterations; a true value stops the run.
    const std::atomic<bool> *interrupt = nullptr;
};

// Thrown when a solver invariant is found broken; indicates a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct SolverState {
    SolverState(std::size_t n, bool lambda_skip)
        : database(n, lambda_skip), cache(n, lambda_skip), left(n + 1), probe(n, Trit::False)
    {
    }

    BoxDatabase database;
    BoxDatabase cache;
    // left[k]: most recent left-branching (F at k) box of index k.
    std::vector<std::optional<Box>> left;
    Box probe;
    std::uint64_t model_count = 0;
    bool finished = false;
};

struct SolverStatistics {
    std::uint64_t iterations = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t database_hits = 0;
    std::uint64_t resolutions = 0;
    std::uint64_t cache_insertions = 0;
    std::uint64_t skipped_insertions = 0;
};

enum class RunStatus { Complete, TimedOut, Interrupted };

struct SolveResult {
    std::uint64_t model_count = 0;
    RunStatus status = RunStatus::Complete;
    double load_seconds = 0;
    double run_seconds = 0;
    SolverStatistics stats;
};

// Receives each model as signed literals in original variable numbering.
using ModelSink = std::function<void(std::span<const int>)>;

// Next full point after p, in depth-first order (F before T, position 1 most
// significant), that b does not contain. nullopt when none is left.
// Throws std::invalid_argument unless p is a full point contained by b.
std::optional<Box> advance(const Box &b, const Box &p);

// Whether a resolvent may enter the cache under the configured gate.
bool passes_insertion_gate(const SolverConfig &config, const Box &r);

// Inserts r into the cache iff it passes the gate. Returns whether it did.
bool selective_insert(SolverState &state, const SolverConfig &config, const Box &r,
                      SolverStatistics *stats = nullptr);

// Files b into the left-branch array, resolving it against stored left
// boxes while its last non-lambda trit is T. Returns the final box: either
// the one filed at left[index] or the all-lambda box (which is then in the
// cache). Throws InvariantViolation if a needed left box is missing or not
// resolvable.
Box resolve_cascade(SolverState &state, const SolverConfig &config, Box b, SolverStatistics *stats = nullptr);

class Solver {
public:
    // Computes the ordering and loads the clause boxes (timed as load time).
    Solver(const CnfProblem &cnf, SolverConfig config = {});

    // One pass of the main loop. Returns false once the run is finished.
    bool step(const ModelSink &sink = {});

    SolveResult run(const ModelSink &sink = {});

    const SolverState &state() const { return state_; }
    const Ordering &ordering() const { return ordering_; }
    const SolverConfig &config() const { return config_; }
    const SolverStatistics &statistics() const { return stats_; }
    double load_seconds() const { return load_seconds_; }

private:
    void check_cache_insert(const Box &b) const;
    bool cache_insert(const Box &b);

    CnfProblem cnf_;
    SolverConfig config_;
    Ordering ordering_;
    SolverState state_;
    SolverStatistics stats_;
    double load_seconds_ = 0;

    // Debug bookkeeping (check_invariants only).
    std::unordered_set<Box, BoxHash> derived_;
    std::vector<Box> clause_boxes_;
};

// Pairwise sibling merge: boxes equal except for opposite values at one
// position are replaced by their resolvent, until no such pair remains.
std::vector<Box> merge_sibling_boxes(std::vector<Box> boxes);

SolveResult count_models(const CnfProblem &cnf, const SolverConfig &config = {}, const ModelSink &sink = {});

} // namespace tetris
