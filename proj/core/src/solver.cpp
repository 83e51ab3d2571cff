#include "tetris/solver.hpp"

#include <algorithm>
#include <unordered_set>

namespace tetris {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t lambda_clusters(const Box &b)
{
    std::size_t count = 0;
    for (std::size_t start = 0; start < b.size(); start += kClusterWidth) {
        const std::size_t end = std::min(start + kClusterWidth, b.size());
        bool all = true;
        for (std::size_t i = start; i < end && all; ++i)
            all = b[i] == Trit::Lambda;
        count += all ? 1 : 0;
    }
    return count;
}

} // namespace

std::optional<Box> advance(const Box &b, const Box &p)
{
    if (!p.is_point())
        throw std::invalid_argument("advance: probe " + p.to_string() + " is not a full point");
    if (!contains(b, p))
        throw std::invalid_argument("advance: " + b.to_string() + " does not contain " + p.to_string());
    Box next = p;
    const std::size_t n = next.size();
    while (contains(b, next)) {
        // Everything below the box's last fixed position is inside the box.
        for (std::size_t i = b.index(); i < n; ++i)
            next[i] = Trit::True;
        std::size_t f = n;
        while (f > 0 && next[f - 1] == Trit::True)
            --f;
        if (f == 0)
            return std::nullopt;
        next[f - 1] = Trit::True;
        for (std::size_t i = f; i < n; ++i)
            next[i] = Trit::False;
    }
    return next;
}

bool passes_insertion_gate(const SolverConfig &config, const Box &r)
{
    const auto num = config.insertion_ratio.numerator();
    const auto den = config.insertion_ratio.denominator();
    if (r.empty())
        return true;
    std::int64_t have = 0;
    std::int64_t total = 0;
    switch (config.insertion_gate) {
    case InsertionGate::TritFraction:
        have = static_cast<std::int64_t>(r.lambda_count());
        total = static_cast<std::int64_t>(r.size());
        break;
    case InsertionGate::LambdaClusters:
        have = static_cast<std::int64_t>(lambda_clusters(r));
        total = static_cast<std::int64_t>((r.size() + kClusterWidth - 1) / kClusterWidth);
        break;
    }
    return have * den >= num * total;
}

bool selective_insert(SolverState &state, const SolverConfig &config, const Box &r, SolverStatistics *stats)
{
    if (!passes_insertion_gate(config, r)) {
        if (stats)
            ++stats->skipped_insertions;
        return false;
    }
    const bool changed = state.cache.insert(r);
    if (stats && changed)
        ++stats->cache_insertions;
    return changed;
}

namespace {

Box cascade(SolverState &state, const SolverConfig &config, Box b, SolverStatistics *stats,
            const std::function<void(const Box &, const Box &, const Box &)> &observer)
{
    for (;;) {
        const std::size_t k = b.index();
        if (k == 0) {
            if (state.cache.insert(b) && stats)
                ++stats->cache_insertions;
            return b;
        }
        if (b[k - 1] == Trit::False) {
            state.left[k] = b;
            return b;
        }
        const auto &partner = state.left[k];
        if (!partner)
            throw InvariantViolation("resolve_cascade: no left box at index " + std::to_string(k) + " for " +
                                     b.to_string());
        if (!tetris_resolvable(b, *partner))
            throw InvariantViolation("resolve_cascade: " + b.to_string() + " and " + partner->to_string() +
                                     " are not tetris-resolvable");
        Box r = resolve(b, *partner);
        if (observer)
            observer(b, *partner, r);
        if (stats)
            ++stats->resolutions;
        selective_insert(state, config, r, stats);
        b = std::move(r);
    }
}

} // namespace

Box resolve_cascade(SolverState &state, const SolverConfig &config, Box b, SolverStatistics *stats)
{
    return cascade(state, config, std::move(b), stats, {});
}

std::vector<Box> merge_sibling_boxes(std::vector<Box> boxes)
{
    std::unordered_set<Box, BoxHash> live(boxes.begin(), boxes.end());
    std::vector<Box> work(boxes.begin(), boxes.end());
    while (!work.empty()) {
        Box b = std::move(work.back());
        work.pop_back();
        if (!live.count(b))
            continue;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] == Trit::Lambda)
                continue;
            Box sibling = b;
            sibling[i] = b[i] == Trit::True ? Trit::False : Trit::True;
            if (!live.count(sibling))
                continue;
            Box merged = b;
            merged[i] = Trit::Lambda;
            live.erase(b);
            live.erase(sibling);
            if (live.insert(merged).second)
                work.push_back(std::move(merged));
            break;
        }
    }
    std::vector<Box> out(live.begin(), live.end());
    std::sort(out.begin(), out.end());
    return out;
}

Solver::Solver(const CnfProblem &cnf, SolverConfig config)
    : cnf_(cnf), config_(std::move(config)),
      state_(static_cast<std::size_t>(cnf.variable_count), config_.lambda_skip)
{
    if (config_.insertion_ratio < Rational(0) || config_.insertion_ratio > Rational(1))
        throw std::invalid_argument("insertion ratio must lie in [0, 1]");
    const auto start = Clock::now();
    const int n = cnf_.variable_count;
    if (config_.explicit_ordering) {
        if (config_.explicit_ordering->size() != n)
            throw std::invalid_argument("explicit ordering does not match the variable count");
        ordering_ = *config_.explicit_ordering;
    } else {
        ordering_ = compute_ordering(cnf_, config_.ordering);
    }

    std::vector<Box> boxes;
    boxes.reserve(cnf_.clauses.size());
    for (const auto &clause : cnf_.clauses)
        boxes.push_back(clause_to_box(clause, n, ordering_));
    if (config_.check_invariants) {
        clause_boxes_ = boxes;
        derived_.insert(boxes.begin(), boxes.end());
    }
    if (config_.merge_database_siblings) {
        boxes = merge_sibling_boxes(std::move(boxes));
        if (config_.check_invariants)
            derived_.insert(boxes.begin(), boxes.end());
    }
    for (const auto &b : boxes)
        state_.database.insert(b);
    load_seconds_ = seconds_since(start);
}

void Solver::check_cache_insert(const Box &b) const
{
    if (!derived_.count(b))
        throw InvariantViolation("cache insertion without provenance: " + b.to_string());
    if (b.size() > 12)
        return;
    // Every model inside b must already have been counted, i.e. lie strictly
    // before the probe or be the probe itself.
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i] == Trit::Lambda)
            free.push_back(i);
    Box x = b;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
        for (std::size_t j = 0; j < free.size(); ++j)
            x[free[j]] = (bits >> (free.size() - 1 - j)) & 1u ? Trit::True : Trit::False;
        const bool excluded = std::any_of(clause_boxes_.begin(), clause_boxes_.end(),
                                          [&](const Box &c) { return contains(c, x); });
        if (!excluded && state_.probe < x)
            throw InvariantViolation("cache box " + b.to_string() + " covers uncounted model " + x.to_string());
    }
}

bool Solver::cache_insert(const Box &b)
{
    if (config_.check_invariants)
        check_cache_insert(b);
    const bool changed = state_.cache.insert(b);
    if (changed)
        ++stats_.cache_insertions;
    return changed;
}

bool Solver::step(const ModelSink &sink)
{
    if (state_.finished)
        return false;
    ++stats_.iterations;

    Box chosen;
    auto hit = config_.cache_lookup == CacheLookup::FirstHit ? state_.cache.find_containing(state_.probe)
                                                             : state_.cache.find_minimal_containing(state_.probe);
    if (hit) {
        ++stats_.cache_hits;
        chosen = std::move(*hit);
    } else {
        auto hits = state_.database.all_containing(state_.probe);
        if (!hits.empty()) {
            ++stats_.database_hits;
            auto best = std::min_element(hits.begin(), hits.end(),
                                         [](const Box &a, const Box &b) { return a.index() < b.index(); });
            if (config_.cache_all_database_hits) {
                for (const auto &h : hits)
                    cache_insert(h);
            } else {
                cache_insert(*best);
            }
            chosen = std::move(*best);
        } else {
            ++state_.model_count;
            if (sink)
                sink(point_to_literals(state_.probe, ordering_));
            if (config_.check_invariants)
                derived_.insert(state_.probe);
            cache_insert(state_.probe);
            chosen = state_.probe;
        }
    }

    std::function<void(const Box &, const Box &, const Box &)> observer;
    if (config_.check_invariants) {
        observer = [this](const Box &a, const Box &b, const Box &r) {
            if (!derived_.count(a) || !derived_.count(b))
                throw InvariantViolation("resolution operand without provenance");
            derived_.insert(r);
            check_cache_insert(r);
        };
    }
    const Box last = cascade(state_, config_, std::move(chosen), &stats_, observer);
    if (last.is_all_lambda()) {
        state_.finished = true;
        return false;
    }
    auto next = advance(last, state_.probe);
    if (!next) {
        state_.finished = true;
        return false;
    }
    if (!(state_.probe < *next))
        throw InvariantViolation("probe did not move forward");
    state_.probe = std::move(*next);
    return true;
}

SolveResult Solver::run(const ModelSink &sink)
{
    SolveResult result;
    const auto start = Clock::now();
    const auto deadline = config_.timeout ? start + *config_.timeout : Clock::time_point::max();
    while (step(sink)) {
        if ((stats_.iterations & 63) != 0)
            continue;
        if (config_.interrupt && config_.interrupt->load(std::memory_order_relaxed)) {
            result.status = RunStatus::Interrupted;
            break;
        }
        if (Clock::now() >= deadline) {
            result.status = RunStatus::TimedOut;
            break;
        }
    }
    result.model_count = state_.model_count;
    result.load_seconds = load_seconds_;
    result.run_seconds = seconds_since(start);
    result.stats = stats_;
    return result;
}

SolveResult count_models(const CnfProblem &cnf, const SolverConfig &config, const ModelSink &sink)
{
    Solver solver(cnf, config);
    return solver.run(sink);
}

} // namespace tetris
