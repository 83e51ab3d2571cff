#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tetris/box.hpp"

namespace tetris {

// Fixed-width 128-bit set. Bits 121..127 are never set by this library.
struct Mask128 {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    constexpr bool test(int i) const { return i < 64 ? (lo >> i) & 1u : (hi >> (i - 64)) & 1u; }
    constexpr void set(int i)
    {
        if (i < 64)
            lo |= std::uint64_t{1} << i;
        else
            hi |= std::uint64_t{1} << (i - 64);
    }
    constexpr bool any() const { return (lo | hi) != 0; }
    constexpr int lowest() const { return lo ? std::countr_zero(lo) : 64 + std::countr_zero(hi); }
    constexpr int count() const { return std::popcount(lo) + std::popcount(hi); }

    friend constexpr Mask128 operator&(Mask128 a, Mask128 b) { return {a.lo & b.lo, a.hi & b.hi}; }
    friend constexpr Mask128 operator|(Mask128 a, Mask128 b) { return {a.lo | b.lo, a.hi | b.hi}; }
    friend constexpr bool operator==(Mask128, Mask128) = default;

    template <class F> void for_each(F &&f) const
    {
        for (std::uint64_t w = lo; w; w &= w - 1)
            f(std::countr_zero(w));
        for (std::uint64_t w = hi; w; w &= w - 1)
            f(64 + std::countr_zero(w));
    }
};

// For every sub-box value v (phi, 0..120):
//   box_containers[v]   -- stored sub-boxes j (len(j) <= len(v)) containing v
//   child_containers[v] -- 4-long prefixes j in [40,120] containing v
//                          (v padded with lambda to four positions)
struct LookupTables {
    std::array<Mask128, kSubBoxCount> box_containers{};
    std::array<Mask128, kSubBoxCount> child_containers{};
};

// Generated by exhaustive containment over all 121 x 121 sub-box pairs.
LookupTables build_lookup_tables();
const LookupTables &lookup_tables();

struct QueryStats {
    std::size_t intersections = 0; // clusters whose masks were intersected
};

// Read-only view of one logical cluster, used for structural checks.
struct ClusterView {
    int depth;
    Mask128 boxes;
    Mask128 children;
    bool skipped; // elided by lambda-skip, not materialised
};

// Set-of-boxes index: a 121-ary trie where each cluster compresses four trit
// layers into a boxes mask (one bit per stored sub-box) and a children mask
// (one bit per 4-long prefix with a child cluster).
//
// With lambda-skip on, chains of clusters that hold no boxes and only the
// all-lambda child are not materialised; the link to the next real cluster
// carries the number of elided layers.
//
// Not thread-safe under mutation; const member functions may run
// concurrently once insertion is finished.
class BoxDatabase {
public:
    explicit BoxDatabase(std::size_t n, bool lambda_skip = true);
    ~BoxDatabase();
    BoxDatabase(BoxDatabase &&) noexcept;
    BoxDatabase &operator=(BoxDatabase &&) noexcept;

    std::size_t variable_count() const { return n_; }
    std::size_t cluster_count() const { return (n_ + kClusterWidth - 1) / kClusterWidth; }
    bool lambda_skip() const { return lambda_skip_; }
    bool empty() const { return !root_.node; }

    // Inserts b unless a stored box already contains it. Returns whether the
    // structure changed. Throws std::invalid_argument on a length mismatch.
    bool insert(const Box &b);

    // A stored box containing q, if any. Each cluster prefers its own box of
    // minimal index; otherwise children are tried in increasing bit order.
    std::optional<Box> find_containing(const Box &q, QueryStats *stats = nullptr) const;

    // A stored box containing q with the smallest index over the whole trie
    // (first in depth-first order among equals). Subtrees that cannot beat
    // the best hit so far are pruned.
    std::optional<Box> find_minimal_containing(const Box &q, QueryStats *stats = nullptr) const;

    // Stored boxes containing q, in depth-first increasing-bit order. By
    // default the search does not descend below a cluster that produced a hit;
    // `descend_under_hits` lifts that rule and yields every containing box.
    std::vector<Box> all_containing(const Box &q, bool descend_under_hits = false,
                                    QueryStats *stats = nullptr) const;

    // Every stored box, depth-first.
    std::vector<Box> boxes() const;
    std::size_t box_count() const;

    // Number of set bits over all logical clusters (elided ones included).
    std::size_t set_bit_count() const;

    void visit(const std::function<void(const ClusterView &)> &fn) const;

    // One line per set bit: "B <depth>:<bit>" or "C <depth>:<bit>".
    std::string dump() const;

private:
    struct Cluster;
    struct Link {
        int skip = 0;
        std::unique_ptr<Cluster> node;
    };
    struct Cluster {
        explicit Cluster(int d) : depth(d) {}
        int depth;
        Mask128 boxes;
        Mask128 children;
        std::vector<std::pair<std::uint8_t, Link>> links; // sorted by bit

        Link *child(int bit);
        const Link *child(int bit) const;
        Link &add_child(int bit, Link link);
    };

    struct Path;

    int sub_phi(const Box &b, int depth) const;
    int terminal_depth(std::size_t index) const;
    int terminal_phi(const Box &b, std::size_t index) const;

    Link make_chain(int depth, const Box &b, int terminal, int term_phi) const;
    void insert_into(Link &link, int depth, const Box &b, int terminal, int term_phi);

    bool find_in(const Link &link, const Box &q, Path &path, std::optional<Box> &out, QueryStats *stats) const;
    void find_min_in(const Link &link, const Box &q, Path &path, std::optional<Box> &best, std::size_t &best_index,
                     QueryStats *stats) const;
    void collect_in(const Link &link, const Box &q, Path &path, std::vector<Box> &out, bool descend,
                    QueryStats *stats) const;
    void walk(const Link &link, int depth, Path &path,
              const std::function<void(const ClusterView &, const Path &)> &fn) const;

    Box materialise(const Path &path, int depth, int bit) const;

    std::size_t n_;
    bool lambda_skip_;
    Link root_;
    const LookupTables *tables_;
};

} // namespace tetris
