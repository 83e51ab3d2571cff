#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "support/generators.hpp"
#include "tetris/cluster_trie.hpp"
#include "tetris/oracle.hpp"

using namespace tetris;
using tetris::testing::Rng;

namespace {

Box B(const char *s) { return Box::parse(s); }

std::set<Box> as_set(const std::vector<Box> &v) { return {v.begin(), v.end()}; }

// Every sub-box of length <= 4 as (value, digits), value computed from the
// closed form 3^(l-1) d1 + ... + dl with lambda=1, F=2, T=3.
std::vector<std::pair<int, std::vector<int>>> all_sub_boxes()
{
    std::vector<std::pair<int, std::vector<int>>> out;
    for (int len = 0; len <= 4; ++len) {
        int combos = 1;
        for (int i = 0; i < len; ++i)
            combos *= 3;
        for (int x = 0; x < combos; ++x) {
            std::vector<int> d(static_cast<std::size_t>(len));
            int y = x;
            for (int i = len - 1; i >= 0; --i, y /= 3)
                d[static_cast<std::size_t>(i)] = y % 3 + 1;
            int value = 0, weight = 1;
            for (int i = len - 1; i >= 0; --i, weight *= 3)
                value += weight * d[static_cast<std::size_t>(i)];
            out.emplace_back(value, d);
        }
    }
    return out;
}

// Digit-level containment; shorter sides are padded with lambda (digit 1).
bool digits_contain(const std::vector<int> &outer, const std::vector<int> &inner, std::size_t width)
{
    for (std::size_t i = 0; i < width; ++i) {
        const int o = i < outer.size() ? outer[i] : 1;
        const int in = i < inner.size() ? inner[i] : 1;
        if (o != 1 && o != in)
            return false;
    }
    return true;
}

// Containing boxes reachable under the no-descend-under-hit rule: a hit is
// hidden when another stored hit terminates in a cluster strictly above it
// on the same 4-trit prefix path.
std::set<Box> no_descend_oracle(const std::vector<Box> &stored, const Box &q)
{
    const auto hits = oracle::linear_containing(stored, q);
    auto terminal = [](const Box &b) { return b.index() == 0 ? 0 : (b.index() - 1) / 4; };
    std::set<Box> out;
    for (const auto &b : hits) {
        bool hidden = false;
        for (const auto &a : hits) {
            const std::size_t ta = terminal(a);
            if (ta >= terminal(b))
                continue;
            if (std::equal(a.trits().begin(), a.trits().begin() + static_cast<std::ptrdiff_t>(4 * ta),
                           b.trits().begin()))
                hidden = true;
        }
        if (!hidden)
            out.insert(b);
    }
    return out;
}

void expect_mask_discipline(const BoxDatabase &db)
{
    db.visit([](const ClusterView &v) {
        EXPECT_EQ(v.boxes.hi >> 57, 0u);
        EXPECT_EQ(v.children.hi >> 57, 0u);
        v.children.for_each([](int bit) {
            EXPECT_GE(bit, 40);
            EXPECT_LE(bit, 120);
        });
    });
}

} // namespace

TEST(LookupTables, MatchExhaustiveContainment)
{
    const auto &t = lookup_tables();
    const auto subs = all_sub_boxes();
    ASSERT_EQ(subs.size(), 121u);
    for (const auto &[v, vd] : subs) {
        for (const auto &[j, jd] : subs) {
            const bool box = jd.size() <= vd.size() && digits_contain(jd, vd, vd.size());
            const bool child = jd.size() == 4 && digits_contain(jd, vd, 4);
            EXPECT_EQ(t.box_containers[static_cast<std::size_t>(v)].test(j), box) << v << " " << j;
            EXPECT_EQ(t.child_containers[static_cast<std::size_t>(v)].test(j), child) << v << " " << j;
        }
    }
}

TEST(LookupTables, Examples)
{
    const auto &t = lookup_tables();
    EXPECT_TRUE(t.box_containers[0].test(0));
    EXPECT_EQ(t.box_containers[0].count(), 1);
    std::vector<int> row;
    t.box_containers[9].for_each([&](int j) { row.push_back(j); });
    EXPECT_EQ(row, (std::vector<int>{0, 1, 2, 4, 6, 7, 9}));
    for (int v = 40; v <= 120; ++v)
        EXPECT_TRUE(t.child_containers[static_cast<std::size_t>(v)].test(kAllLambdaPrefix));
    for (int v = 0; v < 121; ++v) {
        EXPECT_EQ(t.box_containers[static_cast<std::size_t>(v)].hi >> 57, 0u);
        EXPECT_EQ(t.child_containers[static_cast<std::size_t>(v)].lo & ((std::uint64_t{1} << 40) - 1), 0u);
    }
}

TEST(Mask128, Basics)
{
    Mask128 m;
    EXPECT_FALSE(m.any());
    m.set(3);
    m.set(100);
    EXPECT_TRUE(m.test(3));
    EXPECT_TRUE(m.test(100));
    EXPECT_FALSE(m.test(64));
    EXPECT_EQ(m.lowest(), 3);
    EXPECT_EQ(m.count(), 2);
    Mask128 hi;
    hi.set(70);
    EXPECT_EQ(hi.lowest(), 70);
    EXPECT_EQ((m & hi).count(), 0);
    EXPECT_EQ((m | hi).count(), 3);
}

TEST(Insert, SingleShortBoxLivesAtRoot)
{
    BoxDatabase db(3);
    EXPECT_TRUE(db.insert(B("F**")));
    EXPECT_EQ(db.dump(), "B 0:2\n");
}

TEST(Insert, AllLambdaAbsorbsEverything)
{
    BoxDatabase db(3);
    EXPECT_TRUE(db.insert(B("***")));
    EXPECT_FALSE(db.insert(B("FTF")));
    EXPECT_FALSE(db.insert(B("*T*")));
    EXPECT_EQ(db.boxes(), std::vector<Box>{B("***")});
    EXPECT_EQ(db.dump(), "B 0:0\n");
}

TEST(Insert, SubsumedBoxIsKept)
{
    BoxDatabase db(3);
    EXPECT_TRUE(db.insert(B("FF*")));
    EXPECT_TRUE(db.insert(B("F**")));
    EXPECT_EQ(db.dump(), "B 0:2\nB 0:8\n");
    EXPECT_EQ(db.box_count(), 2u);
}

TEST(Insert, LengthMismatchThrows)
{
    BoxDatabase db(3);
    EXPECT_THROW(db.insert(B("FF")), std::invalid_argument);
}

TEST(Insert, DeepBoxCreatesChain)
{
    BoxDatabase db(9, false);
    db.insert(B("FTF*T***T"));
    // Clusters at depth 0 and 1 carry one child bit each; the box sits at 2.
    EXPECT_EQ(db.dump(), "C 0:" + std::to_string(phi(B("FTF*").trits())) + "\nC 1:" +
                             std::to_string(phi(B("T***").trits())) + "\nB 2:" +
                             std::to_string(phi(B("T").trits())) + "\n");
}

TEST(FindContaining, WalkthroughDatabase)
{
    BoxDatabase db(3);
    db.insert(B("F**"));
    db.insert(B("*FF"));
    EXPECT_EQ(db.find_containing(B("FFF")), B("F**"));
    EXPECT_FALSE(db.find_containing(B("TFT")));
    EXPECT_FALSE(BoxDatabase(3).find_containing(B("TTT")));
}

TEST(FindContaining, PrefersMinimalIndexInCluster)
{
    BoxDatabase db(3);
    db.insert(B("FFF"));
    db.insert(B("*F*"));
    EXPECT_EQ(db.find_containing(B("FFF")), B("*F*"));
}

TEST(FindMinimalContaining, LooksPastTheFirstSubtree)
{
    BoxDatabase db(8);
    db.insert(B("****FFF*"));
    db.insert(B("FFFFF***"));
    const Box q = B("FFFFFFFF");
    // Child bit 40 (all-lambda prefix) is searched before bit 80 (FFFF).
    EXPECT_EQ(db.find_containing(q), B("****FFF*"));
    EXPECT_EQ(db.find_minimal_containing(q), B("FFFFF***"));
    QueryStats stats;
    EXPECT_FALSE(BoxDatabase(8).find_minimal_containing(q, &stats));
    EXPECT_EQ(stats.intersections, 0u);
}

TEST(AllContaining, Examples)
{
    BoxDatabase db(3);
    db.insert(B("F**"));
    db.insert(B("*FF"));
    EXPECT_EQ(as_set(db.all_containing(B("FFF"))), (std::set<Box>{B("F**"), B("*FF")}));

    BoxDatabase all(3);
    all.insert(B("***"));
    EXPECT_EQ(all.all_containing(B("TTT")), std::vector<Box>{B("***")});

    BoxDatabase d2(3);
    d2.insert(B("FT*"));
    d2.insert(B("*FF"));
    EXPECT_EQ(d2.all_containing(B("TFF")), std::vector<Box>{B("*FF")});
}

TEST(AllContaining, NoDescendUnderHitUnlessAsked)
{
    BoxDatabase db(8);
    db.insert(B("FFFFF***"));
    db.insert(B("F*******"));
    const Box q = B("FFFFFFFF");
    EXPECT_EQ(db.all_containing(q), std::vector<Box>{B("F*******")});
    EXPECT_EQ(as_set(db.all_containing(q, true)), (std::set<Box>{B("F*******"), B("FFFFF***")}));
}

TEST(LambdaSkip, IntersectionCount)
{
    Box b(24);
    b[20] = Trit::True; // position 21
    Box q(24, Trit::False);
    q[20] = Trit::True;
    for (bool skip : {true, false}) {
        BoxDatabase db(24, skip);
        db.insert(b);
        QueryStats s1, s2;
        EXPECT_EQ(db.find_containing(q, &s1), b);
        EXPECT_EQ(db.all_containing(q, false, &s2), std::vector<Box>{b});
        EXPECT_EQ(s1.intersections, skip ? 1u : 6u);
        EXPECT_EQ(s2.intersections, skip ? 1u : 6u);
    }
}

TEST(LambdaSkip, EmptyAndWalkthroughUnaffected)
{
    EXPECT_EQ(BoxDatabase(8, true).dump(), BoxDatabase(8, false).dump());
    BoxDatabase on(3, true), off(3, false);
    for (auto *db : {&on, &off}) {
        db->insert(B("F**"));
        db->insert(B("*FF"));
    }
    EXPECT_EQ(on.dump(), off.dump());
}

TEST(LambdaSkip, SplitsElidedLayers)
{
    BoxDatabase on(16, true), off(16, false);
    const std::vector<Box> seq = {B("************F**T"), B("********F***T***"), B("***************T"),
                                  B("********F*******"), B("****T***********"), B("****T*****T*****")};
    for (const auto &b : seq) {
        const bool changed = on.insert(b);
        EXPECT_EQ(changed, off.insert(b));
        EXPECT_EQ(changed, b != seq.back());
        EXPECT_EQ(on.dump(), off.dump());
        EXPECT_EQ(on.set_bit_count(), off.set_bit_count());
    }
    EXPECT_EQ(as_set(on.boxes()), as_set({seq.begin(), seq.end() - 1}));
}

TEST(TrieProperty, OracleEquivalence)
{
    Rng rng(31);
    for (int round = 0; round < 1500; ++round) {
        const std::size_t n = static_cast<std::size_t>(tetris::testing::uniform(rng, 1, 16));
        const bool skip = tetris::testing::coin(rng);
        BoxDatabase db(n, skip);
        const int count = tetris::testing::uniform(rng, 0, 200);
        const double lp = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
        for (int i = 0; i < count; ++i)
            db.insert(tetris::testing::random_box(rng, n, lp));
        const auto stored = db.boxes();
        for (int k = 0; k < 8; ++k) {
            const Box q = tetris::testing::random_point(rng, n);
            const auto linear = oracle::linear_containing(stored, q);
            const auto found = db.find_containing(q);
            ASSERT_EQ(found.has_value(), !linear.empty());
            if (found)
                ASSERT_TRUE(contains(*found, q));
            ASSERT_EQ(as_set(db.all_containing(q, true)), as_set(linear));
            const auto minimal = db.find_minimal_containing(q);
            ASSERT_EQ(minimal.has_value(), !linear.empty());
            if (minimal) {
                ASSERT_TRUE(contains(*minimal, q));
                for (const auto &b : linear)
                    ASSERT_LE(minimal->index(), b.index());
            }
            ASSERT_EQ(as_set(db.all_containing(q)), no_descend_oracle(stored, q));
        }
        expect_mask_discipline(db);
    }
}

TEST(TrieProperty, IdempotenceAndShortCircuit)
{
    Rng rng(32);
    for (int round = 0; round < 500; ++round) {
        const std::size_t n = static_cast<std::size_t>(tetris::testing::uniform(rng, 1, 16));
        BoxDatabase db(n, tetris::testing::coin(rng));
        for (int i = 0; i < 40; ++i)
            db.insert(tetris::testing::random_box(rng, n, 0.6));
        const Box b = tetris::testing::random_box(rng, n, 0.6);
        db.insert(b);
        const auto snapshot = db.dump();
        const auto bits = db.set_bit_count();
        EXPECT_FALSE(db.insert(b));
        EXPECT_EQ(db.dump(), snapshot);
        // Anything inside a stored box is a no-op.
        Box inner = b;
        for (std::size_t i = 0; i < n; ++i)
            if (inner[i] == Trit::Lambda && tetris::testing::coin(rng))
                inner[i] = tetris::testing::coin(rng) ? Trit::True : Trit::False;
        EXPECT_FALSE(db.insert(inner));
        EXPECT_EQ(db.set_bit_count(), bits);
    }
}

TEST(TrieProperty, SkipToggleIsUnobservable)
{
    Rng rng(33);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = static_cast<std::size_t>(tetris::testing::uniform(rng, 1, 24));
        BoxDatabase on(n, true), off(n, false);
        for (int i = 0; i < 30; ++i) {
            // Mostly-lambda boxes exercise elided layers.
            const Box b = tetris::testing::random_box(rng, n, 0.85);
            ASSERT_EQ(on.insert(b), off.insert(b));
        }
        ASSERT_EQ(on.dump(), off.dump());
        for (int k = 0; k < 10; ++k) {
            const Box q = tetris::testing::random_point(rng, n);
            ASSERT_EQ(on.find_containing(q), off.find_containing(q));
            ASSERT_EQ(on.all_containing(q), off.all_containing(q));
        }
    }
}

TEST(BoxDatabase, MoveKeepsContents)
{
    BoxDatabase db(5);
    db.insert(B("F*T**"));
    BoxDatabase moved(std::move(db));
    EXPECT_EQ(moved.boxes(), std::vector<Box>{B("F*T**")});
}
