#include "tetris/cluster_trie.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tetris {

LookupTables build_lookup_tables()
{
    LookupTables t;
    std::array<SubBox, kSubBoxCount> sub{};
    for (int v = 0; v < kSubBoxCount; ++v)
        sub[static_cast<std::size_t>(v)] = decode_phi(v);

    auto covers = [](Trit outer, Trit inner) { return outer == Trit::Lambda || outer == inner; };

    for (int v = 0; v < kSubBoxCount; ++v) {
        const SubBox &in = sub[static_cast<std::size_t>(v)];
        for (int j = 0; j < kSubBoxCount; ++j) {
            const SubBox &out = sub[static_cast<std::size_t>(j)];
            // A stored sub-box is implicitly lambda past its length.
            if (out.length <= in.length) {
                bool ok = true;
                for (std::size_t i = 0; i < out.length && ok; ++i)
                    ok = covers(out.trits[i], in.trits[i]);
                if (ok)
                    t.box_containers[static_cast<std::size_t>(v)].set(j);
            }
            if (out.length == kClusterWidth) {
                bool ok = true;
                for (std::size_t i = 0; i < kClusterWidth && ok; ++i)
                    ok = covers(out.trits[i], i < in.length ? in.trits[i] : Trit::Lambda);
                if (ok)
                    t.child_containers[static_cast<std::size_t>(v)].set(j);
            }
        }
    }
    return t;
}

const LookupTables &lookup_tables()
{
    static const LookupTables tables = build_lookup_tables();
    return tables;
}

// Non-terminal clusters on the way down: (depth, child bit).
struct BoxDatabase::Path {
    std::vector<std::pair<int, int>> steps;
};

BoxDatabase::Link *BoxDatabase::Cluster::child(int bit)
{
    auto it = std::lower_bound(links.begin(), links.end(), bit,
                               [](const auto &entry, int b) { return entry.first < b; });
    return (it != links.end() && it->first == bit) ? &it->second : nullptr;
}

const BoxDatabase::Link *BoxDatabase::Cluster::child(int bit) const
{
    return const_cast<Cluster *>(this)->child(bit);
}

BoxDatabase::Link &BoxDatabase::Cluster::add_child(int bit, Link link)
{
    auto it = std::lower_bound(links.begin(), links.end(), bit,
                               [](const auto &entry, int b) { return entry.first < b; });
    it = links.emplace(it, static_cast<std::uint8_t>(bit), std::move(link));
    return it->second;
}

BoxDatabase::BoxDatabase(std::size_t n, bool lambda_skip)
    : n_(n), lambda_skip_(lambda_skip), tables_(&lookup_tables())
{
}

BoxDatabase::~BoxDatabase() = default;
BoxDatabase::BoxDatabase(BoxDatabase &&) noexcept = default;
BoxDatabase &BoxDatabase::operator=(BoxDatabase &&) noexcept = default;

int BoxDatabase::sub_phi(const Box &b, int depth) const
{
    const std::size_t start = static_cast<std::size_t>(depth) * kClusterWidth;
    const std::size_t end = std::min(start + kClusterWidth, n_);
    int v = 0;
    for (std::size_t i = start; i < end; ++i)
        v = v * 3 + static_cast<int>(b[i]);
    return v;
}

int BoxDatabase::terminal_depth(std::size_t index) const
{
    return index == 0 ? 0 : static_cast<int>((index - 1) / kClusterWidth);
}

int BoxDatabase::terminal_phi(const Box &b, std::size_t index) const
{
    if (index == 0)
        return 0;
    const std::size_t start = static_cast<std::size_t>(terminal_depth(index)) * kClusterWidth;
    int v = 0;
    for (std::size_t i = start; i < index; ++i)
        v = v * 3 + static_cast<int>(b[i]);
    return v;
}

BoxDatabase::Link BoxDatabase::make_chain(int depth, const Box &b, int terminal, int term_phi) const
{
    int d = depth;
    if (lambda_skip_)
        while (d < terminal && sub_phi(b, d) == kAllLambdaPrefix)
            ++d;
    Link link{d - depth, std::make_unique<Cluster>(d)};
    if (d == terminal) {
        link.node->boxes.set(term_phi);
    } else {
        const int bit = sub_phi(b, d);
        link.node->children.set(bit);
        link.node->add_child(bit, make_chain(d + 1, b, terminal, term_phi));
    }
    return link;
}

void BoxDatabase::insert_into(Link &link, int depth, const Box &b, int terminal, int term_phi)
{
    if (!link.node) {
        link = make_chain(depth, b, terminal, term_phi);
        return;
    }
    // The path leaves an elided all-lambda layer: materialise it.
    for (int e = depth; e < depth + link.skip; ++e) {
        if (e == terminal || sub_phi(b, e) != kAllLambdaPrefix) {
            auto mid = std::make_unique<Cluster>(e);
            mid->children.set(kAllLambdaPrefix);
            mid->add_child(kAllLambdaPrefix, Link{depth + link.skip - e - 1, std::move(link.node)});
            link.skip = e - depth;
            link.node = std::move(mid);
            break;
        }
    }
    Cluster &c = *link.node;
    if (c.depth == terminal) {
        c.boxes.set(term_phi);
        return;
    }
    const int bit = sub_phi(b, c.depth);
    if (Link *child = c.child(bit)) {
        insert_into(*child, c.depth + 1, b, terminal, term_phi);
    } else {
        c.children.set(bit);
        c.add_child(bit, make_chain(c.depth + 1, b, terminal, term_phi));
    }
}

bool BoxDatabase::insert(const Box &b)
{
    if (b.size() != n_)
        throw std::invalid_argument("BoxDatabase::insert: box length " + std::to_string(b.size()) +
                                    " != " + std::to_string(n_));
    if (find_containing(b))
        return false;
    const std::size_t idx = b.index();
    insert_into(root_, 0, b, terminal_depth(idx), terminal_phi(b, idx));
    return true;
}

namespace {

const std::array<SubBox, kSubBoxCount> &decoded_sub_boxes()
{
    static const auto table = [] {
        std::array<SubBox, kSubBoxCount> t{};
        for (int v = 0; v < kSubBoxCount; ++v)
            t[static_cast<std::size_t>(v)] = decode_phi(v);
        return t;
    }();
    return table;
}

} // namespace

Box BoxDatabase::materialise(const Path &path, int depth, int bit) const
{
    static const auto &decoded = decoded_sub_boxes();
    Box out(n_);
    auto write = [&](int d, int value) {
        const SubBox &s = decoded[static_cast<std::size_t>(value)];
        const std::size_t start = static_cast<std::size_t>(d) * kClusterWidth;
        for (std::size_t i = 0; i < s.length; ++i)
            out[start + i] = s.trits[i];
    };
    for (auto [d, b] : path.steps)
        write(d, b);
    write(depth, bit);
    return out;
}

bool BoxDatabase::find_in(const Link &link, const Box &q, Path &path, std::optional<Box> &out,
                          QueryStats *stats) const
{
    const Cluster &c = *link.node;
    const int v = sub_phi(q, c.depth);
    if (stats)
        ++stats->intersections;
    const Mask128 hits = c.boxes & tables_->box_containers[static_cast<std::size_t>(v)];
    if (hits.any()) {
        // Lowest bit == shortest sub-box == minimal index.
        out = materialise(path, c.depth, hits.lowest());
        return true;
    }
    if (c.links.empty())
        return false;
    const Mask128 kids = c.children & tables_->child_containers[static_cast<std::size_t>(v)];
    if (!kids.any())
        return false;
    for (const auto &[bit, child] : c.links) {
        if (!kids.test(bit))
            continue;
        path.steps.emplace_back(c.depth, bit);
        if (find_in(child, q, path, out, stats))
            return true;
        path.steps.pop_back();
    }
    return false;
}

std::optional<Box> BoxDatabase::find_containing(const Box &q, QueryStats *stats) const
{
    if (q.size() != n_)
        throw std::invalid_argument("BoxDatabase::find_containing: length mismatch");
    std::optional<Box> out;
    if (!root_.node)
        return out;
    Path path;
    path.steps.reserve(cluster_count());
    find_in(root_, q, path, out, stats);
    return out;
}

void BoxDatabase::find_min_in(const Link &link, const Box &q, Path &path, std::optional<Box> &best,
                              std::size_t &best_index, QueryStats *stats) const
{
    const Cluster &c = *link.node;
    // Boxes here or below have index > 4 * depth (the root also holds index 0).
    if (c.depth > 0 && best && best_index <= static_cast<std::size_t>(c.depth) * kClusterWidth)
        return;
    const int v = sub_phi(q, c.depth);
    if (stats)
        ++stats->intersections;
    const Mask128 hits = c.boxes & tables_->box_containers[static_cast<std::size_t>(v)];
    if (hits.any()) {
        Box hit = materialise(path, c.depth, hits.lowest());
        const std::size_t idx = hit.index();
        if (!best || idx < best_index) {
            best_index = idx;
            best = std::move(hit);
        }
        return;
    }
    if (c.links.empty())
        return;
    const Mask128 kids = c.children & tables_->child_containers[static_cast<std::size_t>(v)];
    if (!kids.any())
        return;
    for (const auto &[bit, child] : c.links) {
        if (!kids.test(bit))
            continue;
        path.steps.emplace_back(c.depth, bit);
        find_min_in(child, q, path, best, best_index, stats);
        path.steps.pop_back();
    }
}

std::optional<Box> BoxDatabase::find_minimal_containing(const Box &q, QueryStats *stats) const
{
    if (q.size() != n_)
        throw std::invalid_argument("BoxDatabase::find_minimal_containing: length mismatch");
    std::optional<Box> best;
    if (!root_.node)
        return best;
    Path path;
    path.steps.reserve(cluster_count());
    std::size_t best_index = 0;
    find_min_in(root_, q, path, best, best_index, stats);
    return best;
}

void BoxDatabase::collect_in(const Link &link, const Box &q, Path &path, std::vector<Box> &out, bool descend,
                             QueryStats *stats) const
{
    const Cluster &c = *link.node;
    const int v = sub_phi(q, c.depth);
    if (stats)
        ++stats->intersections;
    const Mask128 hits = c.boxes & tables_->box_containers[static_cast<std::size_t>(v)];
    if (hits.any()) {
        hits.for_each([&](int bit) { out.push_back(materialise(path, c.depth, bit)); });
        if (!descend)
            return;
    }
    if (c.links.empty())
        return;
    const Mask128 kids = c.children & tables_->child_containers[static_cast<std::size_t>(v)];
    if (!kids.any())
        return;
    for (const auto &[bit, child] : c.links) {
        if (!kids.test(bit))
            continue;
        path.steps.emplace_back(c.depth, bit);
        collect_in(child, q, path, out, descend, stats);
        path.steps.pop_back();
    }
}

std::vector<Box> BoxDatabase::all_containing(const Box &q, bool descend_under_hits, QueryStats *stats) const
{
    if (q.size() != n_)
        throw std::invalid_argument("BoxDatabase::all_containing: length mismatch");
    std::vector<Box> out;
    if (!root_.node)
        return out;
    Path path;
    path.steps.reserve(cluster_count());
    collect_in(root_, q, path, out, descend_under_hits, stats);
    return out;
}

void BoxDatabase::walk(const Link &link, int depth, Path &path,
                       const std::function<void(const ClusterView &, const Path &)> &fn) const
{
    Mask128 lambda_only;
    lambda_only.set(kAllLambdaPrefix);
    for (int e = depth; e < depth + link.skip; ++e) {
        fn(ClusterView{e, Mask128{}, lambda_only, true}, path);
        path.steps.emplace_back(e, kAllLambdaPrefix);
    }
    const Cluster &c = *link.node;
    fn(ClusterView{c.depth, c.boxes, c.children, false}, path);
    for (const auto &[bit, child] : c.links) {
        path.steps.emplace_back(c.depth, bit);
        walk(child, c.depth + 1, path, fn);
        path.steps.pop_back();
    }
    for (int e = 0; e < link.skip; ++e)
        path.steps.pop_back();
}

void BoxDatabase::visit(const std::function<void(const ClusterView &)> &fn) const
{
    if (!root_.node)
        return;
    Path path;
    walk(root_, 0, path, [&](const ClusterView &view, const Path &) { fn(view); });
}

std::vector<Box> BoxDatabase::boxes() const
{
    std::vector<Box> out;
    if (!root_.node)
        return out;
    Path path;
    walk(root_, 0, path, [&](const ClusterView &view, const Path &p) {
        view.boxes.for_each([&](int bit) { out.push_back(materialise(p, view.depth, bit)); });
    });
    return out;
}

std::size_t BoxDatabase::box_count() const
{
    std::size_t count = 0;
    visit([&](const ClusterView &view) { count += static_cast<std::size_t>(view.boxes.count()); });
    return count;
}

std::size_t BoxDatabase::set_bit_count() const
{
    std::size_t count = 0;
    visit([&](const ClusterView &view) {
        count += static_cast<std::size_t>(view.boxes.count() + view.children.count());
    });
    return count;
}

std::string BoxDatabase::dump() const
{
    std::ostringstream out;
    visit([&](const ClusterView &view) {
        view.boxes.for_each([&](int bit) { out << "B " << view.depth << ':' << bit << '\n'; });
        view.children.for_each([&](int bit) { out << "C " << view.depth << ':' << bit << '\n'; });
    });
    return out.str();
}

} // namespace tetris
