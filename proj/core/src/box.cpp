#include "tetris/box.hpp"

#include <algorithm>

namespace tetris {

char to_char(Trit t)
{
    switch (t) {
    case Trit::False: return 'F';
    case Trit::True: return 'T';
    case Trit::Lambda: break;
    }
    return '*';
}

Box Box::parse(std::string_view text)
{
    std::vector<Trit> trits;
    trits.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
        case 'F': case 'f': case '0': trits.push_back(Trit::False); break;
        case 'T': case 't': case '1': trits.push_back(Trit::True); break;
        case '*': case '-': case 'L': case 'l': trits.push_back(Trit::Lambda); break;
        case ' ': case ',': break;
        default:
            throw std::invalid_argument(std::string("bad trit character '") + ch + "'");
        }
    }
    return Box(std::move(trits));
}

std::size_t Box::index() const
{
    for (std::size_t i = trits_.size(); i > 0; --i)
        if (trits_[i - 1] != Trit::Lambda)
            return i;
    return 0;
}

bool Box::is_point() const
{
    return std::none_of(trits_.begin(), trits_.end(), [](Trit t) { return t == Trit::Lambda; });
}

std::size_t Box::lambda_count() const
{
    return static_cast<std::size_t>(std::count(trits_.begin(), trits_.end(), Trit::Lambda));
}

std::string Box::to_string() const
{
    std::string s;
    s.reserve(trits_.size());
    for (Trit t : trits_)
        s.push_back(to_char(t));
    return s;
}

std::size_t BoxHash::operator()(const Box &b) const noexcept
{
    // FNV-1a
    std::uint64_t h = 1469598103934665603ull;
    for (Trit t : b.trits()) {
        h ^= static_cast<std::uint8_t>(t);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

namespace {

void require_same_length(const Box &a, const Box &b, const char *op)
{
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(op) + ": box lengths differ (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
}

bool opposed(Trit a, Trit b)
{
    return (a == Trit::True && b == Trit::False) || (a == Trit::False && b == Trit::True);
}

// Number of opposed positions (stops counting at 2) and the first pivot.
std::pair<int, std::size_t> pivots(const Box &b, const Box &c)
{
    int count = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < b.size() && count < 2; ++i) {
        if (opposed(b[i], c[i])) {
            if (count == 0)
                at = i;
            ++count;
        }
    }
    return {count, at};
}

} // namespace

bool contains(const Box &outer, const Box &inner)
{
    require_same_length(outer, inner, "contains");
    for (std::size_t i = 0; i < outer.size(); ++i)
        if (outer[i] != Trit::Lambda && outer[i] != inner[i])
            return false;
    return true;
}

Box resolve(const Box &b, const Box &c)
{
    require_same_length(b, c, "resolve");
    auto [count, pivot] = pivots(b, c);
    if (count != 1)
        throw ResolutionError("resolve: " + b.to_string() + " and " + c.to_string() +
                              (count == 0 ? " have no pivot" : " have more than one pivot"));
    Box out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] = (i == pivot) ? Trit::Lambda : (b[i] == Trit::Lambda ? c[i] : b[i]);
    return out;
}

bool tetris_resolvable(const Box &b, const Box &c)
{
    require_same_length(b, c, "tetris_resolvable");
    auto [count, pivot] = pivots(b, c);
    if (count != 1)
        return false;
    return b.index() == pivot + 1 && c.index() == pivot + 1;
}

int phi(std::span<const Trit> sub)
{
    if (sub.size() > kClusterWidth)
        throw std::invalid_argument("phi: sub-box longer than " + std::to_string(kClusterWidth));
    int value = 0;
    for (Trit t : sub)
        value = value * 3 + static_cast<int>(t);
    return value;
}

SubBox decode_phi(int value)
{
    if (value < 0 || value >= kSubBoxCount)
        throw std::invalid_argument("decode_phi: value out of range: " + std::to_string(value));
    // Values of length L start at (3^L - 1) / 2.
    static constexpr int kOffset[] = {0, 1, 4, 13, 40};
    SubBox out;
    int length = 0;
    while (length < 4 && value >= kOffset[length + 1])
        ++length;
    out.length = static_cast<std::uint8_t>(length);
    int rest = value - kOffset[length];
    for (int i = length - 1; i >= 0; --i) {
        out.trits[static_cast<std::size_t>(i)] = static_cast<Trit>(rest % 3 + 1);
        rest /= 3;
    }
    return out;
}

} // namespace tetris
