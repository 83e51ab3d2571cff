#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tetris {

// Digit values double as the ternary digits of the sub-box enumeration.
enum class Trit : std::uint8_t { Lambda = 1, False = 2, True = 3 };

char to_char(Trit t);

// A box is a trit vector over positions 1..n of the (ordered) variables.
// Every full point (no lambda) is a box; lambda spans both values.
class Box {
public:
    Box() = default;
    explicit Box(std::size_t n, Trit fill = Trit::Lambda) : trits_(n, fill) {}
    Box(std::initializer_list<Trit> trits) : trits_(trits) {}
    explicit Box(std::vector<Trit> trits) : trits_(std::move(trits)) {}

    // Parses "F", "T" and "*" (lambda); also accepts '-' and 'L' for lambda.
    static Box parse(std::string_view text);

    std::size_t size() const { return trits_.size(); }
    bool empty() const { return trits_.empty(); }

    Trit operator[](std::size_t i) const { return trits_[i]; }
    Trit &operator[](std::size_t i) { return trits_[i]; }

    std::span<const Trit> trits() const { return trits_; }

    // 1-based position of the last non-lambda trit, 0 for the all-lambda box.
    std::size_t index() const;

    bool is_point() const;
    bool is_all_lambda() const { return index() == 0; }
    std::size_t lambda_count() const;

    std::string to_string() const;

    friend bool operator==(const Box &, const Box &) = default;
    friend auto operator<=>(const Box &, const Box &) = default;

private:
    std::vector<Trit> trits_;
};

struct BoxHash {
    std::size_t operator()(const Box &b) const noexcept;
};

class ResolutionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// True iff every position of `outer` equals the one in `inner` or is lambda.
// Throws std::invalid_argument on a length mismatch.
bool contains(const Box &outer, const Box &inner);

// Resolution on boxes. Requires exactly one pivot where the two boxes hold
// opposite values; the result has lambda at the pivot and the more specific
// value elsewhere. Throws ResolutionError otherwise.
Box resolve(const Box &b, const Box &c);

// Resolvable with the pivot at the last non-lambda position of both boxes.
bool tetris_resolvable(const Box &b, const Box &c);

// Sub-boxes of length <= 4, the unit of storage inside one trie cluster.
inline constexpr std::size_t kClusterWidth = 4;
inline constexpr int kSubBoxCount = 121;

struct SubBox {
    std::array<Trit, kClusterWidth> trits{Trit::Lambda, Trit::Lambda, Trit::Lambda, Trit::Lambda};
    std::uint8_t length = 0;

    std::span<const Trit> view() const { return {trits.data(), length}; }
};

// Bijective ternary numeration: sum of 3^(len-1-i) * digit(t_i), with
// lambda=1, F=2, T=3. Lengths 0..4 fill [0,120] exactly.
// Throws std::invalid_argument for length > 4.
int phi(std::span<const Trit> sub);
SubBox decode_phi(int value);

// phi of the all-lambda 4-long prefix.
inline constexpr int kAllLambdaPrefix = 40;

} // namespace tetris
