#pragma once

#include <cstdint>
#include <string>

namespace relkrr::poker {

// Hand categories encoded in bits 16..19 of the evaluator output.
enum class HandCategory {
    HighCard = 0,
    Pair = 1,
    TwoPair = 2,
    Trips = 3,
    Straight = 4,
    Flush = 5,
    FullHouse = 6,
    Quads = 7,
    StraightFlush = 8,
};

std::string to_string(HandCategory c);

// Best 5-card value of a 7-card hand, as (category << 16) | tiebreak.
// Larger value = stronger hand; values are totally ordered across
// categories. Cards are indices 0..51 ((rank - 2) * 4 + suit) and must be
// distinct; the fast path does not check.
std::uint32_t evaluate7(const std::uint8_t cards[7]);

// Same with full validation (range and distinctness).
std::uint32_t evaluate7_checked(const std::uint8_t cards[7]);

inline HandCategory category_of(std::uint32_t value) {
    return static_cast<HandCategory>(value >> 16);
}

}  // namespace relkrr::poker
