#include "relkrr/poker/eval7.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace relkrr::poker {

std::string to_string(HandCategory c) {
    switch (c) {
        case HandCategory::HighCard: return "high-card";
        case HandCategory::Pair: return "pair";
        case HandCategory::TwoPair: return "two-pair";
        case HandCategory::Trips: return "trips";
        case HandCategory::Straight: return "straight";
        case HandCategory::Flush: return "flush";
        case HandCategory::FullHouse: return "full-house";
        case HandCategory::Quads: return "quads";
        case HandCategory::StraightFlush: return "straight-flush";
    }
    return "?";
}

namespace {

// straight_top[mask] is the top rank index (3 = five-high wheel .. 12 = ace
// high) of the best straight within a 13-bit rank mask, or 0 if none.
const std::array<std::uint8_t, 8192> straight_top = [] {
    std::array<std::uint8_t, 8192> table{};
    for (unsigned mask = 0; mask < 8192; ++mask) {
        for (int top = 12; top >= 3; --top) {
            unsigned need = top == 3 ? ((1u << 12) | 0xFu)  // A-2-3-4-5
                                     : (0x1Fu << (top - 4));
            if ((mask & need) == need) {
                table[mask] = static_cast<std::uint8_t>(top);
                break;
            }
        }
    }
    return table;
}();

// Highest five set bits of a rank mask; used as the tiebreak for flushes and
// high-card hands, where lexicographic mask order matches hand order.
inline std::uint32_t top5(unsigned mask) {
    int extra = std::popcount(mask) - 5;
    while (extra-- > 0) mask &= mask - 1;
    return mask;
}

}  // namespace

std::uint32_t evaluate7(const std::uint8_t cards[7]) {
    std::uint16_t suit_mask[4] = {0, 0, 0, 0};
    std::uint8_t count[13] = {};
    for (int i = 0; i < 7; ++i) {
        std::uint8_t c = cards[i];
        suit_mask[c & 3] |= static_cast<std::uint16_t>(1u << (c >> 2));
        ++count[c >> 2];
    }

    // With seven cards a flush leaves at most two cards outside its suit, so
    // quads and full houses cannot coexist with one; check flushes first.
    for (int s = 0; s < 4; ++s) {
        unsigned mask = suit_mask[s];
        if (std::popcount(mask) >= 5) {
            if (unsigned top = straight_top[mask])
                return (8u << 16) | top;
            return (5u << 16) | top5(mask);
        }
    }

    unsigned all_mask = suit_mask[0] | suit_mask[1] | suit_mask[2] | suit_mask[3];
    int quad = -1, trips[2] = {-1, -1}, pairs[3] = {-1, -1, -1};
    int ntrips = 0, npairs = 0;
    for (int r = 12; r >= 0; --r) {
        switch (count[r]) {
            case 4: quad = r; break;
            case 3:
                if (ntrips < 2) trips[ntrips++] = r;
                break;
            case 2:
                if (npairs < 3) pairs[npairs++] = r;
                break;
            default: break;
        }
    }

    if (quad >= 0) {
        for (int r = 12; r >= 0; --r)
            if (r != quad && count[r] > 0)
                return (7u << 16) | (static_cast<unsigned>(quad) << 4) |
                       static_cast<unsigned>(r);
    }
    if (ntrips >= 1 && (ntrips >= 2 || npairs >= 1)) {
        int pair = ntrips >= 2 ? trips[1] : pairs[0];
        if (ntrips >= 2 && npairs >= 1 && pairs[0] > trips[1]) pair = pairs[0];
        return (6u << 16) | (static_cast<unsigned>(trips[0]) << 4) |
               static_cast<unsigned>(pair);
    }
    if (unsigned top = straight_top[all_mask]) return (4u << 16) | top;

    if (ntrips == 1) {
        unsigned k1 = 0, k2 = 0;
        for (int r = 12, got = 0; r >= 0 && got < 2; --r)
            if (r != trips[0] && count[r] > 0) (got++ ? k2 : k1) = r;
        return (3u << 16) | (static_cast<unsigned>(trips[0]) << 8) | (k1 << 4) | k2;
    }
    if (npairs >= 2) {
        for (int r = 12; r >= 0; --r)
            if (count[r] > 0 && r != pairs[0] && r != pairs[1])
                return (2u << 16) | (static_cast<unsigned>(pairs[0]) << 8) |
                       (static_cast<unsigned>(pairs[1]) << 4) | static_cast<unsigned>(r);
    }
    if (npairs == 1) {
        unsigned k[3] = {0, 0, 0};
        for (int r = 12, got = 0; r >= 0 && got < 3; --r)
            if (r != pairs[0] && count[r] > 0) k[got++] = r;
        return (1u << 16) | (static_cast<unsigned>(pairs[0]) << 12) | (k[0] << 8) |
               (k[1] << 4) | k[2];
    }
    return top5(all_mask);
}

std::uint32_t evaluate7_checked(const std::uint8_t cards[7]) {
    std::uint64_t seen = 0;
    for (int i = 0; i < 7; ++i) {
        if (cards[i] >= 52)
            throw std::invalid_argument("evaluate7: card index out of range");
        std::uint64_t bit = 1ull << cards[i];
        if (seen & bit) throw std::invalid_argument("evaluate7: duplicate card");
        seen |= bit;
    }
    return evaluate7(cards);
}

}  // namespace relkrr::poker
