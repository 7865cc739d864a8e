#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relkrr::poker {

// Cards are indices 0..51: index = (rank - 2) * 4 + suit, rank 2..14
// (14 = ace), suit 0..3.
struct Card {
    int rank = 2;
    int suit = 0;

    static Card from_index(int idx) {
        if (idx < 0 || idx >= 52) throw std::invalid_argument("Card: index out of range");
        return {idx / 4 + 2, idx % 4};
    }
    int index() const { return (rank - 2) * 4 + suit; }
    std::string name() const;
};

enum class Suitedness { Pair, Suited, Offsuit };

// One of the 169 canonical hold'em starting-hand classes.
struct HoleClass {
    int high = 2;  // rank 2..14, high >= low
    int low = 2;
    Suitedness kind = Suitedness::Pair;

    void validate() const;

    // Stable index 0..168.
    int index() const;
    static HoleClass from_index(int idx);

    // "AA", "AKs", "72o".
    std::string name() const;
    static HoleClass parse(const std::string& s);

    // All concrete two-card realizations, as pairs of card indices.
    std::vector<std::pair<std::uint8_t, std::uint8_t>> combos() const;
};

constexpr int kNumHoleClasses = 169;

const std::array<HoleClass, kNumHoleClasses>& all_hole_classes();

}  // namespace relkrr::poker
