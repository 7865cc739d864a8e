#include "relkrr/poker/cards.hpp"

namespace relkrr::poker {

namespace {

constexpr char kRankChars[] = "23456789TJQKA";
constexpr char kSuitChars[] = "cdhs";

int rank_from_char(char c) {
    for (int i = 0; i < 13; ++i)
        if (kRankChars[i] == c) return i + 2;
    throw std::invalid_argument(std::string("bad rank character: ") + c);
}

}  // namespace

std::string Card::name() const {
    std::string s;
    s += kRankChars[rank - 2];
    s += kSuitChars[suit];
    return s;
}

void HoleClass::validate() const {
    if (high < 2 || high > 14 || low < 2 || low > 14)
        throw std::invalid_argument("HoleClass: rank out of range");
    if (kind == Suitedness::Pair) {
        if (high != low) throw std::invalid_argument("HoleClass: pair with high != low");
    } else if (high <= low) {
        throw std::invalid_argument("HoleClass: need high > low for non-pairs");
    }
}

int HoleClass::index() const {
    validate();
    // Pairs 0..12, suited 13..90, offsuit 91..168; non-pairs ordered by
    // (high, low) lexicographically descending in rank.
    if (kind == Suitedness::Pair) return 14 - high;
    int off = 0;
    for (int h = 14; h > high; --h) off += h - 2;  // classes with larger high card
    off += high - 1 - low;
    return (kind == Suitedness::Suited ? 13 : 91) + off;
}

HoleClass HoleClass::from_index(int idx) {
    if (idx < 0 || idx >= kNumHoleClasses)
        throw std::invalid_argument("HoleClass: index out of range");
    if (idx < 13) return {14 - idx, 14 - idx, Suitedness::Pair};
    Suitedness kind = idx < 91 ? Suitedness::Suited : Suitedness::Offsuit;
    int off = idx - (idx < 91 ? 13 : 91);
    for (int h = 14; h >= 3; --h) {
        if (off < h - 2) return {h, h - 1 - off, kind};
        off -= h - 2;
    }
    throw std::logic_error("HoleClass::from_index: unreachable");
}

std::string HoleClass::name() const {
    validate();
    std::string s;
    s += kRankChars[high - 2];
    s += kRankChars[low - 2];
    if (kind == Suitedness::Suited) s += 's';
    if (kind == Suitedness::Offsuit) s += 'o';
    return s;
}

HoleClass HoleClass::parse(const std::string& s) {
    if (s.size() < 2 || s.size() > 3)
        throw std::invalid_argument("HoleClass: cannot parse '" + s + "'");
    int a = rank_from_char(s[0]);
    int b = rank_from_char(s[1]);
    int high = std::max(a, b), low = std::min(a, b);
    HoleClass cls{high, low, Suitedness::Pair};
    if (high != low) {
        if (s.size() != 3 || (s[2] != 's' && s[2] != 'o'))
            throw std::invalid_argument("HoleClass: non-pair '" + s +
                                        "' needs an s/o suffix");
        cls.kind = s[2] == 's' ? Suitedness::Suited : Suitedness::Offsuit;
    } else if (s.size() == 3) {
        throw std::invalid_argument("HoleClass: pair '" + s + "' takes no suffix");
    }
    return cls;
}

std::vector<std::pair<std::uint8_t, std::uint8_t>> HoleClass::combos() const {
    validate();
    std::vector<std::pair<std::uint8_t, std::uint8_t>> out;
    auto card = [](int rank, int suit) {
        return static_cast<std::uint8_t>((rank - 2) * 4 + suit);
    };
    switch (kind) {
        case Suitedness::Pair:
            for (int s1 = 0; s1 < 4; ++s1)
                for (int s2 = s1 + 1; s2 < 4; ++s2)
                    out.emplace_back(card(high, s1), card(high, s2));
            break;
        case Suitedness::Suited:
            for (int s = 0; s < 4; ++s) out.emplace_back(card(high, s), card(low, s));
            break;
        case Suitedness::Offsuit:
            for (int s1 = 0; s1 < 4; ++s1)
                for (int s2 = 0; s2 < 4; ++s2)
                    if (s1 != s2) out.emplace_back(card(high, s1), card(low, s2));
            break;
    }
    return out;
}

const std::array<HoleClass, kNumHoleClasses>& all_hole_classes() {
    static const std::array<HoleClass, kNumHoleClasses> classes = [] {
        std::array<HoleClass, kNumHoleClasses> a;
        for (int i = 0; i < kNumHoleClasses; ++i) a[i] = HoleClass::from_index(i);
        return a;
    }();
    return classes;
}

}  // namespace relkrr::poker
