#include "relkrr/poker/equity.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "relkrr/poker/eval7.hpp"

namespace relkrr::poker {

std::string to_string(EquityMethod m) {
    return m == EquityMethod::Exact ? "exact" : "monte-carlo";
}

EquityMethod equity_method_from_string(const std::string& s) {
    if (s == "exact") return EquityMethod::Exact;
    if (s == "monte-carlo") return EquityMethod::MonteCarlo;
    throw std::invalid_argument("unknown equity method: " + s);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Unbiased-enough bounded draw (bias < n / 2^64).
inline std::uint64_t bounded(std::uint64_t& state, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(splitmix64(state)) * n) >> 64);
}

using ComboPair = std::array<std::uint8_t, 4>;

std::vector<ComboPair> nonconflicting_pairs(const HoleClass& a, const HoleClass& b) {
    std::vector<ComboPair> out;
    for (auto [a1, a2] : a.combos())
        for (auto [b1, b2] : b.combos()) {
            if (b1 == a1 || b1 == a2 || b2 == a1 || b2 == a2) continue;
            out.push_back({a1, a2, b1, b2});
        }
    if (out.empty())
        throw std::invalid_argument("no non-conflicting combos for " + a.name() +
                                    " vs " + b.name());
    return out;
}

// 2 * wins + ties for hand a over one showdown.
inline unsigned showdown(const ComboPair& cp, const std::uint8_t board[5]) {
    std::uint8_t hand[7] = {cp[0], cp[1], board[0], board[1], board[2], board[3],
                            board[4]};
    std::uint32_t va = evaluate7(hand);
    hand[0] = cp[2];
    hand[1] = cp[3];
    std::uint32_t vb = evaluate7(hand);
    if (va > vb) return 2;
    return va == vb ? 1 : 0;
}

}  // namespace

std::uint64_t matchup_seed(std::uint64_t base_seed, int row, int col) {
    std::uint64_t state =
        base_seed ^ (static_cast<std::uint64_t>(row) * kNumHoleClasses + col + 1);
    splitmix64(state);
    return splitmix64(state);
}

double heads_up_equity_exact(const HoleClass& a, const HoleClass& b) {
    auto pairs = nonconflicting_pairs(a, b);
    unsigned long long tally = 0, boards = 0;
    std::uint8_t rest[48];
    for (const auto& cp : pairs) {
        int m = 0;
        for (std::uint8_t c = 0; c < 52; ++c)
            if (c != cp[0] && c != cp[1] && c != cp[2] && c != cp[3]) rest[m++] = c;
        std::uint8_t board[5];
        for (int i1 = 0; i1 < 48; ++i1) {
            board[0] = rest[i1];
            for (int i2 = i1 + 1; i2 < 48; ++i2) {
                board[1] = rest[i2];
                for (int i3 = i2 + 1; i3 < 48; ++i3) {
                    board[2] = rest[i3];
                    for (int i4 = i3 + 1; i4 < 48; ++i4) {
                        board[3] = rest[i4];
                        for (int i5 = i4 + 1; i5 < 48; ++i5) {
                            board[4] = rest[i5];
                            tally += showdown(cp, board);
                            ++boards;
                        }
                    }
                }
            }
        }
    }
    return static_cast<double>(tally) / (2.0 * static_cast<double>(boards));
}

double heads_up_equity_mc(const HoleClass& a, const HoleClass& b, long samples,
                          std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("heads_up_equity_mc: samples <= 0");
    auto pairs = nonconflicting_pairs(a, b);
    std::uint64_t state = seed;
    unsigned long long tally = 0;
    for (long s = 0; s < samples; ++s) {
        const ComboPair& cp = pairs[bounded(state, pairs.size())];
        std::uint64_t used = (1ull << cp[0]) | (1ull << cp[1]) | (1ull << cp[2]) |
                             (1ull << cp[3]);
        std::uint8_t board[5];
        for (int i = 0; i < 5; ++i) {
            std::uint64_t c;
            do {
                c = splitmix64(state) & 63;
            } while (c >= 52 || (used & (1ull << c)));
            used |= 1ull << c;
            board[i] = static_cast<std::uint8_t>(c);
        }
        tally += showdown(cp, board);
    }
    return static_cast<double>(tally) / (2.0 * static_cast<double>(samples));
}

EquityMatrix build_equity_matrix(long samples_per_matchup, std::uint64_t base_seed) {
    EquityMatrix eq;
    eq.method = EquityMethod::MonteCarlo;
    eq.samples = samples_per_matchup;
    eq.seed = base_seed;
    eq.values.assign(static_cast<size_t>(kNumHoleClasses) * kNumHoleClasses, 0.5);
    const auto& classes = all_hole_classes();
    for (int i = 0; i < kNumHoleClasses; ++i)
        for (int j = i + 1; j < kNumHoleClasses; ++j) {
            double e = heads_up_equity_mc(classes[i], classes[j], samples_per_matchup,
                                          matchup_seed(base_seed, i, j));
            eq.at(i, j) = e;
            eq.at(j, i) = 1.0 - e;
        }
    return eq;
}

void save_equity_matrix(const EquityMatrix& eq, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "# method=%s samples=%ld seed=%llu\n", to_string(eq.method).c_str(),
                 eq.samples, static_cast<unsigned long long>(eq.seed));
    for (int i = 0; i < kNumHoleClasses; ++i) {
        for (int j = 0; j < kNumHoleClasses; ++j)
            std::fprintf(f, j ? ",%.17g" : "%.17g", eq.get(i, j));
        std::fputc('\n', f);
    }
    std::fclose(f);
}

EquityMatrix load_equity_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    EquityMatrix eq;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# method=", 0) != 0)
        throw std::runtime_error("equity matrix header missing in " + path);
    {
        std::istringstream hdr(line.substr(2));
        std::string tok;
        while (hdr >> tok) {
            auto pos = tok.find('=');
            if (pos == std::string::npos) continue;
            std::string key = tok.substr(0, pos), val = tok.substr(pos + 1);
            if (key == "method") eq.method = equity_method_from_string(val);
            if (key == "samples") eq.samples = std::stol(val);
            if (key == "seed") eq.seed = std::stoull(val);
        }
    }
    eq.values.reserve(static_cast<size_t>(kNumHoleClasses) * kNumHoleClasses);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) eq.values.push_back(std::stod(cell));
    }
    if (eq.values.size() != static_cast<size_t>(kNumHoleClasses) * kNumHoleClasses)
        throw std::runtime_error("equity matrix in " + path + " has wrong shape");
    return eq;
}

}  // namespace relkrr::poker
