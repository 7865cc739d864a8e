#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relkrr/poker/cards.hpp"

namespace relkrr::poker {

enum class EquityMethod { Exact, MonteCarlo };

std::string to_string(EquityMethod m);
EquityMethod equity_method_from_string(const std::string& s);

// Deterministic per-matchup stream seed; decouples each cell of the equity
// matrix from evaluation order.
std::uint64_t matchup_seed(std::uint64_t base_seed, int row, int col);

// Probability that class a beats class b heads-up preflop, ties counted as
// half a win. Averages uniformly over non-conflicting combo pairs and
// boards.
double heads_up_equity_exact(const HoleClass& a, const HoleClass& b);
double heads_up_equity_mc(const HoleClass& a, const HoleClass& b, long samples,
                          std::uint64_t seed);

struct EquityMatrix {
    EquityMethod method = EquityMethod::MonteCarlo;
    long samples = 0;         // per matchup; 0 for exact
    std::uint64_t seed = 0;   // base seed; unused for exact
    std::vector<double> values;  // row-major 169 x 169, diagonal 0.5

    double get(int row, int col) const {
        return values[static_cast<size_t>(row) * kNumHoleClasses + col];
    }
    double& at(int row, int col) {
        return values[static_cast<size_t>(row) * kNumHoleClasses + col];
    }
};

// Full 169 x 169 matrix; entry (i, j) is the equity of class i against class
// j, with (j, i) = 1 - (i, j) by construction.
EquityMatrix build_equity_matrix(long samples_per_matchup, std::uint64_t base_seed);

// Class x is "winning against" y when its equity exceeds one half.
inline bool beats(const EquityMatrix& eq, int x, int y) { return eq.get(x, y) > 0.5; }

void save_equity_matrix(const EquityMatrix& eq, const std::string& path);
EquityMatrix load_equity_matrix(const std::string& path);

}  // namespace relkrr::poker
