#include "relkrr/poker/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relkrr::poker {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t bounded(std::uint64_t& state, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(splitmix64(state)) * n) >> 64);
}

bool in_band(double e, double lo, double hi) { return e >= lo && e <= hi; }

}  // namespace

std::vector<std::pair<int, int>> hierarchy_constraints(const TaskSpec& spec) {
    spec.validate();
    if (spec.kind == TaskKind::TP)
        throw std::invalid_argument("hierarchy sampling supports TI and TIExc only");
    std::vector<std::pair<int, int>> out;
    // Each +1 training example (j, k) demands that item j's hand beat item
    // k's; the -1 examples mirror the same constraints.
    for (const auto& ex : build_training_set(spec).examples)
        if (ex.label > 0) out.emplace_back(ex.pair.j, ex.pair.k);
    return out;
}

HierarchySample sample_hierarchy(const TaskSpec& spec, const EquityMatrix& eq,
                                 double band_lo, double band_hi, std::uint64_t seed,
                                 int max_restarts) {
    if (!(0.5 < band_lo && band_lo < band_hi && band_hi < 1.0))
        throw std::invalid_argument("sample_hierarchy: band must lie inside (0.5, 1)");
    if (max_restarts < 0)
        throw std::invalid_argument("sample_hierarchy: max_restarts must be >= 0");
    auto constraints = hierarchy_constraints(spec);
    const int n = spec.n;

    // Constraints become checkable once their later item is placed.
    std::vector<std::vector<std::pair<int, int>>> active(n + 1);
    for (auto [w, l] : constraints) active[std::max(w, l)].push_back({w, l});

    std::uint64_t state = seed;
    for (int attempt = 0; attempt <= max_restarts; ++attempt) {
        std::vector<int> hands;
        hands.push_back(static_cast<int>(bounded(state, kNumHoleClasses)));
        bool dead = false;
        for (int item = 2; item <= n && !dead; ++item) {
            std::vector<int> candidates;
            for (int c = 0; c < kNumHoleClasses; ++c) {
                if (std::find(hands.begin(), hands.end(), c) != hands.end()) continue;
                bool ok = true;
                for (auto [w, l] : active[item]) {
                    int hw = w == item ? c : hands[w - 1];
                    int hl = l == item ? c : hands[l - 1];
                    if (!in_band(eq.get(hw, hl), band_lo, band_hi)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) candidates.push_back(c);
            }
            if (candidates.empty())
                dead = true;
            else
                hands.push_back(candidates[bounded(state, candidates.size())]);
        }
        if (dead) continue;
        if (spec.kind == TaskKind::TI) {
            bool transitive = true;
            for (int i = 1; i <= n && transitive; ++i)
                for (int j = i + 1; j <= n; ++j)
                    if (!beats(eq, hands[i - 1], hands[j - 1])) {
                        transitive = false;
                        break;
                    }
            if (!transitive) continue;
        }
        HierarchySample sample;
        sample.hands = std::move(hands);
        sample.restarts_used = attempt;
        for (auto [w, l] : constraints)
            sample.constraints.push_back(
                {w, l, eq.get(sample.hands[w - 1], sample.hands[l - 1])});
        return sample;
    }
    throw SamplingFailure("sample_hierarchy: no valid hierarchy after " +
                              std::to_string(max_restarts + 1) + " attempts",
                          max_restarts + 1);
}

bool verify_hierarchy(const TaskSpec& spec, const EquityMatrix& eq,
                      const HierarchySample& sample, double band_lo, double band_hi) {
    if (static_cast<int>(sample.hands.size()) != spec.n) return false;
    for (size_t i = 0; i < sample.hands.size(); ++i)
        for (size_t j = i + 1; j < sample.hands.size(); ++j)
            if (sample.hands[i] == sample.hands[j]) return false;
    for (auto [w, l] : hierarchy_constraints(spec))
        if (!in_band(eq.get(sample.hands[w - 1], sample.hands[l - 1]), band_lo, band_hi))
            return false;
    if (spec.kind == TaskKind::TI) {
        for (int i = 1; i <= spec.n; ++i)
            for (int j = i + 1; j <= spec.n; ++j)
                if (!beats(eq, sample.hands[i - 1], sample.hands[j - 1])) return false;
    }
    return true;
}

std::vector<double> generalization_proportions(
    const std::vector<HierarchySample>& samples, const EquityMatrix& eq,
    const TaskSpec& spec) {
    if (samples.empty())
        throw std::invalid_argument("generalization_proportions: no samples");
    const int n = spec.n;
    std::vector<double> prop(static_cast<size_t>(n) * n, 0.0);
    for (const auto& s : samples) {
        if (static_cast<int>(s.hands.size()) != n)
            throw std::invalid_argument(
                "generalization_proportions: sample size mismatch");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && beats(eq, s.hands[i], s.hands[j]))
                    prop[static_cast<size_t>(i) * n + j] += 1.0;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& cell = prop[static_cast<size_t>(i) * n + j];
            if (i == j)
                cell = std::numeric_limits<double>::quiet_NaN();
            else
                cell /= samples.size();
        }
    return prop;
}

}  // namespace relkrr::poker
