#pragma once

#include <string>
#include <vector>

#include "relkrr/closed_form.hpp"
#include "relkrr/task.hpp"

namespace relkrr {

enum class Predictor { ClosedForm, Oracle };

std::string to_string(Predictor p);
Predictor predictor_from_string(const std::string& s);

// Success requires a strictly positive margin; an exactly-zero margin is the
// knife edge and counts as failure.
constexpr double kMarginSuccessThreshold = 1e-12;

struct PairMargin {
    ItemPair pair;
    int expected = 0;
    double margin = 0.0;
};

struct SplitMargins {
    std::string split;
    double min_margin = 0.0;
    double mean_margin = 0.0;
    bool success = false;
    std::vector<PairMargin> pairs;
};

struct MarginReport {
    std::vector<SplitMargins> splits;
    bool oracle_fallback = false;  // set when a degenerate closed form fell
                                   // back to the dual oracle

    const SplitMargins& split(SplitName name) const;
    bool all_success() const;
};

// Margins over the TIExc eval splits, or over the training set (as a single
// "train" split) for TI/TP.
MarginReport margins(const TaskSpec& spec, double alpha, double creg_inv,
                     Predictor predictor);

struct PhaseCell {
    double alpha = 0.0;
    double creg_inv = 0.0;
    MarginReport report;
    bool failed = false;  // cell-level evaluation error; sweep continues
    std::string error;
};

struct PhaseDiagram {
    TaskSpec spec;
    std::vector<double> alphas;
    std::vector<double> creg_invs;
    std::vector<PhaseCell> cells;  // row-major: alpha index * |creg| + creg index

    const PhaseCell& cell(int ai, int ci) const {
        return cells[static_cast<size_t>(ai) * creg_invs.size() + ci];
    }
};

PhaseDiagram phase_diagram(const TaskSpec& spec, const std::vector<double>& alphas,
                           const std::vector<double>& creg_invs, Predictor predictor);

// alpha in {0.02, 0.04, ..., 0.98}.
std::vector<double> default_alpha_grid();
// {0} union geometric 1e-3 .. 1e1.
std::vector<double> default_creg_inv_grid();

struct SweepSummary {
    TaskSpec spec;
    double mem_transitive_area = 0.0;
    double mem_intransitive_area = 0.0;
    double within_area = 0.0;
    double cross_area = 0.0;  // fraction of grid cells with cross-gen success
};

std::vector<SweepSummary> sweep_task_params(const std::vector<TaskSpec>& specs,
                                            const std::vector<double>& alphas,
                                            const std::vector<double>& creg_invs,
                                            Predictor predictor);

struct MarginCurve {
    ItemPair pair;
    int expected = 0;
    std::vector<double> xs;
    std::vector<double> margins;
    std::vector<double> zero_crossings;  // located by bisection, tol 1e-6
};

// Margin of each pair as a function of alpha (vary_alpha = true, fixed
// creg_inv) or of creg_inv (vary_alpha = false, fixed alpha), on the closed
// form.
std::vector<MarginCurve> margin_curves(const TaskSpec& spec, bool vary_alpha,
                                       double fixed_value,
                                       const std::vector<double>& samples,
                                       const std::vector<ItemPair>& pairs);

}  // namespace relkrr
