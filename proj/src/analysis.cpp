#include "relkrr/analysis.hpp"

#include <cmath>
#include <functional>

#include "relkrr/dual.hpp"

namespace relkrr {

std::string to_string(Predictor p) {
    return p == Predictor::ClosedForm ? "closed-form" : "oracle";
}

Predictor predictor_from_string(const std::string& s) {
    if (s == "closed-form") return Predictor::ClosedForm;
    if (s == "oracle") return Predictor::Oracle;
    throw std::invalid_argument("unknown predictor: " + s);
}

const SplitMargins& MarginReport::split(SplitName name) const {
    std::string key = to_string(name);
    for (const auto& s : splits)
        if (s.split == key) return s;
    throw std::out_of_range("MarginReport: no split " + key);
}

bool MarginReport::all_success() const {
    for (const auto& s : splits)
        if (!s.success) return false;
    return true;
}

namespace {

SplitMargins summarize(std::string name, std::vector<PairMargin> pairs) {
    SplitMargins s;
    s.split = std::move(name);
    s.pairs = std::move(pairs);
    if (s.pairs.empty()) {
        // Degenerate sections yield empty splits; vacuous success.
        s.success = true;
        return s;
    }
    double sum = 0.0, mn = s.pairs.front().margin;
    for (const auto& pm : s.pairs) {
        sum += pm.margin;
        mn = std::min(mn, pm.margin);
    }
    s.min_margin = mn;
    s.mean_margin = sum / s.pairs.size();
    s.success = mn > kMarginSuccessThreshold;
    return s;
}

using PredictFn = std::function<double(ItemPair)>;

// Oracle fallback applies when the closed form is degenerate (lambda = 0) or
// the spec is TP, which has no closed form.
PredictFn make_predictor(const TaskSpec& spec, double alpha, double creg_inv,
                         Predictor choice, bool* fell_back) {
    if (choice == Predictor::ClosedForm && spec.kind != TaskKind::TP) {
        try {
            auto profile = rank_profile({alpha, creg_inv, spec});
            return [profile, spec](ItemPair pair) {
                return predict_from_profile(profile, spec, pair);
            };
        } catch (const DegenerateError&) {
            if (fell_back) *fell_back = true;
        }
    } else if (choice == Predictor::ClosedForm) {
        if (fell_back) *fell_back = true;
    }
    auto sol = dual_solve(KernelParams::from_alpha(alpha, creg_inv),
                          build_training_set(spec));
    return [sol](ItemPair pair) { return sol.predict(pair); };
}

}  // namespace

MarginReport margins(const TaskSpec& spec, double alpha, double creg_inv,
                     Predictor predictor) {
    spec.validate();
    MarginReport report;
    PredictFn predict =
        make_predictor(spec, alpha, creg_inv, predictor, &report.oracle_fallback);

    if (spec.kind == TaskKind::TIExc) {
        for (const auto& split : build_eval_splits(spec)) {
            std::vector<PairMargin> pairs;
            pairs.reserve(split.pairs.size());
            for (const auto& sp : split.pairs)
                pairs.push_back({sp.pair, sp.expected, sp.expected * predict(sp.pair)});
            report.splits.push_back(summarize(to_string(split.name), std::move(pairs)));
        }
    } else {
        std::vector<PairMargin> pairs;
        for (const auto& ex : build_training_set(spec).examples)
            pairs.push_back({ex.pair, ex.label, ex.label * predict(ex.pair)});
        report.splits.push_back(summarize("train", std::move(pairs)));
    }
    return report;
}

PhaseDiagram phase_diagram(const TaskSpec& spec, const std::vector<double>& alphas,
                           const std::vector<double>& creg_invs, Predictor predictor) {
    if (alphas.empty() || creg_invs.empty())
        throw std::invalid_argument("phase_diagram: empty grid");
    PhaseDiagram diagram{spec, alphas, creg_invs, {}};
    diagram.cells.reserve(alphas.size() * creg_invs.size());
    for (double alpha : alphas)
        for (double creg : creg_invs) {
            PhaseCell cell;
            cell.alpha = alpha;
            cell.creg_inv = creg;
            try {
                cell.report = margins(spec, alpha, creg, predictor);
            } catch (const std::exception& e) {
                cell.failed = true;
                cell.error = e.what();
            }
            diagram.cells.push_back(std::move(cell));
        }
    return diagram;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 49; ++i) grid.push_back(0.02 * i);
    return grid;
}

std::vector<double> default_creg_inv_grid() {
    std::vector<double> grid{0.0};
    // 21 geometric points over [1e-3, 1e1].
    for (int i = 0; i <= 20; ++i) grid.push_back(std::pow(10.0, -3.0 + 4.0 * i / 20.0));
    return grid;
}

std::vector<SweepSummary> sweep_task_params(const std::vector<TaskSpec>& specs,
                                            const std::vector<double>& alphas,
                                            const std::vector<double>& creg_invs,
                                            Predictor predictor) {
    std::vector<SweepSummary> out;
    for (const auto& spec : specs) {
        if (spec.kind != TaskKind::TIExc)
            throw std::invalid_argument("sweep_task_params: all specs must be tiexc");
        PhaseDiagram diagram = phase_diagram(spec, alphas, creg_invs, predictor);
        SweepSummary s;
        s.spec = spec;
        int total = 0;
        for (const auto& cell : diagram.cells) {
            if (cell.failed) continue;
            ++total;
            s.mem_transitive_area +=
                cell.report.split(SplitName::MemTransitive).success;
            s.mem_intransitive_area +=
                cell.report.split(SplitName::MemIntransitive).success;
            s.within_area += cell.report.split(SplitName::WithinSection).success;
            s.cross_area += cell.report.split(SplitName::CrossSection).success;
        }
        if (total > 0) {
            s.mem_transitive_area /= total;
            s.mem_intransitive_area /= total;
            s.within_area /= total;
            s.cross_area /= total;
        }
        out.push_back(s);
    }
    return out;
}

namespace {

double closed_form_margin(const TaskSpec& spec, double alpha, double creg_inv,
                          ItemPair pair, int expected) {
    return expected * predict_closed_form({alpha, creg_inv, spec}, pair);
}

}  // namespace

std::vector<MarginCurve> margin_curves(const TaskSpec& spec, bool vary_alpha,
                                       double fixed_value,
                                       const std::vector<double>& samples,
                                       const std::vector<ItemPair>& pairs) {
    spec.validate();
    if (samples.size() < 2)
        throw std::invalid_argument("margin_curves: need at least two samples");
    std::vector<MarginCurve> curves;
    for (ItemPair pair : pairs) {
        auto expected = expected_label(spec, pair);
        if (!expected)
            throw std::invalid_argument("margin_curves: unscored pair requested");
        MarginCurve curve;
        curve.pair = pair;
        curve.expected = *expected;
        auto eval = [&](double x) {
            double alpha = vary_alpha ? x : fixed_value;
            double creg = vary_alpha ? fixed_value : x;
            return closed_form_margin(spec, alpha, creg, pair, *expected);
        };
        for (double x : samples) {
            curve.xs.push_back(x);
            curve.margins.push_back(eval(x));
        }
        // Margins are continuous in both parameters off the degenerate
        // boundary; bracketed sign changes are refined by bisection.
        for (size_t i = 0; i + 1 < samples.size(); ++i) {
            double lo = samples[i], hi = samples[i + 1];
            double flo = curve.margins[i], fhi = curve.margins[i + 1];
            if (flo == 0.0 || flo * fhi >= 0.0) continue;
            while (hi - lo > 1e-6) {
                double mid = 0.5 * (lo + hi);
                double fm = eval(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            curve.zero_crossings.push_back(0.5 * (lo + hi));
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace relkrr
