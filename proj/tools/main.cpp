// Command-line front end. Every subcommand writes deterministic, provenance-
// stamped files; identical configuration and seed yield byte-identical
// output. Exit codes: 0 success, 1 verification/sampling failure, 2 usage
// error, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "relkrr/analysis.hpp"
#include "relkrr/closed_form.hpp"
#include "relkrr/dual.hpp"
#include "relkrr/encoding.hpp"
#include "relkrr/io.hpp"
#include "relkrr/poker/equity.hpp"
#include "relkrr/poker/hierarchy.hpp"
#include "relkrr/random_features.hpp"

namespace {

using namespace relkrr;

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- shared option plumbing -------------------------------------------------

struct TaskOpts {
    int n = 9;
    std::string kind;  // empty = infer: tiexc when p and q given, else ti
    int p = 0;
    int q = 0;
};

void add_task_opts(CLI::App* cmd, TaskOpts& t) {
    cmd->add_option("--n", t.n, "number of items");
    cmd->add_option("--kind", t.kind, "task kind: ti | tp | tiexc (default: inferred)");
    cmd->add_option("--p", t.p, "exception pair upper item (tiexc)");
    cmd->add_option("--q", t.q, "exception pair lower item (tiexc)");
}

TaskSpec make_spec(const TaskOpts& t) {
    std::string kind = t.kind;
    if (kind.empty()) kind = (t.p > 0 || t.q > 0) ? "tiexc" : "ti";
    TaskSpec spec{t.n, task_kind_from_string(kind), t.p, t.q};
    spec.validate();
    return spec;
}

struct OutOpt {
    std::string path = "-";
};

void add_out_opt(CLI::App* cmd, OutOpt& o) {
    cmd->add_option("--out", o.path, "output file ('-' for stdout)");
}

// Streams the writer either to stdout or to the named file.
void emit(const OutOpt& o, const std::function<void(std::ostream&)>& write) {
    if (o.path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + o.path);
    write(f);
}

nlohmann::json base_config(const std::string& command, const TaskSpec& spec) {
    nlohmann::json cfg;
    cfg["command"] = command;
    cfg["task"] = spec.to_json();
    return cfg;
}

TaskSpec parse_spec_triplet(const std::string& s) {
    std::istringstream in(s);
    int n = 0, p = 0, q = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> n >> c1 >> p >> c2 >> q) || c1 != ',' || c2 != ',')
        throw CLI::ValidationError("--spec", "expected n,p,q (e.g. 9,6,4)");
    return TaskSpec::ti_exc(n, p, q);
}

ItemPair parse_pair(const std::string& s) {
    std::istringstream in(s);
    int j = 0, k = 0;
    char c = 0;
    if (!(in >> j >> c >> k) || c != ',')
        throw CLI::ValidationError("--pair", "expected j,k (e.g. 3,7)");
    return {j, k};
}

// ---- verify -----------------------------------------------------------------

struct VerifyOpts {
    TaskOpts task;
    std::vector<double> alphas;
    std::vector<double> creg_invs;
    double tol = 1e-8;
    OutOpt out;
};

int run_verify(const VerifyOpts& o) {
    TaskSpec spec = make_spec(o.task);
    if (spec.kind == TaskKind::TP)
        throw std::invalid_argument("verify: tp has no closed form to verify");
    std::vector<double> alphas = o.alphas;
    if (alphas.empty())
        for (int i = 0; i < 10; ++i) alphas.push_back(0.05 + 0.1 * i);
    std::vector<double> cregs =
        o.creg_invs.empty() ? std::vector<double>{0.0, 0.01, 0.1, 1.0, 10.0}
                            : o.creg_invs;

    nlohmann::json cfg = base_config("verify", spec);
    cfg["tol"] = o.tol;

    bool all_ok = true;
    std::ostringstream body;
    io::CsvWriter w(body);
    w.provenance(cfg);
    w.row({"alpha", "creg_inv", "status", "max_deviation", "worst_j", "worst_k"});
    for (double alpha : alphas)
        for (double creg : cregs) {
            if (alpha == 0.0 && creg == 0.0) {
                w.row({io::CsvWriter::cell(alpha), io::CsvWriter::cell(creg),
                       "degenerate, oracle-only", "nan", "0", "0"});
                continue;
            }
            auto oracle = dual_solve(KernelParams::from_alpha(alpha, creg),
                                     build_training_set(spec));
            RankProfile profile = rank_profile({alpha, creg, spec});
            double worst = 0.0;
            ItemPair worst_pair{0, 0};
            bool ok = true;
            for (int j = 1; j <= spec.n; ++j)
                for (int k = 1; k <= spec.n; ++k) {
                    if (j == k) continue;
                    double ref = oracle.predict({j, k});
                    double dev = std::abs(predict_from_profile(profile, spec, {j, k}) -
                                          ref);
                    if (dev > worst) {
                        worst = dev;
                        worst_pair = {j, k};
                    }
                    if (dev > o.tol * std::max(1.0, std::abs(ref))) ok = false;
                }
            if (!ok) {
                all_ok = false;
                std::cerr << "verify: deviation " << io::format_double(worst)
                          << " at n=" << spec.n << " p=" << spec.p << " q=" << spec.q
                          << " alpha=" << alpha << " creg_inv=" << creg << " pair=("
                          << worst_pair.j << "," << worst_pair.k << ")\n";
            }
            w.row({io::CsvWriter::cell(alpha), io::CsvWriter::cell(creg),
                   ok ? "ok" : "fail", io::CsvWriter::cell(worst),
                   io::CsvWriter::cell(worst_pair.j), io::CsvWriter::cell(worst_pair.k)});
        }
    emit(o.out, [&](std::ostream& s) { s << body.str(); });
    return all_ok ? 0 : 1;
}

// ---- ranks ------------------------------------------------------------------

struct RanksOpts {
    TaskOpts task;
    double alpha = 0.0;
    double creg_inv = 0.0;
    OutOpt out;
};

int run_ranks(const RanksOpts& o) {
    TaskSpec spec = make_spec(o.task);
    RankProfile profile = rank_profile({o.alpha, o.creg_inv, spec});
    nlohmann::json cfg = base_config("ranks", spec);
    cfg["alpha"] = o.alpha;
    cfg["creg_inv"] = o.creg_inv;
    cfg["lambda"] = profile.lambda;
    cfg["m"] = profile.m;
    if (spec.kind == TaskKind::TIExc) cfg["hbar"] = profile.hbar;
    emit(o.out, [&](std::ostream& s) { io::write_rank_profile_csv(s, profile, cfg); });
    return 0;
}

// ---- predict ----------------------------------------------------------------

struct PredictOpts {
    TaskOpts task;
    double alpha = 0.0;
    double creg_inv = 0.0;
    std::string predictor = "closed-form";
    std::vector<std::string> pairs;  // empty = all ordered pairs j != k
    OutOpt out;
};

int run_predict(const PredictOpts& o) {
    TaskSpec spec = make_spec(o.task);
    Predictor predictor = predictor_from_string(o.predictor);
    nlohmann::json cfg = base_config("predict", spec);
    cfg["alpha"] = o.alpha;
    cfg["creg_inv"] = o.creg_inv;
    cfg["predictor"] = o.predictor;

    std::vector<ItemPair> pairs;
    if (o.pairs.empty()) {
        for (int j = 1; j <= spec.n; ++j)
            for (int k = 1; k <= spec.n; ++k)
                if (j != k) pairs.push_back({j, k});
    } else {
        for (const auto& s : o.pairs) pairs.push_back(parse_pair(s));
    }

    std::function<double(ItemPair)> predict;
    if (predictor == Predictor::ClosedForm) {
        if (spec.kind == TaskKind::TP)
            throw std::invalid_argument("predict: tp requires --predictor oracle");
        RankProfile profile = rank_profile({o.alpha, o.creg_inv, spec});
        predict = [profile, spec](ItemPair p) {
            return predict_from_profile(profile, spec, p);
        };
    } else {
        DualSolution sol = dual_solve(KernelParams::from_alpha(o.alpha, o.creg_inv),
                                      build_training_set(spec));
        predict = [sol](ItemPair p) { return sol.predict(p); };
    }

    emit(o.out, [&](std::ostream& s) {
        io::CsvWriter w(s);
        w.provenance(cfg);
        w.row({"j", "k", "prediction", "expected"});
        for (ItemPair p : pairs) {
            validate_pair(spec, p);
            auto expected = expected_label(spec, p);
            w.row({io::CsvWriter::cell(p.j), io::CsvWriter::cell(p.k),
                   io::CsvWriter::cell(predict(p)),
                   expected ? io::CsvWriter::cell(*expected) : std::string()});
        }
    });
    return 0;
}

// ---- phase-diagram ----------------------------------------------------------

struct PhaseOpts {
    TaskOpts task;
    std::vector<double> alphas;
    std::vector<double> creg_invs;
    bool grid_default = false;
    std::string predictor = "closed-form";
    std::string format = "csv";
    OutOpt out;
};

int run_phase(const PhaseOpts& o) {
    TaskSpec spec = make_spec(o.task);
    std::vector<double> alphas = o.alphas, cregs = o.creg_invs;
    if (o.grid_default || alphas.empty()) alphas = default_alpha_grid();
    if (o.grid_default || cregs.empty()) cregs = default_creg_inv_grid();
    PhaseDiagram diagram =
        phase_diagram(spec, alphas, cregs, predictor_from_string(o.predictor));
    nlohmann::json cfg = base_config("phase-diagram", spec);
    cfg["predictor"] = o.predictor;
    cfg["alphas"] = alphas.size();
    cfg["creg_invs"] = cregs.size();
    emit(o.out, [&](std::ostream& s) {
        if (o.format == "json")
            s << io::phase_diagram_json(diagram, cfg).dump(2) << "\n";
        else
            io::write_phase_diagram_csv(s, diagram, cfg);
    });
    return 0;
}

// ---- sweep ------------------------------------------------------------------

struct SweepOpts {
    std::vector<std::string> specs;
    std::string predictor = "closed-form";
    OutOpt out;
};

int run_sweep(const SweepOpts& o) {
    std::vector<TaskSpec> specs;
    for (const auto& s : o.specs) specs.push_back(parse_spec_triplet(s));
    auto sweeps = sweep_task_params(specs, default_alpha_grid(), default_creg_inv_grid(),
                                    predictor_from_string(o.predictor));
    nlohmann::json cfg;
    cfg["command"] = "sweep";
    cfg["predictor"] = o.predictor;
    cfg["grid"] = "default";
    emit(o.out, [&](std::ostream& s) { io::write_sweep_csv(s, sweeps, cfg); });
    return 0;
}

// ---- curves -----------------------------------------------------------------

struct CurvesOpts {
    TaskOpts task;
    std::string vary = "alpha";
    double fixed = 0.0;
    std::vector<std::string> pairs;
    double from = std::nan("");
    double to = std::nan("");
    int count = 101;
    OutOpt out;
};

int run_curves(const CurvesOpts& o) {
    TaskSpec spec = make_spec(o.task);
    bool vary_alpha = o.vary == "alpha";
    if (!vary_alpha && o.vary != "creg-inv")
        throw std::invalid_argument("curves: --vary must be alpha or creg-inv");
    if (o.pairs.empty()) throw std::invalid_argument("curves: need at least one --pair");
    double lo = std::isnan(o.from) ? (vary_alpha ? 0.01 : 0.0) : o.from;
    double hi = std::isnan(o.to) ? (vary_alpha ? 0.99 : 10.0) : o.to;
    if (o.count < 2 || hi <= lo)
        throw std::invalid_argument("curves: need count >= 2 and to > from");
    std::vector<double> xs;
    for (int i = 0; i < o.count; ++i)
        xs.push_back(lo + (hi - lo) * i / (o.count - 1));
    std::vector<ItemPair> pairs;
    for (const auto& s : o.pairs) pairs.push_back(parse_pair(s));

    auto curves = margin_curves(spec, vary_alpha, o.fixed, xs, pairs);
    nlohmann::json cfg = base_config("curves", spec);
    cfg["vary"] = o.vary;
    cfg[vary_alpha ? "creg_inv" : "alpha"] = o.fixed;
    emit(o.out, [&](std::ostream& s) {
        io::write_margin_curves_csv(s, curves, vary_alpha, cfg);
    });
    return 0;
}

// ---- features ---------------------------------------------------------------

struct FeaturesOpts {
    TaskOpts task;
    std::vector<int> widths;
    int seeds = 5;
    std::uint64_t base_seed = 1;
    std::string sigma = "relu";
    double creg_inv = 0.0;
    OutOpt out;
};

int run_features(const FeaturesOpts& o) {
    TaskSpec spec = make_spec(o.task);
    if (o.widths.empty()) throw std::invalid_argument("features: need --width");
    if (o.seeds < 1) throw std::invalid_argument("features: need --seeds >= 1");
    Nonlinearity sigma = nonlinearity_from_string(o.sigma);
    double c = o.creg_inv > 0.0 ? 1.0 / o.creg_inv : kInf;

    nlohmann::json cfg = base_config("features", spec);
    cfg["sigma"] = o.sigma;
    cfg["seeds"] = o.seeds;
    cfg["base_seed"] = o.base_seed;
    cfg["creg_inv"] = o.creg_inv;

    emit(o.out, [&](std::ostream& s) {
        io::CsvWriter w(s);
        w.provenance(cfg);
        w.row({"h", "seed", "alpha_hat", "max_gap"});
        for (int h : o.widths)
            for (int i = 0; i < o.seeds; ++i) {
                std::uint64_t seed = o.base_seed + static_cast<std::uint64_t>(i);
                auto row = rf_width_cell(FeatureConfig::make(spec.n, h, sigma, seed),
                                         spec, c);
                w.row({io::CsvWriter::cell(row.h),
                       std::to_string(static_cast<unsigned long long>(row.seed)),
                       io::CsvWriter::cell(row.alpha_hat),
                       io::CsvWriter::cell(row.max_gap)});
            }
    });
    return 0;
}

// ---- poker ------------------------------------------------------------------

struct PokerEquityOpts {
    std::string method = "mc";
    std::string a, b;  // class names for a single matchup
    long samples = 200000;
    std::uint64_t seed = 1;
    OutOpt out;
};

int run_poker_equity(const PokerEquityOpts& o) {
    using namespace relkrr::poker;
    bool single = !o.a.empty() || !o.b.empty();
    if (single && (o.a.empty() || o.b.empty()))
        throw std::invalid_argument("poker equity: --a and --b go together");
    nlohmann::json cfg;
    cfg["command"] = "poker equity";
    cfg["method"] = o.method;

    if (single) {
        HoleClass a = HoleClass::parse(o.a), b = HoleClass::parse(o.b);
        double e;
        if (o.method == "exact") {
            e = heads_up_equity_exact(a, b);
        } else if (o.method == "mc") {
            cfg["samples"] = o.samples;
            cfg["seed"] = o.seed;
            e = heads_up_equity_mc(a, b, o.samples, o.seed);
        } else {
            throw std::invalid_argument("poker equity: --method must be mc or exact");
        }
        emit(o.out, [&](std::ostream& s) {
            io::CsvWriter w(s);
            w.provenance(cfg);
            w.row({"a", "b", "equity"});
            w.row({a.name(), b.name(), io::CsvWriter::cell(e)});
        });
        return 0;
    }
    if (o.method != "mc")
        throw std::invalid_argument(
            "poker equity: the full exact matrix is out of scale; use --method mc "
            "or name a single matchup with --a/--b");
    if (o.out.path == "-")
        throw std::invalid_argument("poker equity: full matrix needs --out FILE");
    EquityMatrix eq = build_equity_matrix(o.samples, o.seed);
    save_equity_matrix(eq, o.out.path);
    return 0;
}

struct PokerHierarchyOpts {
    std::string matrix;
    TaskOpts task;
    double band_lo = 0.51;
    double band_hi = 0.60;
    std::uint64_t seed = 1;
    int max_restarts = 1000;
    OutOpt out;
};

nlohmann::json hierarchy_json(const relkrr::poker::HierarchySample& sample,
                              const TaskSpec& spec, const nlohmann::json& cfg) {
    using namespace relkrr::poker;
    nlohmann::json j;
    j["schema_version"] = io::kSchemaVersion;
    j["config"] = cfg;
    j["task"] = spec.to_json();
    nlohmann::json hands = nlohmann::json::array();
    for (int idx : sample.hands) hands.push_back(all_hole_classes()[idx].name());
    j["hands"] = std::move(hands);
    nlohmann::json constraints = nlohmann::json::array();
    for (const auto& c : sample.constraints)
        constraints.push_back(
            {{"winner", c.winner}, {"loser", c.loser}, {"equity", c.equity}});
    j["constraints"] = std::move(constraints);
    j["restarts_used"] = sample.restarts_used;
    return j;
}

int run_poker_hierarchy(const PokerHierarchyOpts& o) {
    using namespace relkrr::poker;
    TaskSpec spec = make_spec(o.task);
    EquityMatrix eq = load_equity_matrix(o.matrix);
    nlohmann::json cfg;
    cfg["command"] = "poker hierarchy";
    cfg["band_lo"] = o.band_lo;
    cfg["band_hi"] = o.band_hi;
    cfg["seed"] = o.seed;
    cfg["max_restarts"] = o.max_restarts;
    HierarchySample sample =
        sample_hierarchy(spec, eq, o.band_lo, o.band_hi, o.seed, o.max_restarts);
    emit(o.out, [&](std::ostream& s) {
        s << hierarchy_json(sample, spec, cfg).dump(2) << "\n";
    });
    return 0;
}

struct PokerProportionsOpts {
    PokerHierarchyOpts base;
    int samples = 200;
};

int run_poker_proportions(const PokerProportionsOpts& o) {
    using namespace relkrr::poker;
    TaskSpec spec = make_spec(o.base.task);
    EquityMatrix eq = load_equity_matrix(o.base.matrix);
    std::vector<HierarchySample> samples;
    int failures = 0;
    for (int i = 0; i < o.samples; ++i) {
        std::uint64_t seed = matchup_seed(o.base.seed, i, 0);
        try {
            samples.push_back(sample_hierarchy(spec, eq, o.base.band_lo, o.base.band_hi,
                                               seed, o.base.max_restarts));
        } catch (const SamplingFailure&) {
            ++failures;
        }
    }
    if (samples.empty())
        throw SamplingFailure("poker proportions: every seed failed", o.samples);
    auto prop = generalization_proportions(samples, eq, spec);
    nlohmann::json cfg;
    cfg["command"] = "poker proportions";
    cfg["task"] = spec.to_json();
    cfg["band_lo"] = o.base.band_lo;
    cfg["band_hi"] = o.base.band_hi;
    cfg["seed"] = o.base.seed;
    cfg["max_restarts"] = o.base.max_restarts;
    cfg["requested_samples"] = o.samples;
    cfg["successful_samples"] = static_cast<int>(samples.size());
    cfg["failed_samples"] = failures;
    emit(o.base.out,
         [&](std::ostream& s) { io::write_matrix_csv(s, prop, spec.n, cfg); });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exchangeable-kernel ridge regression on relational tasks"};
    app.require_subcommand(1);
    std::function<int()> run;

    auto verify_opts = std::make_shared<VerifyOpts>();
    auto* verify = app.add_subcommand(
        "verify", "compare the closed form against the dual oracle on a grid");
    add_task_opts(verify, verify_opts->task);
    verify->add_option("--alpha", verify_opts->alphas, "conjunctivity grid");
    verify->add_option("--creg-inv", verify_opts->creg_invs,
                       "inverse effective regularization grid");
    verify->add_option("--tol", verify_opts->tol, "relative tolerance");
    add_out_opt(verify, verify_opts->out);
    verify->callback([&, verify_opts] { run = [verify_opts] { return run_verify(*verify_opts); }; });

    auto ranks_opts = std::make_shared<RanksOpts>();
    auto* ranks = app.add_subcommand("ranks", "closed-form rank profile");
    add_task_opts(ranks, ranks_opts->task);
    ranks->add_option("--alpha", ranks_opts->alpha, "conjunctivity")->required();
    ranks->add_option("--creg-inv", ranks_opts->creg_inv,
                      "inverse effective regularization");
    add_out_opt(ranks, ranks_opts->out);
    ranks->callback([&, ranks_opts] { run = [ranks_opts] { return run_ranks(*ranks_opts); }; });

    auto predict_opts = std::make_shared<PredictOpts>();
    auto* predict = app.add_subcommand("predict", "predictions on ordered pairs");
    add_task_opts(predict, predict_opts->task);
    predict->add_option("--alpha", predict_opts->alpha, "conjunctivity")->required();
    predict->add_option("--creg-inv", predict_opts->creg_inv,
                        "inverse effective regularization");
    predict->add_option("--predictor", predict_opts->predictor,
                        "closed-form | oracle");
    predict->add_option("--pair", predict_opts->pairs, "pair j,k (repeatable)");
    add_out_opt(predict, predict_opts->out);
    predict->callback(
        [&, predict_opts] { run = [predict_opts] { return run_predict(*predict_opts); }; });

    auto phase_opts = std::make_shared<PhaseOpts>();
    auto* phase = app.add_subcommand("phase-diagram",
                                     "per-cell margin report over a parameter grid");
    add_task_opts(phase, phase_opts->task);
    phase->add_option("--alpha", phase_opts->alphas, "conjunctivity grid");
    phase->add_option("--creg-inv", phase_opts->creg_invs,
                      "inverse effective regularization grid");
    phase->add_flag("--grid-default", phase_opts->grid_default, "use the default grids");
    phase->add_option("--predictor", phase_opts->predictor, "closed-form | oracle");
    phase->add_option("--format", phase_opts->format, "csv | json");
    add_out_opt(phase, phase_opts->out);
    phase->callback([&, phase_opts] { run = [phase_opts] { return run_phase(*phase_opts); }; });

    auto sweep_opts = std::make_shared<SweepOpts>();
    auto* sweep =
        app.add_subcommand("sweep", "success-area fractions across task parameters");
    sweep->add_option("--spec", sweep_opts->specs, "task as n,p,q (repeatable)")
        ->required();
    sweep->add_option("--predictor", sweep_opts->predictor, "closed-form | oracle");
    add_out_opt(sweep, sweep_opts->out);
    sweep->callback([&, sweep_opts] { run = [sweep_opts] { return run_sweep(*sweep_opts); }; });

    auto curves_opts = std::make_shared<CurvesOpts>();
    auto* curves =
        app.add_subcommand("curves", "margin curves with bisected zero crossings");
    add_task_opts(curves, curves_opts->task);
    curves->add_option("--vary", curves_opts->vary, "alpha | creg-inv");
    curves->add_option("--fixed", curves_opts->fixed, "value of the non-varied parameter")
        ->required();
    curves->add_option("--pair", curves_opts->pairs, "pair j,k (repeatable)")
        ->required();
    curves->add_option("--from", curves_opts->from, "sweep start");
    curves->add_option("--to", curves_opts->to, "sweep end");
    curves->add_option("--count", curves_opts->count, "sample count");
    add_out_opt(curves, curves_opts->out);
    curves->callback(
        [&, curves_opts] { run = [curves_opts] { return run_curves(*curves_opts); }; });

    auto features_opts = std::make_shared<FeaturesOpts>();
    auto* features =
        app.add_subcommand("features", "random-features width sweep (h, alpha_hat, gap)");
    add_task_opts(features, features_opts->task);
    features->add_option("--width", features_opts->widths, "network width (repeatable)")
        ->required();
    features->add_option("--seeds", features_opts->seeds, "seeds per width");
    features->add_option("--base-seed", features_opts->base_seed, "first seed");
    features->add_option("--sigma", features_opts->sigma, "relu | tanh | identity");
    features->add_option("--creg-inv", features_opts->creg_inv,
                         "inverse effective regularization (0 = min-norm)");
    add_out_opt(features, features_opts->out);
    features->callback(
        [&, features_opts] { run = [features_opts] { return run_features(*features_opts); }; });

    auto* poker = app.add_subcommand("poker", "heads-up equity and hierarchy sampling");
    poker->require_subcommand(1);

    auto pe_opts = std::make_shared<PokerEquityOpts>();
    auto* pe = poker->add_subcommand("equity",
                                     "equity matrix or a single matchup equity");
    pe->add_option("--method", pe_opts->method, "mc | exact");
    pe->add_option("--a", pe_opts->a, "first class (e.g. AA)");
    pe->add_option("--b", pe_opts->b, "second class (e.g. 72o)");
    pe->add_option("--samples", pe_opts->samples, "Monte Carlo samples per matchup");
    pe->add_option("--seed", pe_opts->seed, "base seed");
    add_out_opt(pe, pe_opts->out);
    pe->callback([&, pe_opts] { run = [pe_opts] { return run_poker_equity(*pe_opts); }; });

    auto ph_opts = std::make_shared<PokerHierarchyOpts>();
    auto* ph = poker->add_subcommand("hierarchy", "sample one constrained hierarchy");
    ph->add_option("--matrix", ph_opts->matrix, "equity matrix file")->required();
    add_task_opts(ph, ph_opts->task);
    ph->add_option("--band-lo", ph_opts->band_lo, "winner equity lower bound");
    ph->add_option("--band-hi", ph_opts->band_hi, "winner equity upper bound");
    ph->add_option("--seed", ph_opts->seed, "seed");
    ph->add_option("--max-restarts", ph_opts->max_restarts, "restart budget");
    add_out_opt(ph, ph_opts->out);
    ph->callback(
        [&, ph_opts] { run = [ph_opts] { return run_poker_hierarchy(*ph_opts); }; });

    auto pp_opts = std::make_shared<PokerProportionsOpts>();
    auto* pp = poker->add_subcommand("proportions",
                                     "generalization proportions over many hierarchies");
    pp->add_option("--matrix", pp_opts->base.matrix, "equity matrix file")->required();
    add_task_opts(pp, pp_opts->base.task);
    pp->add_option("--band-lo", pp_opts->base.band_lo, "winner equity lower bound");
    pp->add_option("--band-hi", pp_opts->base.band_hi, "winner equity upper bound");
    pp->add_option("--seed", pp_opts->base.seed, "base seed");
    pp->add_option("--max-restarts", pp_opts->base.max_restarts, "restart budget");
    pp->add_option("--samples", pp_opts->samples, "number of hierarchies");
    add_out_opt(pp, pp_opts->base.out);
    pp->callback(
        [&, pp_opts] { run = [pp_opts] { return run_poker_proportions(*pp_opts); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run ? run() : 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what()
                  << " (condition " << io::format_double(e.condition) << ")\n";
        return 3;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
