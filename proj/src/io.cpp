#include "relkrr/io.hpp"

#include <cmath>
#include <cstdio>

namespace relkrr::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // snprintf honors the C locale set at startup; we never touch it, so the
    // decimal separator stays '.'.
    return buf;
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::provenance(const nlohmann::json& config) {
    for (const auto& [key, value] : config.items()) {
        if (value.is_number_float())
            comment(key + "=" + format_double(value.get<double>()));
        else if (value.is_string())
            comment(key + "=" + value.get<std::string>());
        else
            comment(key + "=" + value.dump());
    }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

void write_rank_profile_csv(std::ostream& out, const RankProfile& profile,
                            const nlohmann::json& config) {
    CsvWriter w(out);
    w.provenance(config);
    w.row({"j", "r_ti", "r_pert", "r"});
    for (int j = 1; j <= profile.n; ++j)
        w.row({CsvWriter::cell(j), CsvWriter::cell(profile.r_ti[j - 1]),
               CsvWriter::cell(profile.r_pert[j - 1]), CsvWriter::cell(profile.r[j - 1])});
}

void write_decomposition_csv(std::ostream& out, const Decomposition& dec,
                             const nlohmann::json& config) {
    CsvWriter w(out);
    w.provenance(config);
    w.comment("bias=" + format_double(dec.bias));
    w.row({"j", "r"});
    for (int j = 0; j < dec.ranks.size(); ++j)
        w.row({CsvWriter::cell(j + 1), CsvWriter::cell(dec.ranks(j))});
    w.comment("conjunctive coefficients, row j / column k");
    for (int j = 0; j < dec.conjunctive.rows(); ++j) {
        std::vector<std::string> cells;
        for (int k = 0; k < dec.conjunctive.cols(); ++k)
            cells.push_back(CsvWriter::cell(dec.conjunctive(j, k)));
        w.row(cells);
    }
}

void write_phase_diagram_csv(std::ostream& out, const PhaseDiagram& diagram,
                             const nlohmann::json& config) {
    CsvWriter w(out);
    w.provenance(config);
    w.row({"alpha", "creg_inv", "split", "min_margin", "mean_margin", "success"});
    for (const auto& cell : diagram.cells) {
        if (cell.failed) {
            w.row({CsvWriter::cell(cell.alpha), CsvWriter::cell(cell.creg_inv), "error",
                   "nan", "nan", "0"});
            continue;
        }
        for (const auto& split : cell.report.splits)
            w.row({CsvWriter::cell(cell.alpha), CsvWriter::cell(cell.creg_inv),
                   split.split, CsvWriter::cell(split.min_margin),
                   CsvWriter::cell(split.mean_margin), CsvWriter::cell(split.success)});
    }
}

nlohmann::json phase_diagram_json(const PhaseDiagram& diagram,
                                  const nlohmann::json& config) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = config;
    j["task"] = diagram.spec.to_json();
    j["alphas"] = diagram.alphas;
    j["creg_invs"] = diagram.creg_invs;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : diagram.cells) {
        nlohmann::json c;
        c["alpha"] = cell.alpha;
        c["creg_inv"] = cell.creg_inv;
        if (cell.failed) {
            c["error"] = cell.error;
        } else {
            nlohmann::json splits = nlohmann::json::array();
            for (const auto& s : cell.report.splits)
                splits.push_back({{"split", s.split},
                                  {"min_margin", s.min_margin},
                                  {"mean_margin", s.mean_margin},
                                  {"success", s.success}});
            c["splits"] = std::move(splits);
            c["oracle_fallback"] = cell.report.oracle_fallback;
        }
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    return j;
}

void write_margin_curves_csv(std::ostream& out, const std::vector<MarginCurve>& curves,
                             bool vary_alpha, const nlohmann::json& config) {
    CsvWriter w(out);
    w.provenance(config);
    const std::string x_name = vary_alpha ? "alpha" : "creg_inv";
    w.row({"j", "k", "expected", x_name, "margin"});
    for (const auto& curve : curves) {
        for (size_t i = 0; i < curve.xs.size(); ++i)
            w.row({CsvWriter::cell(curve.pair.j), CsvWriter::cell(curve.pair.k),
                   CsvWriter::cell(curve.expected), CsvWriter::cell(curve.xs[i]),
                   CsvWriter::cell(curve.margins[i])});
        for (double x : curve.zero_crossings)
            w.comment("zero_crossing j=" + std::to_string(curve.pair.j) +
                      " k=" + std::to_string(curve.pair.k) + " " + x_name + "=" +
                      format_double(x));
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepSummary>& sweeps,
                     const nlohmann::json& config) {
    CsvWriter w(out);
    w.provenance(config);
    w.row({"n", "p", "q", "mem_transitive_area", "mem_intransitive_area", "within_area",
           "cross_area"});
    for (const auto& s : sweeps)
        w.row({CsvWriter::cell(s.spec.n), CsvWriter::cell(s.spec.p),
               CsvWriter::cell(s.spec.q), CsvWriter::cell(s.mem_transitive_area),
               CsvWriter::cell(s.mem_intransitive_area), CsvWriter::cell(s.within_area),
               CsvWriter::cell(s.cross_area)});
}

void write_matrix_csv(std::ostream& out, const std::vector<double>& values, int n,
                      const nlohmann::json& config) {
    if (static_cast<int>(values.size()) != n * n)
        throw std::invalid_argument("write_matrix_csv: size mismatch");
    CsvWriter w(out);
    w.provenance(config);
    std::vector<std::string> header{"item"};
    for (int k = 1; k <= n; ++k) header.push_back(CsvWriter::cell(k));
    w.row(header);
    for (int j = 0; j < n; ++j) {
        std::vector<std::string> cells{CsvWriter::cell(j + 1)};
        for (int k = 0; k < n; ++k)
            cells.push_back(CsvWriter::cell(values[static_cast<size_t>(j) * n + k]));
        w.row(cells);
    }
}

}  // namespace relkrr::io
