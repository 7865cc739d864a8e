#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "relkrr/analysis.hpp"
#include "relkrr/closed_form.hpp"
#include "relkrr/encoding.hpp"

namespace relkrr::io {

// Schema version stamped into every JSON artifact.
constexpr int kSchemaVersion = 1;

// 17 significant digits, '.' decimal separator regardless of locale;
// round-trips any double.
std::string format_double(double v);

// Minimal CSV emitter: '\n' line endings, '#'-prefixed comment lines for the
// resolved-configuration provenance header, doubles via format_double.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void comment(const std::string& text);
    // One comment line per top-level key of a (flat) JSON config object.
    void provenance(const nlohmann::json& config);
    void row(const std::vector<std::string>& cells);

    static std::string cell(double v) { return format_double(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(std::string v) { return v; }

  private:
    std::ostream& out_;
};

void write_rank_profile_csv(std::ostream& out, const RankProfile& profile,
                            const nlohmann::json& config);
void write_decomposition_csv(std::ostream& out, const Decomposition& dec,
                             const nlohmann::json& config);

void write_phase_diagram_csv(std::ostream& out, const PhaseDiagram& diagram,
                             const nlohmann::json& config);
nlohmann::json phase_diagram_json(const PhaseDiagram& diagram,
                                  const nlohmann::json& config);

void write_margin_curves_csv(std::ostream& out, const std::vector<MarginCurve>& curves,
                             bool vary_alpha, const nlohmann::json& config);
void write_sweep_csv(std::ostream& out, const std::vector<SweepSummary>& sweeps,
                     const nlohmann::json& config);

// Square matrix with 1-based row/col item labels; NaN cells print as "nan".
void write_matrix_csv(std::ostream& out, const std::vector<double>& values, int n,
                      const nlohmann::json& config);

}  // namespace relkrr::io
