#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsdcm/analytics.hpp"
#include "tsdcm/config.hpp"

namespace tsdcm {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest-free, locale-independent rendering with 17 significant digits.
std::string format_double(double value);

struct RunOutputs {
    RunConfig config;
    std::optional<EnsembleSummary> summary;
    std::optional<TheoremReport> theorem;
    std::optional<SensitivityResult> sweep;
    std::optional<PropositionReport> propositions;
    /// Prop 2 violations and Prop 3 gap measured on the main ensemble.
    std::optional<HorizonDiagnostics> main_horizon;
};

HorizonDiagnostics horizon_diagnostics(const EnsembleResult& results, const TriggerSpec& spec);

std::string mean_paths_csv(const EnsembleSummary& summary);
std::string summary_csv(const EnsembleSummary& summary);
std::string sweep_csv(const SensitivityResult& sweep);
nlohmann::json report_json(const RunOutputs& outputs);

/// Writes whichever of mean_paths.csv, summary.csv, sweep.csv and
/// `report_name` the outputs support; returns the paths written.
std::vector<std::filesystem::path> write_outputs(const RunOutputs& outputs, const std::filesystem::path& dir,
                                                 const std::string& report_name = "report.json");

}  // namespace tsdcm
