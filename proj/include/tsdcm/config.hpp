#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsdcm/ensemble.hpp"
#include "tsdcm/mechanism.hpp"
#include "tsdcm/model.hpp"

namespace tsdcm {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    ModelConfig model;
    TriggerSpec trigger;
    SimulationPlan plan;
    std::filesystem::path output_dir = "tsdcm_out";
    std::vector<double> sweep_alphas{0.1, 0.2, 0.3, 0.4};

    bool operator==(const RunConfig&) const = default;
};

/// Calibrated debt parameters for both regimes, growth defaults
/// c = 0.004, d = 0.1, eta = 0.5, no growth jumps; lambda01 = 0.12,
/// lambda10 = 0.08; D* = 0.80, g* = 0.03, alpha = 0.3, seed 12345.
RunConfig default_run_config();

/// Throws ValidationError naming the first offending field.
void validate(const RunConfig& cfg);

/// Overlays `j` on the defaults. Unknown keys are rejected. Throws
/// ValidationError for bad values and std::runtime_error for parse failures.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace tsdcm
