#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsdcm/mechanism.hpp"
#include "tsdcm/model.hpp"

namespace tsdcm {

inline constexpr double kDefaultBarrier = 1.40;
inline constexpr double kDominanceTolerance = 1e-12;

struct SimulationPlan {
    std::uint64_t n_paths = 10'000;
    double horizon = 10.0;
    double dt = 0.01;
    std::uint64_t seed = 12345;

    bool operator==(const SimulationPlan&) const = default;
};

void validate(const SimulationPlan& plan, const std::string& prefix = "plan");

struct PairedPathResult {
    PathRecord baseline;
    PathRecord converted;
    HittingTimes hitting;
    std::optional<TokenPayout> payout;
    bool default_baseline = false;
    bool default_converted = false;

    bool operator==(const PairedPathResult&) const = default;
};

/// Per-path quantities the analytics need; the full trajectories are dropped.
struct PathSummary {
    bool triggered = false;
    std::optional<double> tau;
    std::optional<double> tau_d;
    std::optional<double> tau_g;
    double final_debt_baseline = 0.0;     ///< at the end of the simulation grid
    double final_debt_converted = 0.0;
    double maturity_debt_baseline = 0.0;  ///< at the token maturity T
    double maturity_debt_converted = 0.0;
    double overshoot = 0.0;             ///< max(D_tau - D*, 0), post-conversion; 0 if untriggered
    double growth_integral = 0.0;       ///< integral of (g - g*)^+ over [tau, T); 0 if untriggered
    double mean_growth_after_tau = 0.0; ///< grid mean of g over [tau, T); 0 if untriggered
    TokenPayout payout;                 ///< zero if untriggered
    bool default_baseline = false;
    bool default_converted = false;
    std::uint64_t dominance_violations = 0;  ///< grid points after tau with D^C > D^0 + tol

    bool operator==(const PathSummary&) const = default;
};

struct EnsembleResult {
    SimulationPlan plan;
    std::vector<double> times;
    std::vector<double> mean_debt_baseline;
    std::vector<double> mean_debt_converted;
    std::vector<PathSummary> paths;
    std::uint64_t trigger_count = 0;

    bool operator==(const EnsembleResult&) const = default;
};

struct EnsembleOptions {
    unsigned threads = 1;
};

/// Raised when a single path fails; carries its index.
class PathFailure : public std::runtime_error {
public:
    PathFailure(std::uint64_t index, const std::string& what)
        : std::runtime_error("path " + std::to_string(index) + ": " + what), index_(index) {}
    std::uint64_t index() const noexcept { return index_; }

private:
    std::uint64_t index_;
};

/**
 * Simulates the baseline path for `path_index`, locates the activation time
 * on it, and if triggered restarts a converted branch at tau from
 * (1 - alpha) * D_tau with the same draws (common random numbers). Both
 * branches are checked against the default barrier at every grid point.
 */
PairedPathResult run_paired_path(const ModelConfig& cfg, const TriggerSpec& spec, const SimulationPlan& plan,
                                 std::uint64_t path_index);

PathSummary summarize_path(const PairedPathResult& result, const TriggerSpec& spec);

/// Output is identical for every thread count: each path's draws depend only
/// on (seed, index) and reductions run in index order.
EnsembleResult run_ensemble(const ModelConfig& cfg, const TriggerSpec& spec, const SimulationPlan& plan,
                            const EnsembleOptions& options = {});

}  // namespace tsdcm
