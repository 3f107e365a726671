#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsdcm/ensemble.hpp"

namespace tsdcm {

enum class Branch { baseline, converted };

/// Nearest-rank percentile: the ceil(q/100 * n)-th order statistic, with
/// q = 0 mapping to the minimum.
double percentile(std::span<const double> values, double q);

struct Estimate {
    double mean = 0.0;
    double se = 0.0;  ///< standard error of the mean
    double ci_low() const noexcept { return mean - 1.96 * se; }
    double ci_high() const noexcept { return mean + 1.96 * se; }
};

/// Sample mean and standard error (n - 1 denominator; se = 0 for n = 1).
Estimate estimate_mean(std::span<const double> values);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  ///< sample standard deviation
};

MeanStd mean_std(std::span<const double> values);

struct DistributionSummary {
    double p10 = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double mean = 0.0;
    std::uint64_t count = 0;
};

DistributionSummary distribution(std::span<const double> values);

/// Binomial estimate; se = sqrt(p (1 - p) / N).
Estimate default_probability(const EnsembleResult& results, Branch branch);

/// Payout statistics over all paths; untriggered paths enter as zero.
struct PayoutStats {
    MeanStd overshoot;  ///< pi1, debt-ratio units
    MeanStd growth;     ///< pi2
    MeanStd total;
    MeanStd pv_overshoot;  ///< discounted currency units
    MeanStd pv_growth;
    MeanStd pv_total;
};

struct EnsembleSummary {
    std::vector<double> times;
    std::vector<double> mean_debt_baseline;
    std::vector<double> mean_debt_converted;
    DistributionSummary final_baseline;
    DistributionSummary final_converted;
    Estimate default_baseline;
    Estimate default_converted;
    /// Paired differences baseline - converted, with their own standard errors.
    Estimate final_debt_reduction;
    Estimate default_reduction;
    double relative_reduction = 0.0;  ///< (mean baseline - mean converted) / mean baseline
    Estimate activation;              ///< P(tau <= T)
    PayoutStats payout;
    std::uint64_t n_paths = 0;
    std::uint64_t trigger_count = 0;
};

EnsembleSummary summarize(const EnsembleResult& results);

struct SensitivityResult {
    std::vector<double> alphas;
    std::vector<double> mean_final_debt;  ///< converted branch
    std::vector<double> payout_mean;
    std::vector<double> payout_std;
    /// Paths whose final converted debt rose between consecutive alphas.
    std::uint64_t pathwise_violations = 0;
};

/// One paired ensemble per alpha, all with the plan's seed.
SensitivityResult sweep_alpha(const ModelConfig& cfg, const TriggerSpec& spec, const SimulationPlan& plan,
                              std::span<const double> alphas, const EnsembleOptions& options = {});

struct DriftConditions {
    double debt_drift_at_threshold = 0.0;    ///< a0 - b0 D*
    double growth_drift_at_threshold = 0.0;  ///< c0 - d0 g*
    /// Both drifts positive, as the condition is literally written in the
    /// proposition. Reported only.
    bool literal_condition = false;
    /// Debt drift negative at D* (equilibrium a0/b0 below the threshold) and
    /// growth drift positive at g*: both processes are pulled across their
    /// thresholds. This gates the activation assertion.
    bool pulls_toward_thresholds = false;
};

DriftConditions drift_conditions(const ModelConfig& cfg, const TriggerSpec& spec);

struct HorizonDiagnostics {
    double horizon = 0.0;
    Estimate activation;  ///< P(tau <= T)
    /// E[D_T^0 - D_T^C] - alpha D* P(tau <= T); predicted >= 0.
    Estimate expected_reduction_gap;
    std::uint64_t dominance_violations = 0;
};

struct PropositionReport {
    DriftConditions drift;
    std::vector<HorizonDiagnostics> horizons;
    bool activation_monotone = false;
    bool activation_assertion_run = false;  ///< false when drift conditions fail
    bool activation_assertion_passed = false;
    std::uint64_t dominance_violations = 0;
    bool dominance_passed = false;

    bool passed() const noexcept {
        return dominance_passed && (!activation_assertion_run || activation_assertion_passed);
    }
};

/// Runs one ensemble per plan. Plans must have strictly increasing horizons;
/// each run uses the plan's horizon as the token maturity.
PropositionReport proposition_diagnostics(const ModelConfig& cfg, const TriggerSpec& spec,
                                          std::span<const SimulationPlan> plans,
                                          const EnsembleOptions& options = {});

struct TheoremReport {
    Estimate lhs;  ///< E[D_T^0 - D_T^C - Pi_T]
    Estimate rhs;  ///< alpha D* P - beta E[overshoot] - gamma E[growth integral]
    double activation_probability = 0.0;
    std::optional<double> mean_tau;  ///< over triggered paths; stands in for tau
    bool sufficient_condition = false;  ///< alpha D* > beta D* + gamma (T - mean_tau) g*
    double lhs_minus_rhs = 0.0;
    /// Mean of g over [tau, T) on triggered paths; proxy for g-bar.
    std::optional<double> mean_growth_after_tau;
};

/// Payouts enter in debt-ratio units; the notional is applied only to PVs.
TheoremReport theorem_report(const EnsembleResult& results, const TriggerSpec& spec);

}  // namespace tsdcm
