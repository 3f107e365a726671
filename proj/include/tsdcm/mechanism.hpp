#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "tsdcm/model.hpp"

namespace tsdcm {

/// Trigger thresholds, conversion terms and token payout coefficients.
struct TriggerSpec {
    double d_star = 0.80;        ///< debt threshold, fraction of GDP
    double g_star = 0.03;        ///< growth threshold, fraction/year
    double alpha = 0.3;          ///< share of debt retired at activation, in (0, 1)
    double beta = 1.0;           ///< overshoot payout coefficient
    double gamma = 1.0;          ///< growth bonus coefficient
    double horizon = 10.0;       ///< token maturity T, years
    double discount_rate = 0.03; ///< continuous annual rate
    double notional = 100.0;     ///< currency units per unit of debt ratio

    bool operator==(const TriggerSpec&) const = default;
};

void validate(const TriggerSpec& spec, const std::string& prefix = "trigger");

/// First hitting times on the grid. Indices are grid positions; times are
/// index * dt.
struct HittingTimes {
    std::optional<std::size_t> index_d;
    std::optional<std::size_t> index_g;
    std::optional<std::size_t> index;  ///< max(index_d, index_g) when both exist
    std::optional<double> tau_d;
    std::optional<double> tau_g;
    std::optional<double> tau;
    bool triggered = false;  ///< both hit and tau <= horizon

    bool operator==(const HittingTimes&) const = default;
};

struct TokenPayout {
    double pi1 = 0.0;    ///< beta * max(D_tau - D*, 0)
    double pi2 = 0.0;    ///< gamma * integral of (g - g*)^+ over [tau, T)
    double total = 0.0;
    double pv = 0.0;     ///< total * notional * exp(-discount_rate * T)

    bool operator==(const TokenPayout&) const = default;
};

/// Grid index of the token maturity, round(spec.horizon / dt).
std::size_t maturity_index(const TriggerSpec& spec, double dt);

/// Inclusive comparisons, scanning from t_0. The path must cover the horizon.
HittingTimes detect_hitting_times(const PathRecord& path, const TriggerSpec& spec);

double apply_conversion(double d_pre, double alpha);

TokenPayout compute_payout(const PathRecord& converted_path, const HittingTimes& ht, const TriggerSpec& spec);

/// Continuous compounding.
double discount(double value, double rate, double time);

}  // namespace tsdcm
