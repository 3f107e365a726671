#include "tsdcm/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsdcm/errors.hpp"

namespace tsdcm {

void validate(const TriggerSpec& spec, const std::string& prefix) {
    auto finite = [&](double v, const char* name) {
        if (!std::isfinite(v)) throw ValidationError(prefix + "." + name, "must be finite");
    };
    finite(spec.d_star, "d_star");
    finite(spec.g_star, "g_star");
    finite(spec.alpha, "alpha");
    finite(spec.beta, "beta");
    finite(spec.gamma, "gamma");
    finite(spec.horizon, "horizon");
    finite(spec.discount_rate, "discount_rate");
    finite(spec.notional, "notional");
    if (!(spec.d_star > 0.0)) throw ValidationError(prefix + ".d_star", "must be > 0");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw ValidationError(prefix + ".alpha", "must lie in (0, 1)");
    if (!(spec.beta >= 0.0)) throw ValidationError(prefix + ".beta", "must be >= 0");
    if (!(spec.gamma >= 0.0)) throw ValidationError(prefix + ".gamma", "must be >= 0");
    if (!(spec.horizon > 0.0)) throw ValidationError(prefix + ".horizon", "must be > 0");
    if (!(spec.discount_rate >= 0.0)) throw ValidationError(prefix + ".discount_rate", "must be >= 0");
    if (!(spec.notional >= 0.0)) throw ValidationError(prefix + ".notional", "must be >= 0");
}

std::size_t maturity_index(const TriggerSpec& spec, double dt) {
    return grid_steps(spec.horizon, dt);
}

HittingTimes detect_hitting_times(const PathRecord& path, const TriggerSpec& spec) {
    const std::size_t maturity = maturity_index(spec, path.dt);
    if (maturity >= path.times.size())
        throw std::invalid_argument("detect_hitting_times: path grid does not cover the token maturity");

    HittingTimes ht;
    for (std::size_t k = 0; k < path.debt.size(); ++k) {
        if (!ht.index_d && path.debt[k] <= spec.d_star) ht.index_d = k;
        if (!ht.index_g && path.growth[k] >= spec.g_star) ht.index_g = k;
        if (ht.index_d && ht.index_g) break;
    }
    if (ht.index_d) ht.tau_d = path.times[*ht.index_d];
    if (ht.index_g) ht.tau_g = path.times[*ht.index_g];
    if (ht.index_d && ht.index_g) {
        ht.index = std::max(*ht.index_d, *ht.index_g);
        ht.tau = path.times[*ht.index];
        ht.triggered = *ht.index <= maturity;
    }
    return ht;
}

double apply_conversion(double d_pre, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("apply_conversion: alpha must lie in (0, 1)");
    if (!(d_pre > 0.0)) throw std::invalid_argument("apply_conversion: debt must be > 0");
    return (1.0 - alpha) * d_pre;
}

TokenPayout compute_payout(const PathRecord& converted_path, const HittingTimes& ht, const TriggerSpec& spec) {
    if (!ht.triggered || !ht.index) throw std::invalid_argument("compute_payout: path was not triggered");
    const std::size_t maturity = maturity_index(spec, converted_path.dt);
    if (maturity >= converted_path.times.size())
        throw std::invalid_argument("compute_payout: path grid does not cover the token maturity");

    const std::size_t start = *ht.index;
    TokenPayout payout;
    payout.pi1 = spec.beta * std::max(converted_path.debt[start] - spec.d_star, 0.0);
    double integral = 0.0;
    for (std::size_t k = start; k < maturity; ++k)
        integral += std::max(converted_path.growth[k] - spec.g_star, 0.0) * converted_path.dt;
    payout.pi2 = spec.gamma * integral;
    payout.total = payout.pi1 + payout.pi2;
    payout.pv = discount(payout.total * spec.notional, spec.discount_rate, spec.horizon);
    return payout;
}

double discount(double value, double rate, double time) {
    return value * std::exp(-rate * time);
}

}  // namespace tsdcm
