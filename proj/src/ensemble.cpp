#include "tsdcm/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tsdcm/errors.hpp"

namespace tsdcm {

namespace {

constexpr std::size_t kChunkPerThread = 64;

bool crosses_barrier(const std::vector<double>& debt) {
    return std::any_of(debt.begin(), debt.end(), [](double d) { return d >= kDefaultBarrier; });
}

void check_inputs(const ModelConfig& cfg, const TriggerSpec& spec, const SimulationPlan& plan) {
    validate(cfg);
    validate(spec);
    validate(plan);
    if (maturity_index(spec, plan.dt) > grid_steps(plan.horizon, plan.dt))
        throw ValidationError("trigger.horizon", "token maturity exceeds the simulation horizon");
}

}  // namespace

void validate(const SimulationPlan& plan, const std::string& prefix) {
    if (plan.n_paths < 1) throw ValidationError(prefix + ".n_paths", "must be >= 1");
    if (!(plan.horizon > 0.0) || !std::isfinite(plan.horizon))
        throw ValidationError(prefix + ".horizon", "must be finite and > 0");
    if (!(plan.dt > 0.0) || !std::isfinite(plan.dt)) throw ValidationError(prefix + ".dt", "must be finite and > 0");
    try {
        grid_steps(plan.horizon, plan.dt);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(prefix + ".dt", e.what());
    }
}

PairedPathResult run_paired_path(const ModelConfig& cfg, const TriggerSpec& spec, const SimulationPlan& plan,
                                 std::uint64_t path_index) {
    if (path_index >= plan.n_paths) throw std::out_of_range("run_paired_path: path index outside the plan");
    const PathNoise noise(plan.seed, path_index);

    PairedPathResult result;
    result.baseline = simulate_path(cfg, plan.horizon, plan.dt, noise);
    result.hitting = detect_hitting_times(result.baseline, spec);
    if (result.hitting.triggered) {
        const std::size_t at = *result.hitting.index;
        const double converted_debt = apply_conversion(result.baseline.debt[at], spec.alpha);
        result.converted = simulate_branch(cfg, result.baseline, at, converted_debt, noise);
        result.payout = compute_payout(result.converted, result.hitting, spec);
    } else {
        result.converted = result.baseline;
    }
    result.default_baseline = crosses_barrier(result.baseline.debt);
    result.default_converted = crosses_barrier(result.converted.debt);
    return result;
}

PathSummary summarize_path(const PairedPathResult& r, const TriggerSpec& spec) {
    PathSummary s;
    s.triggered = r.hitting.triggered;
    s.tau = r.hitting.tau;
    s.tau_d = r.hitting.tau_d;
    s.tau_g = r.hitting.tau_g;
    s.final_debt_baseline = r.baseline.debt.back();
    s.final_debt_converted = r.converted.debt.back();
    const std::size_t maturity = maturity_index(spec, r.baseline.dt);
    s.maturity_debt_baseline = r.baseline.debt[maturity];
    s.maturity_debt_converted = r.converted.debt[maturity];
    s.default_baseline = r.default_baseline;
    s.default_converted = r.default_converted;
    if (s.triggered) {
        const std::size_t at = *r.hitting.index;
        s.payout = *r.payout;
        s.overshoot = std::max(r.converted.debt[at] - spec.d_star, 0.0);
        double growth_sum = 0.0;
        for (std::size_t k = at; k < maturity; ++k) {
            s.growth_integral += std::max(r.converted.growth[k] - spec.g_star, 0.0) * r.converted.dt;
            growth_sum += r.converted.growth[k];
        }
        if (maturity > at) s.mean_growth_after_tau = growth_sum / static_cast<double>(maturity - at);
        for (std::size_t k = at; k < r.converted.debt.size(); ++k)
            if (r.converted.debt[k] > r.baseline.debt[k] + kDominanceTolerance) ++s.dominance_violations;
    }
    return s;
}

EnsembleResult run_ensemble(const ModelConfig& cfg, const TriggerSpec& spec, const SimulationPlan& plan,
                            const EnsembleOptions& options) {
    check_inputs(cfg, spec, plan);
    const std::size_t m = grid_steps(plan.horizon, plan.dt);
    const unsigned threads = std::max(1u, options.threads);

    EnsembleResult out;
    out.plan = plan;
    out.times.resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) out.times[k] = static_cast<double>(k) * plan.dt;
    out.mean_debt_baseline.assign(m + 1, 0.0);
    out.mean_debt_converted.assign(m + 1, 0.0);
    out.paths.reserve(plan.n_paths);

    const std::uint64_t chunk = static_cast<std::uint64_t>(threads) * kChunkPerThread;
    std::vector<PairedPathResult> buffer;
    for (std::uint64_t begin = 0; begin < plan.n_paths; begin += chunk) {
        const std::uint64_t count = std::min(chunk, plan.n_paths - begin);
        buffer.assign(count, PairedPathResult{});

        std::atomic<std::uint64_t> next{0};
        std::mutex failure_mutex;
        std::optional<std::uint64_t> failed_index;
        std::string failure_message;
        auto work = [&] {
            for (std::uint64_t i = next++; i < count; i = next++) {
                try {
                    buffer[i] = run_paired_path(cfg, spec, plan, begin + i);
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    if (!failed_index || begin + i < *failed_index) {
                        failed_index = begin + i;
                        failure_message = e.what();
                    }
                }
            }
        };
        if (threads == 1 || count == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
            for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
        }
        if (failed_index) throw PathFailure(*failed_index, failure_message);

        // Ordered reduction keeps the sums independent of the thread count.
        for (const PairedPathResult& r : buffer) {
            for (std::size_t k = 0; k <= m; ++k) {
                out.mean_debt_baseline[k] += r.baseline.debt[k];
                out.mean_debt_converted[k] += r.converted.debt[k];
            }
            out.paths.push_back(summarize_path(r, spec));
            if (r.hitting.triggered) ++out.trigger_count;
        }
    }
    const double n = static_cast<double>(plan.n_paths);
    for (std::size_t k = 0; k <= m; ++k) {
        out.mean_debt_baseline[k] /= n;
        out.mean_debt_converted[k] /= n;
    }
    return out;
}

}  // namespace tsdcm
