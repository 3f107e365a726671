#include "tsdcm/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsdcm/errors.hpp"

namespace tsdcm {

namespace {

void require_nonempty(const EnsembleResult& results, const char* what) {
    if (results.paths.empty()) throw std::invalid_argument(std::string(what) + ": empty ensemble");
}

template <class F>
std::vector<double> collect(const EnsembleResult& results, F&& field) {
    std::vector<double> out;
    out.reserve(results.paths.size());
    for (const PathSummary& p : results.paths) out.push_back(field(p));
    return out;
}

double sum(std::span<const double> values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

}  // namespace

double percentile(std::span<const double> values, double q) {
    if (values.empty()) throw std::invalid_argument("percentile: empty sample");
    if (!(q >= 0.0 && q <= 100.0)) throw std::invalid_argument("percentile: q must lie in [0, 100]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const double rank = std::ceil(q * n / 100.0);
    const std::size_t index = rank < 1.0 ? 0 : std::min(sorted.size(), static_cast<std::size_t>(rank)) - 1;
    return sorted[index];
}

Estimate estimate_mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("estimate_mean: empty sample");
    const double n = static_cast<double>(values.size());
    Estimate e;
    e.mean = sum(values) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.se = std::sqrt(ss / (n - 1.0) / n);
    }
    return e;
}

MeanStd mean_std(std::span<const double> values) {
    const Estimate e = estimate_mean(values);
    return {e.mean, e.se * std::sqrt(static_cast<double>(values.size()))};
}

DistributionSummary distribution(std::span<const double> values) {
    DistributionSummary s;
    s.p10 = percentile(values, 10.0);
    s.p50 = percentile(values, 50.0);
    s.p90 = percentile(values, 90.0);
    s.mean = sum(values) / static_cast<double>(values.size());
    s.count = values.size();
    return s;
}

Estimate default_probability(const EnsembleResult& results, Branch branch) {
    require_nonempty(results, "default_probability");
    std::uint64_t hits = 0;
    for (const PathSummary& p : results.paths)
        hits += branch == Branch::baseline ? p.default_baseline : p.default_converted;
    const double n = static_cast<double>(results.paths.size());
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

EnsembleSummary summarize(const EnsembleResult& results) {
    require_nonempty(results, "summarize");
    EnsembleSummary s;
    s.times = results.times;
    s.mean_debt_baseline = results.mean_debt_baseline;
    s.mean_debt_converted = results.mean_debt_converted;
    s.n_paths = results.paths.size();
    s.trigger_count = results.trigger_count;

    const auto final_b = collect(results, [](const PathSummary& p) { return p.final_debt_baseline; });
    const auto final_c = collect(results, [](const PathSummary& p) { return p.final_debt_converted; });
    s.final_baseline = distribution(final_b);
    s.final_converted = distribution(final_c);
    s.default_baseline = default_probability(results, Branch::baseline);
    s.default_converted = default_probability(results, Branch::converted);

    s.final_debt_reduction = estimate_mean(collect(
        results, [](const PathSummary& p) { return p.final_debt_baseline - p.final_debt_converted; }));
    s.default_reduction = estimate_mean(collect(results, [](const PathSummary& p) {
        return static_cast<double>(p.default_baseline) - static_cast<double>(p.default_converted);
    }));
    s.relative_reduction = (s.final_baseline.mean - s.final_converted.mean) / s.final_baseline.mean;
    s.activation = estimate_mean(collect(results, [](const PathSummary& p) { return p.triggered ? 1.0 : 0.0; }));

    // PV of each component shares the discount factor of the total.
    auto pv_factor = [](const PathSummary& p) { return p.payout.total > 0.0 ? p.payout.pv / p.payout.total : 0.0; };
    s.payout.overshoot = mean_std(collect(results, [](const PathSummary& p) { return p.payout.pi1; }));
    s.payout.growth = mean_std(collect(results, [](const PathSummary& p) { return p.payout.pi2; }));
    s.payout.total = mean_std(collect(results, [](const PathSummary& p) { return p.payout.total; }));
    s.payout.pv_overshoot = mean_std(collect(results, [&](const PathSummary& p) { return p.payout.pi1 * pv_factor(p); }));
    s.payout.pv_growth = mean_std(collect(results, [&](const PathSummary& p) { return p.payout.pi2 * pv_factor(p); }));
    s.payout.pv_total = mean_std(collect(results, [](const PathSummary& p) { return p.payout.pv; }));
    return s;
}

SensitivityResult sweep_alpha(const ModelConfig& cfg, const TriggerSpec& spec, const SimulationPlan& plan,
                              std::span<const double> alphas, const EnsembleOptions& options) {
    if (alphas.empty()) throw ValidationError("sweep.alphas", "must not be empty");
    for (std::size_t j = 0; j < alphas.size(); ++j)
        if (!(alphas[j] > 0.0 && alphas[j] < 1.0))
            throw ValidationError("sweep.alphas[" + std::to_string(j) + "]", "must lie in (0, 1)");

    SensitivityResult out;
    std::vector<double> previous;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        TriggerSpec s = spec;
        s.alpha = alphas[j];
        const EnsembleResult run = run_ensemble(cfg, s, plan, options);
        const auto finals = collect(run, [](const PathSummary& p) { return p.final_debt_converted; });
        const auto payouts = collect(run, [](const PathSummary& p) { return p.payout.total; });
        const MeanStd payout = mean_std(payouts);

        out.alphas.push_back(alphas[j]);
        out.mean_final_debt.push_back(sum(finals) / static_cast<double>(finals.size()));
        out.payout_mean.push_back(payout.mean);
        out.payout_std.push_back(payout.std);
        if (j > 0 && alphas[j] > alphas[j - 1]) {
            for (std::size_t i = 0; i < finals.size(); ++i)
                if (finals[i] > previous[i] + kDominanceTolerance) ++out.pathwise_violations;
        }
        previous = finals;
    }
    return out;
}

DriftConditions drift_conditions(const ModelConfig& cfg, const TriggerSpec& spec) {
    const RegimeParams& p = cfg.params(Regime::expansion);
    DriftConditions c;
    c.debt_drift_at_threshold = p.a - p.b * spec.d_star;
    c.growth_drift_at_threshold = p.c - p.d * spec.g_star;
    c.literal_condition = c.debt_drift_at_threshold > 0.0 && c.growth_drift_at_threshold > 0.0;
    c.pulls_toward_thresholds = c.debt_drift_at_threshold < 0.0 && c.growth_drift_at_threshold > 0.0;
    return c;
}

PropositionReport proposition_diagnostics(const ModelConfig& cfg, const TriggerSpec& spec,
                                          std::span<const SimulationPlan> plans, const EnsembleOptions& options) {
    if (plans.empty()) throw std::invalid_argument("proposition_diagnostics: no horizons given");
    for (std::size_t i = 1; i < plans.size(); ++i)
        if (!(plans[i].horizon > plans[i - 1].horizon))
            throw std::invalid_argument("proposition_diagnostics: horizons must be strictly increasing");

    PropositionReport report;
    report.drift = drift_conditions(cfg, spec);
    for (const SimulationPlan& plan : plans) {
        TriggerSpec s = spec;
        s.horizon = plan.horizon;
        const EnsembleResult run = run_ensemble(cfg, s, plan, options);

        HorizonDiagnostics h;
        h.horizon = plan.horizon;
        h.activation = estimate_mean(collect(run, [](const PathSummary& p) { return p.triggered ? 1.0 : 0.0; }));
        const double credit = s.alpha * s.d_star;
        h.expected_reduction_gap = estimate_mean(collect(run, [&](const PathSummary& p) {
            return p.maturity_debt_baseline - p.maturity_debt_converted - (p.triggered ? credit : 0.0);
        }));
        for (const PathSummary& p : run.paths) h.dominance_violations += p.dominance_violations;
        report.dominance_violations += h.dominance_violations;
        report.horizons.push_back(h);
    }

    report.activation_monotone = true;
    for (std::size_t i = 1; i < report.horizons.size(); ++i)
        if (report.horizons[i].activation.mean < report.horizons[i - 1].activation.mean)
            report.activation_monotone = false;
    report.activation_assertion_run = report.drift.pulls_toward_thresholds;
    report.activation_assertion_passed = report.activation_assertion_run && report.activation_monotone;
    report.dominance_passed = report.dominance_violations == 0;
    return report;
}

TheoremReport theorem_report(const EnsembleResult& results, const TriggerSpec& spec) {
    require_nonempty(results, "theorem_report");
    TheoremReport t;
    const double credit = spec.alpha * spec.d_star;
    t.lhs = estimate_mean(collect(results, [](const PathSummary& p) {
        return p.maturity_debt_baseline - p.maturity_debt_converted - p.payout.total;
    }));
    t.rhs = estimate_mean(collect(results, [&](const PathSummary& p) {
        return (p.triggered ? credit : 0.0) - spec.beta * p.overshoot - spec.gamma * p.growth_integral;
    }));
    t.activation_probability =
        static_cast<double>(results.trigger_count) / static_cast<double>(results.paths.size());

    double tau_sum = 0.0;
    double growth_sum = 0.0;
    std::uint64_t triggered = 0;
    for (const PathSummary& p : results.paths) {
        if (!p.triggered) continue;
        tau_sum += *p.tau;
        growth_sum += p.mean_growth_after_tau;
        ++triggered;
    }
    if (triggered > 0) {
        t.mean_tau = tau_sum / static_cast<double>(triggered);
        t.mean_growth_after_tau = growth_sum / static_cast<double>(triggered);
    }
    // Without any activation the growth term has zero length.
    const double remaining = t.mean_tau ? spec.horizon - *t.mean_tau : 0.0;
    t.sufficient_condition = credit > spec.beta * spec.d_star + spec.gamma * remaining * spec.g_star;
    t.lhs_minus_rhs = t.lhs.mean - t.rhs.mean;
    return t;
}

}  // namespace tsdcm
