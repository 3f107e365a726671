// Acceptance suite. Each criterion prints one PASS/FAIL line with its measured
// values and wall time; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <iostream>
#include <thread>
#include <vector>

#include "../oracles.hpp"
#include "tsdcm/analytics.hpp"
#include "tsdcm/cli.hpp"
#include "tsdcm/config.hpp"

using namespace tsdcm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

RunConfig noiseless_frozen() {
    RunConfig cfg = default_run_config();
    for (RegimeParams& p : cfg.model.params_by_regime) {
        p.sigma = p.kappa = 0.0;
        p.eta = p.xi = 0.0;
    }
    cfg.model.q = {0.0, 0.0};
    cfg.plan.n_paths = 1;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("tsdcm_acceptance_" + name);
    fs::remove_all(p);
    return p;
}

Outcome hitting_time_oracle() {
    const RunConfig cfg = noiseless_frozen();
    const PathRecord path = simulate_path(cfg.model, cfg.plan.horizon, cfg.plan.dt, PathNoise(cfg.plan.seed, 0));
    TriggerSpec spec = cfg.trigger;
    spec.d_star = 0.8;
    const HittingTimes ht = detect_hitting_times(path, spec);
    if (!ht.tau_d) return {false, "debt threshold never reached"};
    const double analytic = 10.0 * std::log(5.0 / 3.0);
    const double tol = 2 * cfg.plan.dt;
    return {std::abs(*ht.tau_d - 5.1083) <= tol,
            fmt("tau_D = %.4f, analytic %.4f, window 5.1083 +/- %.2f", *ht.tau_d, analytic, tol)};
}

Outcome matrix_exponential_oracle() {
    const std::vector<double> rates{0.0, 0.08, 0.5, 3.0, 40.0};
    const std::vector<double> steps{0.001, 0.01, 1.0, 10.0};
    double worst = 0.0;
    int triples = 0;
    for (double l01 : rates)
        for (double l10 : rates)
            for (double dt : steps) {
                const TransitionMatrix p = transition_matrix({l01, l10}, dt);
                const auto o = oracle::expm_taylor(l01, l10, dt);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(p[i][j] - o[i][j]));
                ++triples;
            }
    return {triples == 100 && worst <= 1e-12, fmt("%d triples, max abs deviation %.3e (limit 1e-12)", triples, worst)};
}

Outcome euler_convergence() {
    const RunConfig cfg = noiseless_frozen();
    const RegimeParams& p = cfg.model.params(Regime::expansion);
    auto max_error = [&](double dt) {
        const PathRecord path = simulate_path(cfg.model, 10.0, dt, PathNoise(cfg.plan.seed, 0));
        double worst = 0.0;
        for (std::size_t k = 0; k < path.times.size(); ++k)
            worst = std::max(worst, std::abs(path.debt[k] - oracle::linear_ode(p.a, p.b, cfg.model.d0, path.times[k])));
        return worst;
    };
    const double coarse = max_error(0.02), fine = max_error(0.01);
    const double ratio = coarse / fine;
    return {ratio >= 1.7 && ratio <= 2.3,
            fmt("max error %.3e (dt=0.02) -> %.3e (dt=0.01), ratio %.3f in [1.7, 2.3]", coarse, fine, ratio)};
}

Outcome pathwise_dominance() {
    RunConfig cfg = default_run_config();
    cfg.plan.n_paths = 1000;
    const EnsembleResult r = run_ensemble(cfg.model, cfg.trigger, cfg.plan, {worker_count()});
    std::uint64_t violations = 0;
    for (const PathSummary& p : r.paths) violations += p.dominance_violations;
    return {violations == 0 && r.trigger_count > 0,
            fmt("%llu violations over %llu triggered paths (seed %llu)", (unsigned long long)violations,
                (unsigned long long)r.trigger_count, (unsigned long long)cfg.plan.seed)};
}

std::vector<SimulationPlan> nested_plans(const SimulationPlan& base) {
    std::vector<SimulationPlan> plans;
    for (double h : {5.0, 10.0, 20.0, 50.0}) {
        SimulationPlan p = base;
        p.horizon = h;
        plans.push_back(p);
    }
    return plans;
}

Outcome activation_monotonicity() {
    RunConfig frozen = default_run_config();
    frozen.model.q = {0.0, 0.0};
    frozen.plan.n_paths = 1000;
    const auto plans = nested_plans(frozen.plan);
    const PropositionReport r = proposition_diagnostics(frozen.model, frozen.trigger, plans, {worker_count()});

    RunConfig calibrated = default_run_config();
    calibrated.plan.n_paths = 1000;
    const PropositionReport c =
        proposition_diagnostics(calibrated.model, calibrated.trigger, nested_plans(calibrated.plan), {worker_count()});

    std::string detail = "frozen P(tau<=T):";
    for (const auto& h : r.horizons) detail += fmt(" %.4f", h.activation.mean);
    detail += "; calibrated:";
    for (const auto& h : c.horizons) detail += fmt(" %.4f", h.activation.mean);
    const double at50 = r.horizons.back().activation.mean;
    const bool ok = r.activation_assertion_run && r.activation_monotone && c.activation_monotone && at50 >= 0.99;
    return {ok, detail + fmt("; frozen T=50 %.4f >= 0.99", at50)};
}

Outcome alpha_monotonicity() {
    const RunConfig cfg = default_run_config();
    const std::vector<double> alphas{0.1, 0.2, 0.3, 0.4};
    const SensitivityResult s = sweep_alpha(cfg.model, cfg.trigger, cfg.plan, alphas, {worker_count()});
    bool strictly = true;
    for (std::size_t j = 1; j < s.mean_final_debt.size(); ++j)
        strictly = strictly && s.mean_final_debt[j] < s.mean_final_debt[j - 1];
    return {strictly && s.pathwise_violations == 0,
            fmt("mean final debt %.5f %.5f %.5f %.5f; pathwise violations %llu", s.mean_final_debt[0],
                s.mean_final_debt[1], s.mean_final_debt[2], s.mean_final_debt[3],
                (unsigned long long)s.pathwise_violations)};
}

const fs::path kRunOne = scratch("threads1");
const fs::path kRunEight = scratch("threads8");

Outcome cli_determinism() {
    std::ostringstream sink;
    const int a = cli_dispatch({"simulate", "--out", kRunOne.string(), "--threads", "1"}, sink, std::cerr);
    const int b = cli_dispatch({"simulate", "--out", kRunEight.string(), "--threads", "8"}, sink, std::cerr);
    if (a != 0 || b != 0) return {false, fmt("exit codes %d, %d", a, b)};
    int identical = 0;
    const char* files[] = {"mean_paths.csv", "summary.csv", "sweep.csv", "report.json"};
    for (const char* f : files) identical += slurp(kRunOne / f) == slurp(kRunEight / f) && fs::exists(kRunOne / f);
    return {identical == 4, fmt("%d/4 files byte-identical", identical)};
}

Outcome directional_reproduction() {
    const RunConfig cfg = default_run_config();
    const EnsembleSummary s = summarize(run_ensemble(cfg.model, cfg.trigger, cfg.plan, {worker_count()}));
    const bool debt = s.final_converted.mean < s.final_baseline.mean && s.final_debt_reduction.ci_low() > 0.0;
    const bool defaults = s.default_converted.mean < s.default_baseline.mean && s.default_reduction.ci_low() > 0.0;

    bool annotated = false;
    if (fs::exists(kRunOne / "report.json")) {
        const auto report = nlohmann::json::parse(slurp(kRunOne / "report.json"));
        annotated = report["reference"]["relative_final_debt_reduction"] == 0.223 &&
                    report["reference"]["default_probability"]["tsdcm"] == 0.118;
    }
    return {debt && defaults && annotated,
            fmt("final debt %.4f -> %.4f (paired CI [%.4f, %.4f]); default %.4f -> %.4f (paired CI [%.4f, %.4f]); "
                "reference annotations %s",
                s.final_baseline.mean, s.final_converted.mean, s.final_debt_reduction.ci_low(),
                s.final_debt_reduction.ci_high(), s.default_baseline.mean, s.default_converted.mean,
                s.default_reduction.ci_low(), s.default_reduction.ci_high(), annotated ? "present" : "missing")};
}

Outcome theorem_report_check() {
    RunConfig cfg = default_run_config();
    cfg.trigger.beta = cfg.trigger.gamma = 0.0;
    const EnsembleResult r = run_ensemble(cfg.model, cfg.trigger, cfg.plan, {worker_count()});
    const TheoremReport t = theorem_report(r, cfg.trigger);
    const double p = static_cast<double>(r.trigger_count) / static_cast<double>(r.paths.size());
    const double expected_rhs = cfg.trigger.alpha * cfg.trigger.d_star * p;
    const bool zero_case = t.lhs.mean >= 0.0 && std::abs(t.rhs.mean - expected_rhs) <= 1e-12 * std::max(1.0, expected_rhs);

    bool reported = false;
    if (fs::exists(kRunOne / "report.json")) {
        const auto th = nlohmann::json::parse(slurp(kRunOne / "report.json"))["theorem"];
        reported = th["lhs"].contains("mean") && th["lhs"].contains("ci95") && th["rhs"].contains("mean") &&
                   th["rhs"].contains("ci95") && th["sufficient_condition"].is_boolean();
    }
    return {zero_case && reported,
            fmt("beta=gamma=0: lhs %.6f >= 0, rhs %.6f vs alpha*D*P %.6f; default-coefficient report %s", t.lhs.mean,
                t.rhs.mean, expected_rhs, reported ? "complete" : "missing")};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "deterministic hitting time", 1.0, hitting_time_oracle},
        {2, "matrix exponential oracle", 1.0, matrix_exponential_oracle},
        {3, "Euler first-order convergence", 5.0, euler_convergence},
        {4, "pathwise dominance after conversion", 10.0, pathwise_dominance},
        {5, "activation monotone in horizon", 30.0, activation_monotonicity},
        {6, "final debt monotone in alpha", 60.0, alpha_monotonicity},
        {7, "thread-count independent outputs", 60.0, cli_determinism},
        {8, "directional reduction of debt and defaults", 60.0, directional_reproduction},
        {9, "net fiscal benefit report", 60.0, theorem_report_check},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = elapsed < c.time_limit_s;
        const bool ok = o.passed && in_time;
        failures += !ok;
        std::printf("[%s] %d. %s: %s; %.2fs (limit %.0fs)\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    elapsed, c.time_limit_s);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
