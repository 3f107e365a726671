#include "tsdcm/cli.hpp"

#include <algorithm>
#include <array>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "tsdcm/errors.hpp"

namespace tsdcm {

namespace {

constexpr std::array<double, 4> kVerifyHorizons{5.0, 10.0, 20.0, 50.0};

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> paths;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_out) {
    cmd->add_option("--config", a.config_path, "JSON run configuration (defaults when omitted)");
    if (with_out) cmd->add_option("--out", a.out_dir, "output directory (overrides output_dir)");
    cmd->add_option("--seed", a.seed, "master seed");
    cmd->add_option("--paths", a.paths, "number of Monte Carlo paths")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", a.threads, "worker threads; never changes results")->check(CLI::PositiveNumber);
}

RunConfig resolve_config(const CommonArgs& a) {
    RunConfig cfg = a.config_path.empty() ? default_run_config() : load_config(a.config_path);
    if (a.seed) cfg.plan.seed = *a.seed;
    if (a.paths) cfg.plan.n_paths = *a.paths;
    if (!a.out_dir.empty()) cfg.output_dir = a.out_dir;
    validate(cfg);
    return cfg;
}

}  // namespace

RunOutputs run_simulate(const RunConfig& cfg, const EnsembleOptions& options) {
    RunOutputs o;
    o.config = cfg;
    const EnsembleResult results = run_ensemble(cfg.model, cfg.trigger, cfg.plan, options);
    o.summary = summarize(results);
    o.theorem = theorem_report(results, cfg.trigger);
    o.main_horizon = horizon_diagnostics(results, cfg.trigger);
    o.sweep = sweep_alpha(cfg.model, cfg.trigger, cfg.plan, cfg.sweep_alphas, options);
    return o;
}

RunOutputs run_sweep(const RunConfig& cfg, const EnsembleOptions& options) {
    RunOutputs o;
    o.config = cfg;
    o.sweep = sweep_alpha(cfg.model, cfg.trigger, cfg.plan, cfg.sweep_alphas, options);
    return o;
}

RunOutputs run_verify(const RunConfig& cfg, const EnsembleOptions& options) {
    RunOutputs o;
    o.config = cfg;
    std::vector<SimulationPlan> plans;
    for (double h : kVerifyHorizons) {
        SimulationPlan p = cfg.plan;
        p.horizon = h;
        plans.push_back(p);
    }
    o.propositions = proposition_diagnostics(cfg.model, cfg.trigger, plans, options);
    const EnsembleResult results = run_ensemble(cfg.model, cfg.trigger, cfg.plan, options);
    o.theorem = theorem_report(results, cfg.trigger);
    o.main_horizon = horizon_diagnostics(results, cfg.trigger);
    return o;
}

bool verify_passed(const RunOutputs& o) {
    if (o.propositions && !o.propositions->passed()) return false;
    if (o.main_horizon && o.main_horizon->dominance_violations != 0) return false;
    return true;
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo engine for trigger-based sovereign debt conversion", "tsdcm"};
    app.require_subcommand(1);

    CommonArgs sim_args, sweep_args, verify_args;
    auto* simulate = app.add_subcommand("simulate", "run the paired ensemble and write CSV/JSON outputs");
    add_common(simulate, sim_args, true);

    auto* sweep = app.add_subcommand("sweep", "run the conversion-fraction sensitivity sweep");
    add_common(sweep, sweep_args, true);
    std::vector<double> alphas;
    sweep->add_option("--alphas", alphas, "comma-separated conversion fractions")->delimiter(',')->required();

    auto* verify = app.add_subcommand("verify", "check activation and dominance invariants");
    add_common(verify, verify_args, true);

    auto* config = app.add_subcommand("config", "print the resolved configuration");
    std::string show_path;
    bool show = false;
    config->add_flag("--show", show, "print the configuration as JSON");
    config->add_option("--config", show_path, "configuration to resolve instead of the defaults");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfigError;
    }

    try {
        if (*config) {
            RunConfig cfg;
            try {
                cfg = show_path.empty() ? default_run_config() : load_config(show_path);
            } catch (const std::exception& e) {
                err << "config error: " << e.what() << "\n";
                return kExitConfigError;
            }
            out << to_json(cfg).dump(2) << "\n";
            return kExitOk;
        }

        CommonArgs& a = *simulate ? sim_args : *sweep ? sweep_args : verify_args;
        RunConfig cfg;
        try {
            cfg = resolve_config(a);
            if (*sweep) {
                cfg.sweep_alphas = alphas;
                validate(cfg);
            }
        } catch (const std::exception& e) {
            err << "config error: " << e.what() << "\n";
            return kExitConfigError;
        }
        const EnsembleOptions options{a.threads};

        if (*simulate) {
            const auto files = write_outputs(run_simulate(cfg, options), cfg.output_dir);
            for (const auto& f : files) out << f.string() << "\n";
            return kExitOk;
        }
        if (*sweep) {
            const auto files = write_outputs(run_sweep(cfg, options), cfg.output_dir);
            for (const auto& f : files) out << f.string() << "\n";
            return kExitOk;
        }
        const RunOutputs o = run_verify(cfg, options);
        const auto files = write_outputs(o, cfg.output_dir, "verify_report.json");
        const bool ok = verify_passed(o);
        const PropositionReport& p = *o.propositions;
        out << "dominance violations: " << p.dominance_violations << "\n";
        out << "activation monotone: " << (p.activation_monotone ? "yes" : "no")
            << (p.activation_assertion_run ? "" : " (not asserted: drift conditions fail)") << "\n";
        out << "report: " << files.back().string() << "\n";
        out << (ok ? "verify: PASS" : "verify: FAIL") << "\n";
        return ok ? kExitOk : kExitVerifyFailed;
    } catch (const ValidationError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

}  // namespace tsdcm
