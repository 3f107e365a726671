#include "tsdcm/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "tsdcm/errors.hpp"

namespace tsdcm {

using nlohmann::json;

namespace {

json estimate_json(const Estimate& e) {
    return {{"mean", e.mean}, {"se", e.se}, {"ci95", {e.ci_low(), e.ci_high()}}};
}

json mean_std_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.std}}; }

json distribution_json(const DistributionSummary& d) {
    return {{"p10", d.p10}, {"p50", d.p50}, {"p90", d.p90}, {"mean", d.mean}, {"count", d.count}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json horizon_json(const HorizonDiagnostics& h) {
    return {{"horizon", h.horizon},
            {"activation_probability", estimate_json(h.activation)},
            {"expected_reduction_gap", estimate_json(h.expected_reduction_gap)},
            {"expected_reduction_gap_nonnegative", h.expected_reduction_gap.mean >= 0.0},
            {"dominance_violations", h.dominance_violations}};
}

// Reference values published with the model; the growth calibration behind
// them is not available, so they are not reproduced exactly.
json reference_annotations() {
    return {{"relative_final_debt_reduction", 0.223},
            {"final_debt_baseline", {{"p10", 0.887}, {"p50", 1.051}, {"p90", 1.265}}},
            {"final_debt_tsdcm", {{"p10", 0.642}, {"p50", 0.819}, {"p90", 0.976}}},
            {"default_probability", {{"baseline", 0.324}, {"tsdcm", 0.118}}},
            {"token_pv_millions",
             {{"overshoot", {{"mean", 1.82}, {"std", 0.56}}},
              {"growth", {{"mean", 3.41}, {"std", 1.12}}},
              {"total", {{"mean", 5.23}, {"std", 1.32}}}}},
            {"note", "published reference figures; informational only, not asserted"}};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

HorizonDiagnostics horizon_diagnostics(const EnsembleResult& results, const TriggerSpec& spec) {
    HorizonDiagnostics h;
    h.horizon = spec.horizon;
    std::vector<double> trig, gap;
    trig.reserve(results.paths.size());
    gap.reserve(results.paths.size());
    const double credit = spec.alpha * spec.d_star;
    for (const PathSummary& p : results.paths) {
        trig.push_back(p.triggered ? 1.0 : 0.0);
        gap.push_back(p.maturity_debt_baseline - p.maturity_debt_converted - (p.triggered ? credit : 0.0));
        h.dominance_violations += p.dominance_violations;
    }
    h.activation = estimate_mean(trig);
    h.expected_reduction_gap = estimate_mean(gap);
    return h;
}

std::string mean_paths_csv(const EnsembleSummary& s) {
    std::string out = "t,debt_baseline,debt_tsdcm\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        out += format_double(s.times[k]);
        out += ',';
        out += format_double(s.mean_debt_baseline[k]);
        out += ',';
        out += format_double(s.mean_debt_converted[k]);
        out += '\n';
    }
    return out;
}

std::string summary_csv(const EnsembleSummary& s) {
    std::string out = "metric,value\n";
    auto row = [&](const std::string& name, double v) { out += name + "," + format_double(v) + "\n"; };
    auto dist = [&](const std::string& branch, const DistributionSummary& d) {
        row("final_debt." + branch + ".mean", d.mean);
        row("final_debt." + branch + ".p10", d.p10);
        row("final_debt." + branch + ".p50", d.p50);
        row("final_debt." + branch + ".p90", d.p90);
    };
    row("n_paths", static_cast<double>(s.n_paths));
    row("trigger_count", static_cast<double>(s.trigger_count));
    row("activation_probability", s.activation.mean);
    dist("baseline", s.final_baseline);
    dist("tsdcm", s.final_converted);
    row("final_debt.relative_reduction", s.relative_reduction);
    row("final_debt.paired_reduction.mean", s.final_debt_reduction.mean);
    row("final_debt.paired_reduction.se", s.final_debt_reduction.se);
    row("default_probability.baseline", s.default_baseline.mean);
    row("default_probability.baseline.se", s.default_baseline.se);
    row("default_probability.tsdcm", s.default_converted.mean);
    row("default_probability.tsdcm.se", s.default_converted.se);
    row("default_probability.paired_reduction.mean", s.default_reduction.mean);
    row("default_probability.paired_reduction.se", s.default_reduction.se);
    auto ms = [&](const std::string& name, const MeanStd& m) {
        row(name + ".mean", m.mean);
        row(name + ".std", m.std);
    };
    ms("payout.overshoot", s.payout.overshoot);
    ms("payout.growth", s.payout.growth);
    ms("payout.total", s.payout.total);
    ms("payout_pv.overshoot", s.payout.pv_overshoot);
    ms("payout_pv.growth", s.payout.pv_growth);
    ms("payout_pv.total", s.payout.pv_total);
    return out;
}

std::string sweep_csv(const SensitivityResult& sweep) {
    std::string out = "alpha,mean_final_debt,payout_std\n";
    for (std::size_t j = 0; j < sweep.alphas.size(); ++j) {
        out += format_double(sweep.alphas[j]) + "," + format_double(sweep.mean_final_debt[j]) + "," +
               format_double(sweep.payout_std[j]) + "\n";
    }
    return out;
}

json report_json(const RunOutputs& o) {
    json config = to_json(o.config);
    // The output location is not part of the run's identity.
    config.erase("output_dir");

    json j;
    j["tool"] = "tsdcm";
    j["version"] = kToolVersion;
    j["schema_version"] = kSchemaVersion;
    j["seed"] = o.config.plan.seed;
    j["config"] = config;

    if (o.summary) {
        const EnsembleSummary& s = *o.summary;
        j["summary"] = {
            {"n_paths", s.n_paths},
            {"trigger_count", s.trigger_count},
            {"activation_probability", estimate_json(s.activation)},
            {"final_debt", {{"baseline", distribution_json(s.final_baseline)},
                            {"tsdcm", distribution_json(s.final_converted)},
                            {"relative_reduction", s.relative_reduction},
                            {"paired_reduction", estimate_json(s.final_debt_reduction)}}},
            {"default_probability", {{"barrier", kDefaultBarrier},
                                     {"baseline", estimate_json(s.default_baseline)},
                                     {"tsdcm", estimate_json(s.default_converted)},
                                     {"paired_reduction", estimate_json(s.default_reduction)}}},
            {"payout", {{"units", "debt-ratio units; untriggered paths contribute zero"},
                        {"overshoot", mean_std_json(s.payout.overshoot)},
                        {"growth", mean_std_json(s.payout.growth)},
                        {"total", mean_std_json(s.payout.total)}}},
            {"payout_pv", {{"units", "currency: payout x notional, discounted continuously from maturity"},
                           {"notional", o.config.trigger.notional},
                           {"discount_rate", o.config.trigger.discount_rate},
                           {"overshoot", mean_std_json(s.payout.pv_overshoot)},
                           {"growth", mean_std_json(s.payout.pv_growth)},
                           {"total", mean_std_json(s.payout.pv_total)}}}};
    }
    if (o.theorem) {
        const TheoremReport& t = *o.theorem;
        j["theorem"] = {{"lhs", estimate_json(t.lhs)},
                        {"rhs", estimate_json(t.rhs)},
                        {"lhs_minus_rhs", t.lhs_minus_rhs},
                        {"lhs_ge_rhs", t.lhs_minus_rhs >= 0.0},
                        {"activation_probability", t.activation_probability},
                        {"mean_tau", optional_json(t.mean_tau)},
                        {"mean_growth_after_tau", optional_json(t.mean_growth_after_tau)},
                        {"sufficient_condition", t.sufficient_condition},
                        {"notes", "tau in the sufficient condition is the mean over triggered paths; payouts in "
                                  "debt-ratio units"}};
    }
    if (o.main_horizon) j["main_horizon"] = horizon_json(*o.main_horizon);
    if (o.propositions) {
        const PropositionReport& p = *o.propositions;
        json horizons = json::array();
        for (const HorizonDiagnostics& h : p.horizons) horizons.push_back(horizon_json(h));
        j["propositions"] = {
            {"drift_conditions", {{"debt_drift_at_threshold", p.drift.debt_drift_at_threshold},
                                  {"growth_drift_at_threshold", p.drift.growth_drift_at_threshold},
                                  {"literal_condition", p.drift.literal_condition},
                                  {"pulls_toward_thresholds", p.drift.pulls_toward_thresholds}}},
            {"horizons", horizons},
            {"activation_monotone", p.activation_monotone},
            {"activation_assertion_run", p.activation_assertion_run},
            {"activation_assertion_passed", p.activation_assertion_passed},
            {"dominance_violations", p.dominance_violations},
            {"dominance_passed", p.dominance_passed},
            {"passed", p.passed()}};
    }
    if (o.sweep) {
        const SensitivityResult& s = *o.sweep;
        j["sweep"] = {{"alphas", s.alphas},
                      {"mean_final_debt", s.mean_final_debt},
                      {"payout_mean", s.payout_mean},
                      {"payout_std", s.payout_std},
                      {"pathwise_violations", s.pathwise_violations}};
    }
    j["reference"] = reference_annotations();
    return j;
}

std::vector<std::filesystem::path> write_outputs(const RunOutputs& o, const std::filesystem::path& dir,
                                                 const std::string& report_name) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& name, const std::string& contents) {
        const auto path = dir / name;
        write_file(path, contents);
        written.push_back(path);
    };
    if (o.summary) {
        emit("mean_paths.csv", mean_paths_csv(*o.summary));
        emit("summary.csv", summary_csv(*o.summary));
    }
    if (o.sweep) emit("sweep.csv", sweep_csv(*o.sweep));
    emit(report_name, report_json(o).dump(2) + "\n");
    return written;
}

}  // namespace tsdcm
