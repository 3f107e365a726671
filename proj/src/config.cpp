#include "tsdcm/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

#include "tsdcm/errors.hpp"

namespace tsdcm {

using nlohmann::json;

namespace {

// Debt side: regime-specific calibration. Growth side: mean reversion to 4%.
constexpr RegimeParams kExpansion{0.05, 0.10, 0.02, 0.05, -0.10, 0.30, 0.004, 0.1, 0.5, 0.0, 0.0, 0.0};
constexpr RegimeParams kCrisis{0.12, 0.06, 0.05, 0.10, 0.20, 0.50, 0.004, 0.1, 0.5, 0.0, 0.0, 0.0};

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path.empty() ? "<root>" : path, "must be an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool found = false;
        for (const char* k : known) found = found || it.key() == k;
        if (!found) throw ValidationError(join(path, it.key()), "unknown field");
    }
}

void read(const json& j, const std::string& path, const char* key, double& out) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(join(path, key), "must be a number");
    out = v.get<double>();
}

void read(const json& j, const std::string& path, const char* key, std::uint64_t& out) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_number_unsigned()) throw ValidationError(join(path, key), "must be a nonnegative integer");
    out = v.get<std::uint64_t>();
}

void read_regime(const json& j, const std::string& path, RegimeParams& p) {
    require_object(j, path);
    reject_unknown(j, path, {"a", "b", "sigma", "kappa", "mu_j", "sigma_j", "c", "d", "eta", "xi", "mu_k", "sigma_k"});
    read(j, path, "a", p.a);
    read(j, path, "b", p.b);
    read(j, path, "sigma", p.sigma);
    read(j, path, "kappa", p.kappa);
    read(j, path, "mu_j", p.mu_j);
    read(j, path, "sigma_j", p.sigma_j);
    read(j, path, "c", p.c);
    read(j, path, "d", p.d);
    read(j, path, "eta", p.eta);
    read(j, path, "xi", p.xi);
    read(j, path, "mu_k", p.mu_k);
    read(j, path, "sigma_k", p.sigma_k);
}

void read_model(const json& j, ModelConfig& m) {
    const std::string path = "model";
    require_object(j, path);
    reject_unknown(j, path, {"regimes", "generator", "rho", "d0", "g0", "r0"});
    if (j.contains("regimes")) {
        const json& regimes = j.at("regimes");
        if (!regimes.is_array() || regimes.size() > 2)
            throw ValidationError("model.regimes", "must be an array of at most two objects");
        for (std::size_t r = 0; r < regimes.size(); ++r)
            read_regime(regimes[r], "model.regimes[" + std::to_string(r) + "]", m.params_by_regime[r]);
    }
    if (j.contains("generator")) {
        const json& g = j.at("generator");
        require_object(g, "model.generator");
        reject_unknown(g, "model.generator", {"lambda01", "lambda10"});
        read(g, "model.generator", "lambda01", m.q.lambda01);
        read(g, "model.generator", "lambda10", m.q.lambda10);
    }
    read(j, path, "rho", m.rho);
    read(j, path, "d0", m.d0);
    read(j, path, "g0", m.g0);
    if (j.contains("r0")) {
        const json& v = j.at("r0");
        if (!v.is_number_integer() || (v.get<std::int64_t>() != 0 && v.get<std::int64_t>() != 1))
            throw ValidationError("model.r0", "must be 0 or 1");
        m.r0 = v.get<std::int64_t>() == 0 ? Regime::expansion : Regime::crisis;
    }
}

json regime_json(const RegimeParams& p) {
    return {{"a", p.a},       {"b", p.b},   {"sigma", p.sigma}, {"kappa", p.kappa}, {"mu_j", p.mu_j},
            {"sigma_j", p.sigma_j}, {"c", p.c}, {"d", p.d},   {"eta", p.eta},   {"xi", p.xi},
            {"mu_k", p.mu_k}, {"sigma_k", p.sigma_k}};
}

}  // namespace

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.model.params_by_regime = {kExpansion, kCrisis};
    cfg.model.q = {0.12, 0.08};
    cfg.model.rho = 0.0;
    cfg.model.d0 = 1.0;
    cfg.model.g0 = 0.04;
    cfg.model.r0 = Regime::expansion;
    return cfg;
}

void validate(const RunConfig& cfg) {
    validate(cfg.model, "model");
    validate(cfg.trigger, "trigger");
    validate(cfg.plan, "plan");
    if (maturity_index(cfg.trigger, cfg.plan.dt) > grid_steps(cfg.plan.horizon, cfg.plan.dt))
        throw ValidationError("trigger.horizon", "must not exceed plan.horizon");
    if (cfg.sweep_alphas.empty()) throw ValidationError("sweep.alphas", "must not be empty");
    for (std::size_t j = 0; j < cfg.sweep_alphas.size(); ++j)
        if (!(cfg.sweep_alphas[j] > 0.0 && cfg.sweep_alphas[j] < 1.0))
            throw ValidationError("sweep.alphas[" + std::to_string(j) + "]", "must lie in (0, 1)");
}

RunConfig parse_config(const json& j) {
    RunConfig cfg = default_run_config();
    require_object(j, "");
    reject_unknown(j, "", {"schema_version", "model", "trigger", "plan", "output_dir", "sweep"});
    if (j.contains("schema_version")) {
        const json& v = j.at("schema_version");
        if (!v.is_number_integer() || v.get<std::int64_t>() != kSchemaVersion)
            throw ValidationError("schema_version", "unsupported schema version");
    }
    if (j.contains("model")) read_model(j.at("model"), cfg.model);

    bool trigger_horizon_given = false;
    if (j.contains("trigger")) {
        const json& t = j.at("trigger");
        require_object(t, "trigger");
        reject_unknown(t, "trigger",
                       {"d_star", "g_star", "alpha", "beta", "gamma", "horizon", "discount_rate", "notional"});
        read(t, "trigger", "d_star", cfg.trigger.d_star);
        read(t, "trigger", "g_star", cfg.trigger.g_star);
        read(t, "trigger", "alpha", cfg.trigger.alpha);
        read(t, "trigger", "beta", cfg.trigger.beta);
        read(t, "trigger", "gamma", cfg.trigger.gamma);
        read(t, "trigger", "horizon", cfg.trigger.horizon);
        read(t, "trigger", "discount_rate", cfg.trigger.discount_rate);
        read(t, "trigger", "notional", cfg.trigger.notional);
        trigger_horizon_given = t.contains("horizon");
    }
    if (j.contains("plan")) {
        const json& p = j.at("plan");
        require_object(p, "plan");
        reject_unknown(p, "plan", {"n_paths", "horizon", "dt", "seed"});
        read(p, "plan", "n_paths", cfg.plan.n_paths);
        read(p, "plan", "horizon", cfg.plan.horizon);
        read(p, "plan", "dt", cfg.plan.dt);
        read(p, "plan", "seed", cfg.plan.seed);
    }
    // Token maturity follows the simulation horizon unless set explicitly.
    if (!trigger_horizon_given) cfg.trigger.horizon = cfg.plan.horizon;

    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string()) throw ValidationError("output_dir", "must be a string");
        cfg.output_dir = j.at("output_dir").get<std::string>();
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        require_object(s, "sweep");
        reject_unknown(s, "sweep", {"alphas"});
        if (s.contains("alphas")) {
            const json& a = s.at("alphas");
            if (!a.is_array()) throw ValidationError("sweep.alphas", "must be an array of numbers");
            cfg.sweep_alphas.clear();
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!a[i].is_number())
                    throw ValidationError("sweep.alphas[" + std::to_string(i) + "]", "must be a number");
                cfg.sweep_alphas.push_back(a[i].get<double>());
            }
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("malformed config: ") + e.what());
    }
    return parse_config(j);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_text(buffer.str());
    } catch (const ValidationError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

json to_json(const RunConfig& cfg) {
    const ModelConfig& m = cfg.model;
    json j;
    j["schema_version"] = kSchemaVersion;
    j["model"] = {{"regimes", json::array({regime_json(m.params_by_regime[0]), regime_json(m.params_by_regime[1])})},
                  {"generator", {{"lambda01", m.q.lambda01}, {"lambda10", m.q.lambda10}}},
                  {"rho", m.rho},
                  {"d0", m.d0},
                  {"g0", m.g0},
                  {"r0", static_cast<int>(index_of(m.r0))}};
    const TriggerSpec& t = cfg.trigger;
    j["trigger"] = {{"d_star", t.d_star}, {"g_star", t.g_star},   {"alpha", t.alpha},
                    {"beta", t.beta},     {"gamma", t.gamma},     {"horizon", t.horizon},
                    {"discount_rate", t.discount_rate}, {"notional", t.notional}};
    j["plan"] = {{"n_paths", cfg.plan.n_paths}, {"horizon", cfg.plan.horizon}, {"dt", cfg.plan.dt},
                 {"seed", cfg.plan.seed}};
    j["output_dir"] = cfg.output_dir.string();
    j["sweep"] = {{"alphas", cfg.sweep_alphas}};
    return j;
}

}  // namespace tsdcm
