#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "tsdcm/config.hpp"
#include "tsdcm/errors.hpp"

using namespace tsdcm;

namespace {

std::string field_of(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_CASE("empty object yields the shipped defaults") {
    const RunConfig cfg = parse_config_text("{}");
    CHECK(cfg == default_run_config());

    const RegimeParams& g = cfg.model.params_by_regime[0];
    const RegimeParams& c = cfg.model.params_by_regime[1];
    CHECK(g.a == 0.05);
    CHECK(g.b == 0.10);
    CHECK(g.sigma == 0.02);
    CHECK(g.kappa == 0.05);
    CHECK(g.mu_j == -0.10);
    CHECK(g.sigma_j == 0.30);
    CHECK(c.a == 0.12);
    CHECK(c.b == 0.06);
    CHECK(c.sigma == 0.05);
    CHECK(c.kappa == 0.10);
    CHECK(c.mu_j == 0.20);
    CHECK(c.sigma_j == 0.50);
    for (const RegimeParams& p : cfg.model.params_by_regime) {
        CHECK(p.c == 0.004);
        CHECK(p.d == 0.1);
        CHECK(p.eta == 0.5);
        CHECK(p.xi == 0.0);
    }
    CHECK(cfg.model.q.lambda01 == 0.12);
    CHECK(cfg.model.q.lambda10 == 0.08);
    CHECK(cfg.model.rho == 0.0);
    CHECK(cfg.model.d0 == 1.0);
    CHECK(cfg.model.g0 == 0.04);
    CHECK(cfg.model.r0 == Regime::expansion);
    CHECK(cfg.trigger.d_star == 0.80);
    CHECK(cfg.trigger.g_star == 0.03);
    CHECK(cfg.trigger.alpha == 0.3);
    CHECK(cfg.trigger.beta == 1.0);
    CHECK(cfg.trigger.gamma == 1.0);
    CHECK(cfg.trigger.discount_rate == 0.03);
    CHECK(cfg.trigger.horizon == 10.0);
    CHECK(cfg.plan.n_paths == 10000);
    CHECK(cfg.plan.horizon == 10.0);
    CHECK(cfg.plan.dt == 0.01);
    CHECK(cfg.plan.seed == 12345);
}

TEST_CASE("partial overrides keep the remaining defaults") {
    const RunConfig cfg = parse_config_text(
        R"({"model": {"regimes": [{"sigma": 0.0}], "r0": 1}, "plan": {"horizon": 20, "n_paths": 5}})");
    CHECK(cfg.model.params_by_regime[0].sigma == 0.0);
    CHECK(cfg.model.params_by_regime[0].a == 0.05);
    CHECK(cfg.model.params_by_regime[1] == default_run_config().model.params_by_regime[1]);
    CHECK(cfg.model.r0 == Regime::crisis);
    CHECK(cfg.plan.horizon == 20.0);
    CHECK(cfg.trigger.horizon == 20.0);  // maturity follows the plan unless given
    CHECK(cfg.plan.n_paths == 5);
}

TEST_CASE("validation errors carry field paths") {
    CHECK(field_of(R"({"trigger": {"alpha": 1.5}})") == "trigger.alpha");
    CHECK(field_of(R"({"model": {"generator": {"lambda01": -0.1}}})") == "model.generator.lambda01");
    CHECK(field_of(R"({"model": {"regimes": [{}, {"kappa": -1}]}})") == "model.regimes[1].kappa");
    CHECK(field_of(R"({"model": {"rho": 2}})") == "model.rho");
    CHECK(field_of(R"({"model": {"r0": 2}})") == "model.r0");
    CHECK(field_of(R"({"plan": {"n_paths": 0}})") == "plan.n_paths");
    CHECK(field_of(R"({"plan": {"n_paths": -3}})") == "plan.n_paths");
    CHECK(field_of(R"({"plan": {"dt": "small"}})") == "plan.dt");
    CHECK(field_of(R"({"trigger": {"horizon": 30}})") == "trigger.horizon");
    CHECK(field_of(R"({"trigger": {"alhpa": 0.2}})") == "trigger.alhpa");
    CHECK(field_of(R"({"sweep": {"alphas": [0.1, 0]}})") == "sweep.alphas[1]");
    CHECK(field_of(R"({"schema_version": 7})") == "schema_version");
    CHECK(field_of(R"([1, 2])") == "<root>");
}

TEST_CASE("malformed text is a parse error") {
    CHECK_THROWS_AS(parse_config_text("{\"plan\": "), std::runtime_error);
    CHECK_THROWS_AS(load_config("/nonexistent/definitely/missing.json"), std::runtime_error);
}

TEST_CASE("serialization round-trips") {
    RunConfig cfg = default_run_config();
    cfg.model.rho = -0.25;
    cfg.model.params_by_regime[1].xi = 0.3;
    cfg.model.params_by_regime[1].mu_k = 0.1234567890123456789;
    cfg.plan.seed = 0xFFFFFFFFFFFFFFFFull;
    cfg.trigger.horizon = 7.5;
    cfg.sweep_alphas = {0.15, 0.35};
    cfg.output_dir = "somewhere/else";

    const RunConfig back = parse_config(to_json(cfg));
    CHECK(back == cfg);
    CHECK(to_json(back) == to_json(cfg));

    const auto path = std::filesystem::temp_directory_path() / "tsdcm_roundtrip.json";
    std::ofstream(path) << to_json(cfg).dump(2);
    CHECK(load_config(path) == cfg);
    std::filesystem::remove(path);
}
