#include "tsdcm/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsdcm/errors.hpp"

namespace tsdcm {

namespace {

void require_nonnegative(double value, const std::string& field) {
    if (!(value >= 0.0) || !std::isfinite(value)) throw ValidationError(field, "must be finite and >= 0");
}

void require_finite(double value, const std::string& field) {
    if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

double jump_sum(double log_mean, double log_std, std::span<const double> z) noexcept {
    double sum = 0.0;
    for (double zi : z) sum += std::expm1(log_mean + log_std * zi);
    return sum;
}

}  // namespace

void validate(const RegimeParams& p, const std::string& prefix) {
    require_finite(p.a, prefix + ".a");
    require_nonnegative(p.b, prefix + ".b");
    require_nonnegative(p.sigma, prefix + ".sigma");
    require_nonnegative(p.kappa, prefix + ".kappa");
    require_finite(p.mu_j, prefix + ".mu_j");
    require_nonnegative(p.sigma_j, prefix + ".sigma_j");
    require_finite(p.c, prefix + ".c");
    require_nonnegative(p.d, prefix + ".d");
    require_nonnegative(p.eta, prefix + ".eta");
    require_nonnegative(p.xi, prefix + ".xi");
    require_finite(p.mu_k, prefix + ".mu_k");
    require_nonnegative(p.sigma_k, prefix + ".sigma_k");
}

void validate(const GeneratorMatrix& q, const std::string& prefix) {
    require_nonnegative(q.lambda01, prefix + ".lambda01");
    require_nonnegative(q.lambda10, prefix + ".lambda10");
}

void validate(const ModelConfig& cfg, const std::string& prefix) {
    for (std::size_t r = 0; r < 2; ++r)
        validate(cfg.params_by_regime[r], prefix + ".regimes[" + std::to_string(r) + "]");
    validate(cfg.q, prefix + ".generator");
    if (!(cfg.rho >= -1.0 && cfg.rho <= 1.0)) throw ValidationError(prefix + ".rho", "must lie in [-1, 1]");
    if (!(cfg.d0 > 0.0) || !std::isfinite(cfg.d0)) throw ValidationError(prefix + ".d0", "must be finite and > 0");
    require_finite(cfg.g0, prefix + ".g0");
    if (cfg.r0 != Regime::expansion && cfg.r0 != Regime::crisis)
        throw ValidationError(prefix + ".r0", "must be 0 or 1");
}

TransitionMatrix transition_matrix(const GeneratorMatrix& q, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("transition_matrix: dt must be > 0");
    const double s = q.lambda01 + q.lambda10;
    if (s == 0.0) return {{{1.0, 0.0}, {0.0, 1.0}}};
    const double pi0 = q.lambda10 / s;
    const double pi1 = q.lambda01 / s;
    const double decay = -std::expm1(-s * dt);  // 1 - e^{-s dt}
    const double p01 = pi1 * decay;
    const double p10 = pi0 * decay;
    return {{{1.0 - p01, p01}, {p10, 1.0 - p10}}};
}

Regime sample_regime_step(Regime current, const TransitionMatrix& p, double u) noexcept {
    const Regime next = other(current);
    return u < p[index_of(current)][index_of(next)] ? next : current;
}

double debt_step(double d, const RegimeParams& p, double dt, double dw, std::span<const double> z_jumps) {
    if (!(d > 0.0)) throw std::invalid_argument("debt_step: debt must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("debt_step: dt must be > 0");
    const double next = d + (p.a - p.b * d) * dt + p.sigma * d * dw + d * jump_sum(p.mu_j, p.sigma_j, z_jumps);
    return std::max(next, kDebtFloor);
}

double growth_step(double g, const RegimeParams& p, double dt, double dw, std::span<const double> z_jumps) {
    if (!(dt > 0.0)) throw std::invalid_argument("growth_step: dt must be > 0");
    return g + (p.c - p.d * g) * dt + p.eta * g * dw + g * jump_sum(p.mu_k, p.sigma_k, z_jumps);
}

std::size_t grid_steps(double horizon, double dt) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    const double m = std::round(horizon / dt);
    if (!(m >= 1.0)) throw std::invalid_argument("horizon / dt rounds to zero steps");
    if (m > 4.0e9) throw std::invalid_argument("horizon / dt exceeds the supported step count");
    return static_cast<std::size_t>(m);
}

PathStepper::PathStepper(const ModelConfig& cfg, double dt)
    : cfg_(cfg),
      dt_(dt),
      sqrt_dt_(std::sqrt(dt)),
      rho_complement_(std::sqrt(1.0 - cfg.rho * cfg.rho)),
      p_(transition_matrix(cfg.q, dt)) {
    z_buffer_.reserve(8);
}

ModelState PathStepper::advance(const ModelState& s, std::uint32_t step_index, const PathNoise& noise) {
    const StepDraws draws = noise.step(step_index);
    ModelState next;
    next.regime = sample_regime_step(s.regime, p_, draws.u_regime);
    const RegimeParams& p = cfg_.params(next.regime);

    const double dw = sqrt_dt_ * draws.z_debt;
    const double dw_growth = cfg_.rho * dw + rho_complement_ * sqrt_dt_ * draws.z_growth;

    const std::uint32_t n_debt = poisson_from_uniform(draws.u_jumps_debt, p.kappa * dt_);
    z_buffer_.clear();
    for (std::uint32_t i = 0; i < n_debt; ++i)
        z_buffer_.push_back(noise.jump_normal(step_index, JumpChannel::debt, i));
    next.debt = debt_step(s.debt, p, dt_, dw, z_buffer_);

    const std::uint32_t n_growth = poisson_from_uniform(draws.u_jumps_growth, p.xi * dt_);
    z_buffer_.clear();
    for (std::uint32_t i = 0; i < n_growth; ++i)
        z_buffer_.push_back(noise.jump_normal(step_index, JumpChannel::growth, i));
    next.growth = growth_step(s.growth, p, dt_, dw_growth, z_buffer_);
    return next;
}

PathRecord simulate_path(const ModelConfig& cfg, double horizon, double dt, const PathNoise& noise) {
    const std::size_t m = grid_steps(horizon, dt);
    PathRecord path;
    path.dt = dt;
    path.times.resize(m + 1);
    path.regimes.resize(m + 1);
    path.debt.resize(m + 1);
    path.growth.resize(m + 1);

    PathStepper stepper(cfg, dt);
    ModelState state{cfg.r0, cfg.d0, cfg.g0};
    for (std::size_t k = 0;; ++k) {
        path.times[k] = static_cast<double>(k) * dt;
        path.regimes[k] = state.regime;
        path.debt[k] = state.debt;
        path.growth[k] = state.growth;
        if (k == m) break;
        state = stepper.advance(state, static_cast<std::uint32_t>(k), noise);
    }
    return path;
}

PathRecord simulate_branch(const ModelConfig& cfg, const PathRecord& base, std::size_t from,
                           double debt_at_from, const PathNoise& noise) {
    if (from >= base.times.size()) throw std::invalid_argument("simulate_branch: start index outside the grid");
    PathRecord path = base;
    PathStepper stepper(cfg, base.dt);
    ModelState state{base.regimes[from], debt_at_from, base.growth[from]};
    path.debt[from] = debt_at_from;
    for (std::size_t k = from; k + 1 < path.times.size(); ++k) {
        state = stepper.advance(state, static_cast<std::uint32_t>(k), noise);
        path.regimes[k + 1] = state.regime;
        path.debt[k + 1] = state.debt;
        path.growth[k + 1] = state.growth;
    }
    return path;
}

}  // namespace tsdcm
