#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsdcm/noise.hpp"

namespace tsdcm {

enum class Regime : std::uint8_t { expansion = 0, crisis = 1 };

constexpr std::size_t index_of(Regime r) noexcept { return static_cast<std::size_t>(r); }
constexpr Regime other(Regime r) noexcept {
    return r == Regime::expansion ? Regime::crisis : Regime::expansion;
}

/// Drift, diffusion and jump parameters of one regime.
struct RegimeParams {
    // debt ratio
    double a = 0.0;        ///< drift intercept, 1/year
    double b = 0.0;        ///< mean-reversion rate, 1/year
    double sigma = 0.0;    ///< diffusion volatility, 1/sqrt(year)
    double kappa = 0.0;    ///< jump intensity, events/year
    double mu_j = 0.0;     ///< log-mean of the jump multiplier
    double sigma_j = 0.0;  ///< log-std of the jump multiplier
    // growth rate
    double c = 0.0;
    double d = 0.0;
    double eta = 0.0;
    double xi = 0.0;
    double mu_k = 0.0;
    double sigma_k = 0.0;

    bool operator==(const RegimeParams&) const = default;
};

struct GeneratorMatrix {
    double lambda01 = 0.0;  ///< expansion -> crisis, 1/year
    double lambda10 = 0.0;  ///< crisis -> expansion, 1/year

    bool operator==(const GeneratorMatrix&) const = default;
};

struct ModelConfig {
    std::array<RegimeParams, 2> params_by_regime{};
    GeneratorMatrix q{};
    double rho = 0.0;  ///< correlation of the debt and growth Brownian drivers
    double d0 = 1.0;
    double g0 = 0.04;
    Regime r0 = Regime::expansion;

    const RegimeParams& params(Regime r) const noexcept { return params_by_regime[index_of(r)]; }
    bool operator==(const ModelConfig&) const = default;
};

/// Row-stochastic 2x2 matrix, indexed [from][to].
using TransitionMatrix = std::array<std::array<double, 2>, 2>;

struct PathRecord {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<Regime> regimes;
    std::vector<double> debt;
    std::vector<double> growth;

    std::size_t steps() const noexcept { return times.empty() ? 0 : times.size() - 1; }
    bool operator==(const PathRecord&) const = default;
};

inline constexpr double kDebtFloor = 1e-12;

/// Throws ValidationError with a field path under `prefix` ("model" by default).
void validate(const RegimeParams& p, const std::string& prefix);
void validate(const GeneratorMatrix& q, const std::string& prefix);
void validate(const ModelConfig& cfg, const std::string& prefix = "model");

/// exp(Q dt) in closed form for the two-state chain.
TransitionMatrix transition_matrix(const GeneratorMatrix& q, double dt);

/// Switching probability is tested first: returns the other regime iff
/// u < P[current][other].
Regime sample_regime_step(Regime current, const TransitionMatrix& p, double u) noexcept;

/// One Euler step of the debt ratio. Each jump multiplies debt by exp(Z),
/// Z ~ Normal(mu_j, sigma_j); `z_jumps` holds the standard normals behind Z.
/// The result is floored at kDebtFloor.
double debt_step(double d, const RegimeParams& p, double dt, double dw, std::span<const double> z_jumps);

/// One Euler step of the growth rate; same jump convention with (mu_k, sigma_k).
/// No floor: growth may change sign.
double growth_step(double g, const RegimeParams& p, double dt, double dw, std::span<const double> z_jumps);

/// Number of grid steps for a horizon; throws if it rounds to zero.
std::size_t grid_steps(double horizon, double dt);

/// State of the model at one grid point.
struct ModelState {
    Regime regime = Regime::expansion;
    double debt = 1.0;
    double growth = 0.0;
};

/**
 * Steps the model on a fixed grid, reading step k's randomness from
 * `noise.step(k)`. Within step k the regime is first advanced with exp(Q dt);
 * the increments of step k are then formed under that new regime.
 */
class PathStepper {
public:
    PathStepper(const ModelConfig& cfg, double dt);

    ModelState advance(const ModelState& s, std::uint32_t step_index, const PathNoise& noise);

    double dt() const noexcept { return dt_; }

private:
    const ModelConfig& cfg_;
    double dt_;
    double sqrt_dt_;
    double rho_complement_;
    TransitionMatrix p_;
    std::vector<double> z_buffer_;
};

PathRecord simulate_path(const ModelConfig& cfg, double horizon, double dt, const PathNoise& noise);

/// Restarts the dynamics at grid index `from` with the given debt, keeping the
/// regime and growth recorded there, and replays the same per-step draws.
/// Entries before `from` are copied from `base`.
PathRecord simulate_branch(const ModelConfig& cfg, const PathRecord& base, std::size_t from,
                           double debt_at_from, const PathNoise& noise);

}  // namespace tsdcm
