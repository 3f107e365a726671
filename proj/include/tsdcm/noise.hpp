#pragma once

#include <array>
#include <cstdint>

namespace tsdcm {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Output is a pure function of (counter, key).
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key) noexcept;
};

/// Uniform in [0, 1) with 53 bits of resolution.
double to_unit_interval(std::uint64_t bits) noexcept;

/// Draws consumed by one Euler step of the model.
struct StepDraws {
    double u_regime = 0.0;       ///< uniform for the regime switch
    double z_debt = 0.0;         ///< standard normal driving W
    double z_growth = 0.0;       ///< standard normal, independent of z_debt
    double u_jumps_debt = 0.0;   ///< uniform inverted into the debt jump count
    double u_jumps_growth = 0.0; ///< uniform inverted into the growth jump count
};

enum class JumpChannel : std::uint32_t { debt = 0, growth = 1 };

/**
 * Random draws for a single path, addressed by (step, slot) instead of being
 * consumed sequentially.
 *
 * The Philox key is the 64-bit master seed and the counter packs
 * (step, lane, path_index). Distinct path indices therefore occupy disjoint
 * counter ranges and can never overlap. Because every draw is addressable,
 * a branch restarted at step k sees exactly the draws the baseline saw at
 * step k, which is what the paired comparison relies on.
 *
 * Lane layout per step:
 *   0            -> u_regime, u_jumps_debt
 *   1            -> z_debt, z_growth (Box-Muller pair)
 *   2            -> u_jumps_growth
 *   3 + i        -> i-th debt jump normal
 *   2^31 + i     -> i-th growth jump normal
 */
class PathNoise {
public:
    PathNoise(std::uint64_t seed, std::uint64_t path_index) noexcept;

    StepDraws step(std::uint32_t step_index) const noexcept;
    double jump_normal(std::uint32_t step_index, JumpChannel channel, std::uint32_t jump) const noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t path_index() const noexcept { return path_index_; }

private:
    std::array<double, 2> uniforms(std::uint32_t step_index, std::uint32_t lane) const noexcept;
    std::array<double, 2> normals(std::uint32_t step_index, std::uint32_t lane) const noexcept;

    std::uint64_t seed_;
    std::uint64_t path_index_;
    Philox4x32::Key key_;
};

/// Inverse-CDF Poisson sample with the given mean. Throws for mean > 500,
/// where exp(-mean) loses all precision.
std::uint32_t poisson_from_uniform(double u, double mean);

}  // namespace tsdcm
