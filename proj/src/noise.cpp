#include "tsdcm/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tsdcm {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr std::uint32_t kLaneBase = 0;
constexpr std::uint32_t kLaneGaussian = 1;
constexpr std::uint32_t kLaneGrowthJumps = 2;
constexpr std::uint32_t kLaneDebtJumpZ = 3;
constexpr std::uint32_t kLaneGrowthJumpZ = 0x80000000u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

double to_unit_interval(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

PathNoise::PathNoise(std::uint64_t seed, std::uint64_t path_index) noexcept
    : seed_(seed),
      path_index_(path_index),
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

std::array<double, 2> PathNoise::uniforms(std::uint32_t step_index, std::uint32_t lane) const noexcept {
    const Philox4x32::Counter ctr{step_index, lane, static_cast<std::uint32_t>(path_index_),
                                  static_cast<std::uint32_t>(path_index_ >> 32)};
    const auto out = Philox4x32::generate(ctr, key_);
    const std::uint64_t a = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    return {to_unit_interval(a), to_unit_interval(b)};
}

std::array<double, 2> PathNoise::normals(std::uint32_t step_index, std::uint32_t lane) const noexcept {
    const auto [u0, u1] = uniforms(step_index, lane);
    // 1 - u0 lies in (0, 1], so the log is finite.
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u0));
    const double angle = 2.0 * std::numbers::pi * u1;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

StepDraws PathNoise::step(std::uint32_t step_index) const noexcept {
    const auto base = uniforms(step_index, kLaneBase);
    const auto gauss = normals(step_index, kLaneGaussian);
    const auto growth = uniforms(step_index, kLaneGrowthJumps);
    return StepDraws{base[0], gauss[0], gauss[1], base[1], growth[0]};
}

double PathNoise::jump_normal(std::uint32_t step_index, JumpChannel channel, std::uint32_t jump) const noexcept {
    const std::uint32_t lane =
        channel == JumpChannel::debt ? kLaneDebtJumpZ + jump : kLaneGrowthJumpZ + jump;
    return normals(step_index, lane)[0];
}

std::uint32_t poisson_from_uniform(double u, double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson mean must be nonnegative");
    if (mean > 500.0) throw std::invalid_argument("poisson mean too large for inversion");
    if (mean == 0.0) return 0;
    double p = std::exp(-mean);
    double cdf = p;
    std::uint32_t k = 0;
    while (u >= cdf) {
        ++k;
        p *= mean / k;
        const double next = cdf + p;
        if (next == cdf) break;  // tail exhausted in double precision
        cdf = next;
    }
    return k;
}

}  // namespace tsdcm
