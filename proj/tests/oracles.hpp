#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace oracle {

using Mat2 = std::array<std::array<double, 2>, 2>;

inline Mat2 multiply(const Mat2& x, const Mat2& y) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

/// exp(Q dt) by scaling and squaring around a 20-term Taylor series.
inline Mat2 expm_taylor(double lambda01, double lambda10, double dt) {
    Mat2 a{{{-lambda01 * dt, lambda01 * dt}, {lambda10 * dt, -lambda10 * dt}}};
    const double norm = std::max(std::abs(a[0][0]) + std::abs(a[0][1]), std::abs(a[1][0]) + std::abs(a[1][1]));
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const double scale = std::ldexp(1.0, -squarings);
    for (auto& row : a)
        for (double& v : row) v *= scale;

    Mat2 result{{{1.0, 0.0}, {0.0, 1.0}}};
    Mat2 term = result;
    for (int n = 1; n <= 20; ++n) {
        term = multiply(term, a);
        for (auto& row : term)
            for (double& v : row) v /= n;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) result[i][j] += term[i][j];
    }
    for (int s = 0; s < squarings; ++s) result = multiply(result, result);
    return result;
}

/// Linear ODE x' = c - k x with x(0) = x0.
inline double linear_ode(double c, double k, double x0, double t) {
    return c / k + (x0 - c / k) * std::exp(-k * t);
}

/// Smallest sample value v such that at least q% of the sample is <= v.
inline double percentile_brute_force(const std::vector<double>& sample, double q) {
    std::vector<double> candidates = sample;
    std::sort(candidates.begin(), candidates.end());
    const double n = static_cast<double>(sample.size());
    for (double v : candidates) {
        const auto below = std::count_if(sample.begin(), sample.end(), [&](double x) { return x <= v; });
        if (static_cast<double>(below) * 100.0 >= q * n) return v;
    }
    return candidates.back();
}

}  // namespace oracle
