#pragma once

#include "pairtrap/errors.hpp"

#include <cstddef>
#include <span>

namespace pairtrap {

/// Composite Simpson rule on a uniform grid; requires an odd number of
/// samples (an even number of intervals).
inline double simpson_uniform(std::span<const double> f, double h) {
    if (f.size() < 3 || f.size() % 2 == 0)
        throw GridTooCoarse("simpson_uniform: need an odd sample count >= 3");
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i + 1 < f.size(); i += 2) odd += f[i];
    for (std::size_t i = 2; i + 1 < f.size(); i += 2) even += f[i];
    return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

/// Trapezoid rule on a uniform grid (used as an independent cross-check).
inline double trapezoid_uniform(std::span<const double> f, double h) {
    if (f.size() < 2) throw GridTooCoarse("trapezoid_uniform: need >= 2 samples");
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return h * s;
}

} // namespace pairtrap
