#pragma once

// Test-only reference computations, written independently of the library's
// evaluation paths.

#include <cmath>
#include <cstddef>
#include <numbers>

namespace oracle {

// Reverse-order long double summation of (1 + l^2 eta)^(-p) for l < L.
inline long double power_sum(std::size_t L, long double eta, long double p)
{
    long double s = 0.0L;
    for (std::size_t l = L; l-- > 0;) {
        const long double ld = static_cast<long double>(l);
        s += std::pow(1.0L + ld * ld * eta, -p);
    }
    return s;
}

inline double g(std::size_t L, double eta, double q)
{
    return static_cast<double>(power_sum(L, eta, q / 2.0L) / std::sqrt(static_cast<long double>(L)));
}

inline double gamma(std::size_t L, double eta, double q)
{
    return static_cast<double>(power_sum(L, eta, q) / static_cast<long double>(L));
}

// Rectangle-rule outage, written out term by term.
inline double rectangle_outage(double x, double mean, double sigma)
{
    return x / (2.0 * std::sqrt(2.0 * std::numbers::pi) * sigma) *
           std::exp(-(x - mean) * (x - mean) / (2.0 * sigma * sigma));
}

// Largest grid point in [0, mean) whose rectangle-rule outage does not exceed the target.
inline double threshold_by_grid(double target, double mean, double sigma, std::size_t points)
{
    double best = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = mean * static_cast<double>(i) / static_cast<double>(points);
        if (rectangle_outage(x, mean, sigma) <= target) {
            best = x;
        }
    }
    return best;
}

}  // namespace oracle
