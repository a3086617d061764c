#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftmc {

inline constexpr double pi = std::numbers::pi;

/// Surface measure of the unit sphere S^{d-1}.  The d=1 value is 2,
/// matching the two-point convention S^0 = {+1, -1} with unit weights.
inline double sphere_surface(int dim) {
    if (dim < 1)
        throw std::domain_error("sphere_surface: dim must be >= 1, got " + std::to_string(dim));
    if (dim == 1) return 2.0;
    if (dim == 2) return 2.0 * pi;
    if (dim == 3) return 4.0 * pi;
    return 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

/// Neumaier-compensated accumulator.  All large reductions in the library
/// go through this so that results are independent of how the caller might
/// batch the terms, and accurate to ~1 ulp of the true sum.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

/// x^m for nonnegative x; integer m dispatched to repeated multiplication.
inline double pow_real(double x, double m) {
    double mi = std::round(m);
    if (mi == m && mi >= 0 && mi <= 64) {
        double r = 1.0, base = x;
        auto n = static_cast<unsigned>(mi);
        while (n) {
            if (n & 1u) r *= base;
            base *= base;
            n >>= 1u;
        }
        return r;
    }
    return std::pow(x, m);
}

inline bool is_integer_order(double m) {
    return m > 0 && std::round(m) == m;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * double(n - k + i) / double(i);
    return std::round(r);
}

} // namespace ftmc
