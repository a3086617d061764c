#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ftmc/numerics.hpp"
#include "ftmc/quadrature.hpp"

namespace ftmc {

namespace detail {

/// Angular integrand of G_alpha written as (2 sin^2(..))^alpha to avoid the
/// 1 - cos cancellation at small arguments.
inline double g_alpha_integrand(double v, double alpha, double cos_theta) {
    const double s = std::sin(0.5 * v * cos_theta);
    return std::pow(2.0 * s * s, alpha);
}

inline double g_alpha_gl(int d, double alpha, double v, int n) {
    // G_alpha(v) = 2^alpha |S^{d-2}| int_0^pi (1-cos(v cos t))^alpha sin^{d-2} t dt
    const double front = std::pow(2.0, alpha) * sphere_surface(d - 1);
    if (d == 3) {
        // substitute u = cos t: measure du, exact for the sin weight
        auto f = [&](double u) { return g_alpha_integrand(v, alpha, u); };
        return front * integrate_gl(f, -1.0, 1.0, n);
    }
    auto f = [&](double theta) {
        return g_alpha_integrand(v, alpha, std::cos(theta)) *
               (d == 2 ? 1.0 : std::pow(std::sin(theta), d - 2));
    };
    return front * integrate_gl(f, 0.0, pi, n);
}

} // namespace detail

/// Spherical kernel G_alpha(v) = 2^alpha int_{S^{d-1}} (1 - cos(v y_1))^alpha dS_y,
/// reduced to a single polar integral with the convention |S^0| = 2 for d=2.
/// Node doubling continues until successive values agree to 1e-10.
inline double g_alpha(int d, double alpha, double v) {
    if (d < 2) throw std::domain_error("g_alpha: requires dim >= 2");
    if (!(alpha > 0)) throw std::domain_error("g_alpha: alpha must be positive");
    if (v < 0) throw std::domain_error("g_alpha: v must be nonnegative");
    if (v == 0.0) return 0.0;
    int n = 48 + static_cast<int>(std::ceil(1.5 * v));
    double prev = detail::g_alpha_gl(d, alpha, v, n);
    for (int iter = 0; iter < 8; ++iter) {
        n *= 2;
        const double next = detail::g_alpha_gl(d, alpha, v, n);
        if (std::abs(next - prev) <= 1e-12 * std::max(1.0, std::abs(next))) return next;
        prev = next;
    }
    return prev;
}

/// Small-v expansion G_alpha(v) = v^{2a} |S^{d-2}| (I0 - a v^2 I1 / 12 + O(v^4))
/// with I_k = Gamma(a+k+1/2) Gamma((d-1)/2) / Gamma(a+k+d/2).
struct GAlphaSmallV {
    double c0 = 0, c1 = 0, exponent = 0;

    GAlphaSmallV() = default;
    GAlphaSmallV(int d, double alpha) {
        auto moment = [&](double a) {
            return std::tgamma(a + 0.5) * std::tgamma(0.5 * (d - 1)) / std::tgamma(a + 0.5 * d);
        };
        const double i0 = moment(alpha);
        const double i1 = moment(alpha + 1.0);
        c0 = sphere_surface(d - 1) * i0;
        c1 = -alpha * i1 / (12.0 * i0);
        exponent = 2.0 * alpha;
    }

    double operator()(double v) const {
        return c0 * std::pow(v, exponent) * (1.0 + c1 * v * v);
    }
};

/// Piecewise Chebyshev table of G_alpha over [0, v_max]:
///  - below v = 1e-3 the small-v expansion (relative error < 1e-12 there);
///  - on [1e-3, 1] a fit of G_alpha(v) / v^{2 alpha};
///  - above 1 fixed-width panels so the oscillatory part stays resolved.
/// Panel contents depend only on (d, alpha) and the panel location, so
/// tables of different lengths agree on shared panels.
class GAlphaTable {
public:
    static constexpr double v_stitch = 1e-3;
    static constexpr double panel_width = 8.0;
    static constexpr int panel_degree = 48;

    GAlphaTable(int d, double alpha, double v_max) : dim_(d), alpha_(alpha), small_(d, alpha) {
        if (d < 2) throw std::domain_error("GAlphaTable: requires dim >= 2");
        low_ = ChebyshevFit::build(
            [&](double v) { return g_alpha(d, alpha, v) / std::pow(v, 2.0 * alpha); },
            v_stitch, 1.0, 40);
        const int n_panels = std::max(1, static_cast<int>(std::ceil((v_max - 1.0) / panel_width)));
        panels_.reserve(n_panels);
        for (int k = 0; k < n_panels; ++k) {
            const double a = 1.0 + k * panel_width;
            panels_.push_back(ChebyshevFit::build(
                [&](double v) { return g_alpha(dim_, alpha_, v); }, a, a + panel_width,
                panel_degree));
        }
        v_max_ = 1.0 + n_panels * panel_width;
    }

    double v_max() const { return v_max_; }
    int dim() const { return dim_; }
    double alpha() const { return alpha_; }

    double operator()(double v) const {
        if (v <= 0.0) return 0.0;
        if (v < v_stitch) return small_(v);
        if (v <= 1.0) return low_.evaluate(v) * std::pow(v, 2.0 * alpha_);
        if (v >= v_max_)
            throw std::out_of_range("GAlphaTable: v = " + std::to_string(v) +
                                    " beyond table range " + std::to_string(v_max_));
        const int k = static_cast<int>((v - 1.0) / panel_width);
        return panels_[k].evaluate(v);
    }

private:
    int dim_;
    double alpha_;
    double v_max_ = 0;
    GAlphaSmallV small_;
    ChebyshevFit low_;
    std::vector<ChebyshevFit> panels_;
};

/// Shared cache of kernel tables keyed by (dim, alpha).  A request beyond an
/// existing table's range rebuilds a longer table; values on shared panels
/// are identical, so growth history never changes results.
inline std::shared_ptr<const GAlphaTable> g_alpha_table(int d, double alpha, double v_need) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::shared_ptr<const GAlphaTable>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_pair(d, alpha);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->v_max() > v_need) return it->second;
    double v_max = 64.0;
    while (v_max <= v_need) v_max *= 2.0;
    auto table = std::make_shared<const GAlphaTable>(d, alpha, v_max);
    cache[key] = table;
    return table;
}

} // namespace ftmc
