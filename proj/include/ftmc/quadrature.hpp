#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "ftmc/numerics.hpp"

namespace ftmc {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence.  Cached per order behind a mutex; the tables
/// are immutable once built.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule build_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-type initial guess
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p1 = 0, dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            dp = n * (x * p1 - p2) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace detail

inline const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: order must be positive");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<GaussLegendreRule>(detail::build_gauss_legendre(n))).first;
    return *it->second;
}

/// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
double integrate_gl(F&& f, double a, double b, int n) {
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    CompensatedSum acc;
    for (int i = 0; i < n; ++i)
        acc.add(rule.weights[i] * f(mid + rad * rule.nodes[i]));
    return rad * acc.value();
}

namespace detail {

// Gauss-Kronrod 7-15 pair (nodes symmetric about 0).
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
void gk15(F& f, double a, double b, double& result, double& error) {
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    double fk = 0, fg = 0;
    const double fc = f(mid);
    fk += fc * gk_wk[7];
    fg += fc * gk_wg[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = rad * gk_nodes[i];
        const double fv = f(mid - dx) + f(mid + dx);
        fk += fv * gk_wk[i];
        if (i % 2 == 1) fg += fv * gk_wg[i / 2];
    }
    result = rad * fk;
    error = std::abs(rad * (fk - fg));
}

template <class F>
double adapt_gk(F& f, double a, double b, double abs_tol, double rel_tol, int depth) {
    double r, e;
    gk15(f, a, b, r, e);
    if (e <= std::max(abs_tol, rel_tol * std::abs(r)) || depth >= 48)
        return r;
    const double mid = 0.5 * (a + b);
    return adapt_gk(f, a, mid, 0.5 * abs_tol, rel_tol, depth + 1) +
           adapt_gk(f, mid, b, 0.5 * abs_tol, rel_tol, depth + 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration on a finite interval.
template <class F>
double integrate_adaptive(F&& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-10) {
    if (!(a < b)) return 0.0;
    return detail::adapt_gk(f, a, b, abs_tol, rel_tol, 0);
}

/// Adaptive integration of f over [a, +inf); the tail beyond `cutoff` is
/// mapped through r -> 1/u.
template <class F>
double integrate_to_infinity(F&& f, double a, double cutoff = 0.0,
                             double abs_tol = 1e-12, double rel_tol = 1e-10) {
    double c = std::max(cutoff, a + 1.0);
    double head = integrate_adaptive(f, a, c, abs_tol, rel_tol);
    auto tail_f = [&f](double u) { return f(1.0 / u) / (u * u); };
    double tail = integrate_adaptive(tail_f, 0.0, 1.0 / c, abs_tol, rel_tol);
    return head + tail;
}

/// Chebyshev interpolation of f on [a, b].  evaluate() uses Clenshaw
/// recurrence; coefficients come from the degree+1 point Chebyshev grid.
struct ChebyshevFit {
    double a = 0, b = 1;
    std::vector<double> coeff;

    template <class F>
    static ChebyshevFit build(F&& f, double a, double b, int degree) {
        const int n = degree + 1;
        std::vector<double> fv(n);
        for (int k = 0; k < n; ++k) {
            double theta = pi * (k + 0.5) / n;
            double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
            fv[k] = f(x);
        }
        ChebyshevFit fit;
        fit.a = a;
        fit.b = b;
        fit.coeff.resize(n);
        for (int j = 0; j < n; ++j) {
            CompensatedSum s;
            for (int k = 0; k < n; ++k)
                s.add(fv[k] * std::cos(pi * j * (k + 0.5) / n));
            fit.coeff[j] = 2.0 / n * s.value();
        }
        fit.coeff[0] *= 0.5;
        return fit;
    }

    double evaluate(double x) const {
        double u = (2.0 * x - a - b) / (b - a);
        double d0 = 0, d1 = 0;
        for (std::size_t j = coeff.size(); j-- > 1;) {
            double t = 2.0 * u * d0 - d1 + coeff[j];
            d1 = d0;
            d0 = t;
        }
        return u * d0 - d1 + coeff[0];
    }
};

} // namespace ftmc
