#pragma once

#include <cmath>
#include <vector>

#include "ftmc/numerics.hpp"
#include "ftmc/quadrature.hpp"

namespace ftmc {

/// Quadrature rule for the surface measure on S^{d-1}.
/// Weights sum to |S^{d-1}| (= 2 for d=1 by the two-point convention).
struct SphereRule {
    int dim = 1;
    std::vector<std::vector<double>> nodes; // unit vectors
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

namespace detail {

/// Extend a rule on S^{dd-2} to S^{dd-1}: points (sin(theta) u, cos(theta)),
/// polar measure sin^{dd-2}(theta) d(theta).  dd=3 integrates in u=cos(theta)
/// (weight sums exact at every order); higher dd uses Gauss-Legendre in theta
/// renormalized to the exact moment of sin^{dd-2}.
inline SphereRule lift_rule(const SphereRule& inner, int dd, int order) {
    const auto& gl = gauss_legendre(order);
    std::vector<double> ct(order), st(order), pw(order);
    if (dd == 3) {
        for (int i = 0; i < order; ++i) {
            ct[i] = gl.nodes[i];
            st[i] = std::sqrt(std::max(0.0, 1.0 - ct[i] * ct[i]));
            pw[i] = gl.weights[i];
        }
    } else {
        double total = 0.0;
        for (int i = 0; i < order; ++i) {
            double theta = 0.5 * pi * (gl.nodes[i] + 1.0);
            ct[i] = std::cos(theta);
            st[i] = std::sin(theta);
            pw[i] = 0.5 * pi * gl.weights[i] * std::pow(st[i], dd - 2);
            total += pw[i];
        }
        // exact int_0^pi sin^{dd-2} = sqrt(pi) Gamma((dd-1)/2) / Gamma(dd/2)
        const double exact = std::sqrt(pi) * std::tgamma(0.5 * (dd - 1)) / std::tgamma(0.5 * dd);
        for (auto& w : pw) w *= exact / total;
    }
    SphereRule out;
    out.dim = dd;
    out.nodes.reserve(inner.size() * order);
    out.weights.reserve(inner.size() * order);
    for (int i = 0; i < order; ++i) {
        for (std::size_t k = 0; k < inner.size(); ++k) {
            std::vector<double> y(dd);
            for (int a = 0; a < dd - 1; ++a) y[a] = st[i] * inner.nodes[k][a];
            y[dd - 1] = ct[i];
            out.nodes.push_back(std::move(y));
            out.weights.push_back(pw[i] * inner.weights[k]);
        }
    }
    return out;
}

} // namespace detail

/// Build a sphere rule.  d=1: the two points {+1,-1}; d=2: `order` equispaced
/// points on the circle; d>=3: `order` Gauss-Legendre nodes per polar angle
/// times 2*order equispaced azimuths (so order=24 gives 24x48 on S^2).
inline SphereRule sphere_rule(int d, int order) {
    if (d < 1) throw std::domain_error("sphere_rule: dim must be >= 1");
    if (order < 1) throw std::domain_error("sphere_rule: order must be >= 1");
    SphereRule rule;
    rule.dim = 1;
    rule.nodes = {{1.0}, {-1.0}};
    rule.weights = {1.0, 1.0};
    if (d == 1) return rule;

    SphereRule circle;
    circle.dim = 2;
    const int n_az = d == 2 ? order : 2 * order;
    circle.weights.assign(n_az, 2.0 * pi / n_az);
    circle.nodes.reserve(n_az);
    for (int k = 0; k < n_az; ++k) {
        double phi = 2.0 * pi * k / n_az;
        circle.nodes.push_back({std::cos(phi), std::sin(phi)});
    }
    if (d == 2) return circle;

    SphereRule grown = std::move(circle);
    for (int dd = 3; dd <= d; ++dd) grown = detail::lift_rule(grown, dd, order);
    return grown;
}

} // namespace ftmc
