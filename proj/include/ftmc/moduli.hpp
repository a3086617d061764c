#pragma once

#include <cmath>
#include <vector>

#include "ftmc/differences.hpp"
#include "ftmc/profile.hpp"
#include "ftmc/sphere.hpp"

namespace ftmc {

namespace detail {

/// L^p norm of the order-m difference at step y, given both views of the
/// field.  The p=2 path works on the precomputed spectral weights and never
/// snaps; other p go through space.
inline double delta_dispatch(const SampledField& field, const SpectralWeights* sw,
                             std::span<const double> y, double p, const DifferenceOrder& order) {
    if (p == 2.0 && sw) return std::sqrt(sw->delta2(y, order.m));
    if (order.is_integer()) {
        SnappedStep s = snap_step(field.grid, y);
        double norm_y = 0.0;
        for (double c : y) norm_y += c * c;
        if (s.zero && norm_y > 0)
            throw std::domain_error("delta: step " + std::to_string(std::sqrt(norm_y)) +
                                    " snaps to zero on spacing " +
                                    std::to_string(field.grid.spacing()));
        return lp_norm(finite_difference(field, y, order), p);
    }
    return lp_norm(idft(fractional_difference(dft(field), y, order)), p);
}

} // namespace detail

/// Evaluation context for moduli of one field: holds the field and, when the
/// norm index is 2, its spectral weights (built once).
class ModulusEvaluator {
public:
    ModulusEvaluator(SampledField field, double p) : p_(p) {
        check_p(p);
        if (p == 2.0)
            weights_.emplace(dft(field));
        else
            field_ = std::move(field);
    }
    ModulusEvaluator(const Spectrum& spectrum, double p) : p_(p) {
        check_p(p);
        if (p == 2.0)
            weights_.emplace(spectrum);
        else
            field_ = idft(spectrum);
    }

    const GridSpec& grid() const { return weights_ ? weights_->grid : field_->grid; }

    double delta(std::span<const double> y, const DifferenceOrder& order) const {
        if (weights_) return std::sqrt(weights_->delta2(y, order.m));
        return detail::delta_dispatch(*field_, nullptr, y, p_, order);
    }

private:
    static void check_p(double p) {
        if (!(p >= 1.0) && !std::isinf(p))
            throw std::domain_error("modulus: p must satisfy p >= 1 or p = inf");
    }

    double p_;
    std::optional<SampledField> field_;
    std::optional<SpectralWeights> weights_;
};

/// omega_{p,m,q}[f](h) = (sum_i w_i delta(h y_i)^q)^{1/q} over the sphere
/// rule.  q must be finite; use omega_sup for q = inf.
inline double omega(const ModulusEvaluator& ev, const DifferenceOrder& order, double q, double h,
                    const SphereRule& rule) {
    if (!(q >= 1.0) || std::isinf(q))
        throw std::domain_error("omega: q must be finite and >= 1 (q = inf is omega_sup)");
    if (!(h > 0)) throw std::domain_error("omega: h must be positive");
    if (rule.dim != ev.grid().dim)
        throw std::invalid_argument("omega: sphere rule dimension mismatch");
    CompensatedSum acc;
    std::vector<double> y(rule.dim);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        for (int a = 0; a < rule.dim; ++a) y[a] = h * rule.nodes[i][a];
        acc.add(rule.weights[i] * pow_real(ev.delta(y, order), q));
    }
    return std::pow(acc.value(), 1.0 / q);
}

inline double omega(const SampledField& field, double p, const DifferenceOrder& order, double q,
                    double h, const SphereRule& rule) {
    return omega(ModulusEvaluator(field, p), order, q, h, rule);
}

/// omega_{p,m,inf}[f](h) = sup_{|y| <= h} delta(y), searched over radial
/// shells h*j/radial_count times the sphere nodes.  Steps below one grid
/// spacing evaluate at the smallest representable step for p != 2.
inline double omega_sup(const ModulusEvaluator& ev, const DifferenceOrder& order, double h,
                        int radial_count, const SphereRule& rule) {
    if (!(h > 0)) throw std::domain_error("omega_sup: h must be positive");
    if (radial_count < 1) throw std::domain_error("omega_sup: radial search size must be >= 1");
    if (rule.dim != ev.grid().dim)
        throw std::invalid_argument("omega_sup: sphere rule dimension mismatch");
    double best = 0.0;
    std::vector<double> y(rule.dim);
    for (int j = 1; j <= radial_count; ++j) {
        const double r = h * double(j) / double(radial_count);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            for (int a = 0; a < rule.dim; ++a) y[a] = r * rule.nodes[i][a];
            double v;
            try {
                v = ev.delta(y, order);
            } catch (const std::domain_error&) {
                // radius snapped to zero: evaluate at the smallest
                // representable step in this direction instead
                const double hmin = ev.grid().spacing();
                for (int a = 0; a < rule.dim; ++a) y[a] = hmin * rule.nodes[i][a];
                v = ev.delta(y, order);
            }
            best = std::max(best, v);
        }
    }
    return best;
}

inline double omega_sup(const SampledField& field, double p, const DifferenceOrder& order,
                        double h, int radial_count, const SphereRule& rule) {
    return omega_sup(ModulusEvaluator(field, p), order, h, radial_count, rule);
}

/// Sweep omega over a grid of steps; the profile argument is the step h
/// (role Epsilon).
inline DecayProfile omega_profile(const ModulusEvaluator& ev, const DifferenceOrder& order,
                                  double q, const DyadicGrid& h_grid, const SphereRule& rule) {
    if (h_grid.points.empty()) throw std::domain_error("omega_profile: empty step grid");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(h_grid.points.size());
    for (double h : h_grid.points) pts.emplace_back(h, omega(ev, order, q, h, rule));
    return DecayProfile(DecayProfile::Role::Epsilon, std::move(pts));
}

inline DecayProfile omega_profile(const SampledField& field, double p,
                                  const DifferenceOrder& order, double q,
                                  const DyadicGrid& h_grid, const SphereRule& rule) {
    return omega_profile(ModulusEvaluator(field, p), order, q, h_grid, rule);
}

/// Default rule resolution: 64 azimuths for d=2, 24 polar x 48 azimuth for
/// d=3.  A doubled-resolution self-check is part of the test suite.
inline SphereRule default_sphere_rule(int dim) {
    if (dim <= 1) return sphere_rule(1, 1);
    if (dim == 2) return sphere_rule(2, 64);
    return sphere_rule(dim, 24);
}

} // namespace ftmc
