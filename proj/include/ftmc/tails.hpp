#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <variant>

#include "ftmc/grid.hpp"
#include "ftmc/kernel.hpp"
#include "ftmc/profile.hpp"
#include "ftmc/quadrature.hpp"
#include "ftmc/radial.hpp"

namespace ftmc {

/// Which tail functional to evaluate.  The Sup* variants are the p' = inf
/// forms; True/Modified/Bessel with pprime = inf are normalized to them.
struct TailKind {
    enum class Variant { True, Modified, Bessel, SupTrue, SupModified };

    Variant variant = Variant::True;
    double pprime = 2.0;
    double m = 1.0; // unused for True/SupTrue

    TailKind(Variant v, double pp, double order = 1.0) : variant(v), pprime(pp), m(order) {
        if (!(pprime >= 1.0) && !std::isinf(pprime))
            throw std::domain_error("TailKind: p' must be >= 1 or inf");
        if ((variant == Variant::SupTrue || variant == Variant::SupModified) && !std::isinf(pprime))
            throw std::domain_error("TailKind: sup variants require p' = inf");
        if (std::isinf(pprime) && variant == Variant::True) variant = Variant::SupTrue;
        if (std::isinf(pprime) && variant == Variant::Modified) variant = Variant::SupModified;
        if (variant == Variant::Bessel && std::isinf(pprime))
            throw std::domain_error("TailKind: the Bessel tail requires p' < inf");
        if (variant != Variant::True && variant != Variant::SupTrue && !(m > 0))
            throw std::domain_error("TailKind: order m must be positive");
    }
};

/// Options for gridded-spectrum tails.  Thresholds above band_margin times
/// the Nyquist frequency are rejected so truncation bias stays controlled.
struct TailOptions {
    double band_margin = 0.8;
};

namespace detail {

template <class Fn>
void for_each_freq_radius(const GridSpec& g, Fn&& fn) {
    const int N = g.samples;
    std::vector<double> sq(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double f = g.freq(j);
        sq[j] = f * f;
    }
    if (g.dim == 1) {
        for (int j = 0; j < N; ++j) fn(static_cast<std::size_t>(j), std::sqrt(sq[j]));
        return;
    }
    if (g.dim == 2) {
        std::size_t flat = 0;
        for (int j0 = 0; j0 < N; ++j0) {
            const double s0 = sq[j0];
            for (int j1 = 0; j1 < N; ++j1, ++flat) fn(flat, std::sqrt(s0 + sq[j1]));
        }
        return;
    }
    std::vector<int> idx(g.dim, 0);
    const std::size_t total = g.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        double s = 0.0;
        std::size_t rem = flat;
        for (int a = g.dim - 1; a >= 0; --a) {
            s += sq[rem % N];
            rem /= N;
        }
        fn(flat, std::sqrt(s));
        (void)idx;
    }
}

inline void check_band(const GridSpec& g, double t, const TailOptions& opt) {
    if (!(t > 0)) throw std::domain_error("tail: t must be positive");
    const double cap = opt.band_margin * g.nyquist();
    if (t > cap)
        throw std::out_of_range("tail: t = " + std::to_string(t) +
                                " beyond usable band " + std::to_string(cap) + " (margin " +
                                std::to_string(opt.band_margin) + " of Nyquist " +
                                std::to_string(g.nyquist()) + ")");
}

inline double max_grid_radius(const GridSpec& g) {
    return g.freq_spacing() * (g.samples / 2) * std::sqrt(double(g.dim));
}

} // namespace detail

// ---------------------------------------------------------------------------
// gridded spectra: midpoint rule over frequency cells, |xi| at cell centers
// ---------------------------------------------------------------------------

/// psi_{p'}[ghat](t): L^{p'} mass outside the ball |xi| >= t, or the sup for
/// p' = inf.
inline double true_tail(const Spectrum& spec, double pprime, double t,
                        const TailOptions& opt = {}) {
    detail::check_band(spec.grid, t, opt);
    if (std::isinf(pprime)) {
        double best = 0.0;
        detail::for_each_freq_radius(spec.grid, [&](std::size_t i, double r) {
            if (r >= t) best = std::max(best, std::abs(spec.coeffs[i]));
        });
        return best;
    }
    if (!(pprime >= 1.0)) throw std::domain_error("true_tail: p' must be >= 1 or inf");
    CompensatedSum acc;
    detail::for_each_freq_radius(spec.grid, [&](std::size_t i, double r) {
        if (r >= t) acc.add(pow_real(std::abs(spec.coeffs[i]), pprime));
    });
    const double cell = pow_real(spec.grid.freq_spacing(), double(spec.grid.dim));
    return std::pow(acc.value() * cell, 1.0 / pprime);
}

/// psi_{p',m}[ghat](t): integral of min(1, (|xi|/t)^{m p'}) |ghat|^{p'}, or
/// the weighted sup for p' = inf.
inline double modified_tail(const Spectrum& spec, double pprime, double m, double t,
                            const TailOptions& opt = {}) {
    detail::check_band(spec.grid, t, opt);
    if (!(m > 0)) throw std::domain_error("modified_tail: m must be positive");
    if (std::isinf(pprime)) {
        double best = 0.0;
        detail::for_each_freq_radius(spec.grid, [&](std::size_t i, double r) {
            const double w = r >= t ? 1.0 : pow_real(r / t, m);
            best = std::max(best, w * std::abs(spec.coeffs[i]));
        });
        return best;
    }
    if (!(pprime >= 1.0)) throw std::domain_error("modified_tail: p' must be >= 1 or inf");
    const double mp = m * pprime;
    CompensatedSum acc;
    detail::for_each_freq_radius(spec.grid, [&](std::size_t i, double r) {
        const double w = r >= t ? 1.0 : pow_real(r / t, mp);
        acc.add(w * pow_real(std::abs(spec.coeffs[i]), pprime));
    });
    const double cell = pow_real(spec.grid.freq_spacing(), double(spec.grid.dim));
    return std::pow(acc.value() * cell, 1.0 / pprime);
}

/// Bessel tail: integral of G_{m p'/2}(|xi|/t) |ghat|^{p'}.
inline double bessel_tail(const Spectrum& spec, double pprime, double m, double t,
                          const TailOptions& opt = {}) {
    if (spec.grid.dim < 2) throw std::domain_error("bessel_tail: requires dim >= 2");
    if (std::isinf(pprime)) throw std::domain_error("bessel_tail: requires p' < inf");
    if (!(pprime >= 1.0)) throw std::domain_error("bessel_tail: p' must be >= 1");
    if (!(m > 0)) throw std::domain_error("bessel_tail: m must be positive");
    detail::check_band(spec.grid, t, opt);
    const double alpha = 0.5 * m * pprime;
    auto table = g_alpha_table(spec.grid.dim, alpha, detail::max_grid_radius(spec.grid) / t);
    CompensatedSum acc;
    detail::for_each_freq_radius(spec.grid, [&](std::size_t i, double r) {
        acc.add((*table)(r / t) * pow_real(std::abs(spec.coeffs[i]), pprime));
    });
    const double cell = pow_real(spec.grid.freq_spacing(), double(spec.grid.dim));
    return std::pow(acc.value() * cell, 1.0 / pprime);
}

// ---------------------------------------------------------------------------
// analytic radial spectra: 1-D quadrature with closed forms for pure powers
// ---------------------------------------------------------------------------

namespace detail {

/// int_lo^hi profile(r)^{p'} r^{d-1} dr by adaptive quadrature.
inline double radial_mass(const RadialSpectrum& rs, double pprime, double lo, double hi) {
    if (!(lo < hi)) return 0.0;
    auto f = [&](double r) {
        return pow_real(rs.profile(r), pprime) * pow_real(r, double(rs.dim() - 1));
    };
    return integrate_adaptive(f, lo, hi);
}

/// Power piece int_lo^hi r^{e-1} dr with the log form at e = 0.
inline double power_integral(double lo, double hi, double e) {
    if (!(lo < hi)) return 0.0;
    if (std::abs(e) < 1e-14) return std::log(hi / lo);
    return (std::pow(hi, e) - std::pow(lo, e)) / e;
}

/// Max of r^m * profile(r) over [0, hi] for the power-law rule; the cubic
/// fill piece has a closed-form critical point.
inline double powerlaw_weighted_sup(const PowerLawProfile& p, double m, double hi) {
    const double a0 = 1.0 + p.exponent / 3.0, b0 = p.exponent / 3.0;
    auto fill = [&](double r) { return pow_real(r, m) * (a0 - b0 * r * r * r); };
    double best = 0.0;
    const double fill_hi = std::min(hi, 1.0);
    best = std::max(best, fill(fill_hi));
    const double rc = std::cbrt(m * a0 / ((m + 3.0) * b0));
    if (rc < fill_hi) best = std::max(best, fill(rc));
    if (hi > 1.0) {
        // r^{m-s}: monotone, extremes at the endpoints
        best = std::max(best, std::pow(1.0, m - p.exponent));
        best = std::max(best, std::pow(hi, m - p.exponent));
    }
    return best;
}

/// Max of r^m * profile(r) over [0, hi], generic profile: dense log-spaced
/// scan with a golden-section refinement around the best cell.
inline double generic_weighted_sup(const RadialSpectrum& rs, double m, double hi) {
    if (!(hi > 0)) return 0.0;
    auto f = [&](double r) { return pow_real(r, m) * rs.profile(r); };
    const int n = 4096;
    double best = 0.0, best_r = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double r = hi * i / n;
        const double v = f(r);
        if (v > best) {
            best = v;
            best_r = r;
        }
    }
    double lo = std::max(0.0, best_r - hi / n), up = std::min(hi, best_r + hi / n);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = up - gr * (up - lo), d = lo + gr * (up - lo);
    for (int it = 0; it < 60; ++it) {
        if (f(c) < f(d))
            lo = c, c = d, d = lo + gr * (up - lo);
        else
            up = d, d = c, c = up - gr * (up - lo);
    }
    return std::max(best, f(0.5 * (lo + up)));
}

} // namespace detail

/// Evaluate tails of an analytic radial spectrum.  The pure power-law rule
/// uses closed forms (optionally disabled to cross-check the quadrature).
struct RadialTailOptions {
    bool use_closed_forms = true;
    double bessel_v_max = 512.0; // table span for unbounded profiles
};

inline double true_tail(const RadialSpectrum& rs, double pprime, double t,
                        const RadialTailOptions& opt = {}) {
    if (!(t > 0)) throw std::domain_error("true_tail: t must be positive");
    const double surface = sphere_surface(rs.dim());
    if (std::isinf(pprime)) {
        // all built-in rules are nonincreasing past their support start
        if (rs.support_bound() && t > *rs.support_bound()) return 0.0;
        if (auto* sh = std::get_if<ShellProfile>(&rs.rule()))
            return t <= sh->outer ? 1.0 : 0.0;
        return rs.profile(t);
    }
    if (!(pprime >= 1.0)) throw std::domain_error("true_tail: p' must be >= 1 or inf");
    if (!rs.in_lp(pprime))
        throw std::domain_error("true_tail: profile is not in L^{p'} for p' = " +
                                std::to_string(pprime));
    double mass = 0.0;
    if (auto* sh = std::get_if<ShellProfile>(&rs.rule())) {
        const double lo = std::max(t, sh->inner);
        mass = detail::power_integral(lo, std::max(lo, sh->outer), double(rs.dim()));
    } else if (rs.is_power_law() && opt.use_closed_forms) {
        const double s = rs.power_exponent();
        if (t < 1.0) mass += detail::radial_mass(rs, pprime, t, 1.0);
        // int_T^inf r^{d-1-sp'} dr, convergent since s p' > d
        const double T = std::max(t, 1.0);
        mass += std::pow(T, double(rs.dim()) - s * pprime) / (s * pprime - double(rs.dim()));
    } else if (rs.support_bound()) {
        mass = detail::radial_mass(rs, pprime, t, *rs.support_bound());
    } else {
        auto f = [&](double r) {
            return pow_real(rs.profile(r), pprime) * pow_real(r, double(rs.dim() - 1));
        };
        mass = integrate_to_infinity(f, t, std::max(t, 1.0) * 16.0);
    }
    return std::pow(surface * mass, 1.0 / pprime);
}

inline double modified_tail(const RadialSpectrum& rs, double pprime, double m, double t,
                            const RadialTailOptions& opt = {}) {
    if (!(t > 0)) throw std::domain_error("modified_tail: t must be positive");
    if (!(m > 0)) throw std::domain_error("modified_tail: m must be positive");
    const double surface = sphere_surface(rs.dim());
    if (std::isinf(pprime)) {
        const double outer = true_tail(rs, pprime, t, opt);
        double inner_hi = t;
        if (rs.support_bound()) inner_hi = std::min(inner_hi, *rs.support_bound());
        double weighted;
        if (auto* sh = std::get_if<ShellProfile>(&rs.rule())) {
            const double r = std::min(sh->outer, t);
            weighted = r >= sh->inner ? pow_real(r, m) : 0.0;
        } else if (rs.is_power_law() && opt.use_closed_forms) {
            weighted = detail::powerlaw_weighted_sup(std::get<PowerLawProfile>(rs.rule()), m,
                                                     inner_hi);
        } else {
            weighted = detail::generic_weighted_sup(rs, m, inner_hi);
        }
        return std::max(outer, weighted / pow_real(t, m));
    }
    if (!(pprime >= 1.0)) throw std::domain_error("modified_tail: p' must be >= 1 or inf");
    const double mp = m * pprime;
    double inner; // int_0^t r^{mp'} profile^{p'} r^{d-1} dr
    if (auto* sh = std::get_if<ShellProfile>(&rs.rule())) {
        const double hi = std::min(t, sh->outer);
        inner = detail::power_integral(std::min(sh->inner, hi), hi, mp + double(rs.dim()));
    } else if (rs.is_power_law() && opt.use_closed_forms) {
        const double s = rs.power_exponent();
        auto fill = [&](double r) {
            return pow_real(r, mp) * pow_real(rs.profile(r), pprime) *
                   pow_real(r, double(rs.dim() - 1));
        };
        inner = integrate_adaptive(fill, 0.0, std::min(t, 1.0));
        if (t > 1.0) inner += detail::power_integral(1.0, t, mp + double(rs.dim()) - s * pprime);
    } else {
        double hi = t;
        if (rs.support_bound()) hi = std::min(hi, *rs.support_bound());
        auto f = [&](double r) {
            return pow_real(r, mp) * pow_real(rs.profile(r), pprime) *
                   pow_real(r, double(rs.dim() - 1));
        };
        inner = integrate_adaptive(f, 0.0, hi);
    }
    const double outer = true_tail(rs, pprime, t, opt);
    return std::pow(surface * inner / pow_real(t, mp) + pow_real(outer, pprime), 1.0 / pprime);
}

inline double bessel_tail(const RadialSpectrum& rs, double pprime, double m, double t,
                          const RadialTailOptions& opt = {}) {
    if (rs.dim() < 2) throw std::domain_error("bessel_tail: requires dim >= 2");
    if (std::isinf(pprime)) throw std::domain_error("bessel_tail: requires p' < inf");
    if (!(pprime >= 1.0)) throw std::domain_error("bessel_tail: p' must be >= 1");
    if (!(t > 0)) throw std::domain_error("bessel_tail: t must be positive");
    if (!(m > 0)) throw std::domain_error("bessel_tail: m must be positive");
    const double alpha = 0.5 * m * pprime;
    const double surface = sphere_surface(rs.dim());
    double v_hi = opt.bessel_v_max;
    if (rs.support_bound()) v_hi = std::min(v_hi, *rs.support_bound() / t + 1.0);
    auto table = g_alpha_table(rs.dim(), alpha, v_hi);
    auto f = [&](double r) {
        return (*table)(r / t) * pow_real(rs.profile(r), pprime) *
               pow_real(r, double(rs.dim() - 1));
    };
    double hi = rs.support_bound() ? std::min(*rs.support_bound(), v_hi * t) : v_hi * t;
    double mass = integrate_adaptive(f, 0.0, hi);
    if (!rs.support_bound() && rs.is_power_law()) {
        // beyond the table span G oscillates about a constant level; use the
        // last-octave mean (the remainder is a tiny fraction of the total)
        auto g_mean_f = [&](double v) { return (*table)(v); };
        const double g_mean =
            integrate_gl(g_mean_f, 0.5 * v_hi, 0.9 * v_hi, 64) / (0.4 * v_hi);
        const double s = rs.power_exponent();
        mass += g_mean * std::pow(hi, double(rs.dim()) - s * pprime) /
                (s * pprime - double(rs.dim()));
    }
    return std::pow(surface * mass, 1.0 / pprime);
}

// ---------------------------------------------------------------------------
// profiles
// ---------------------------------------------------------------------------

template <class Spec>
DecayProfile tail_profile(const Spec& spec, const TailKind& kind, const DyadicGrid& t_grid) {
    if (t_grid.points.empty()) throw std::domain_error("tail_profile: empty grid");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(t_grid.points.size());
    for (double t : t_grid.points) {
        double v;
        switch (kind.variant) {
            case TailKind::Variant::True:
            case TailKind::Variant::SupTrue:
                v = true_tail(spec, kind.pprime, t);
                break;
            case TailKind::Variant::Modified:
            case TailKind::Variant::SupModified:
                v = modified_tail(spec, kind.pprime, kind.m, t);
                break;
            case TailKind::Variant::Bessel:
                v = bessel_tail(spec, kind.pprime, kind.m, t);
                break;
            default:
                throw std::logic_error("tail_profile: unknown kind");
        }
        pts.emplace_back(t, v);
    }
    return DecayProfile(DecayProfile::Role::T, std::move(pts));
}

} // namespace ftmc
