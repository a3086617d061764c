#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftmc/numerics.hpp"

namespace ftmc {

using cdouble = std::complex<double>;

/// Uniform periodized grid on the box [-L, L)^d.
///
/// Space samples sit at x_i = -L + i*spacing per axis, i = 0..N-1.
/// Frequency samples sit at xi_j = pi*j/L, j = -N/2..N/2-1, stored in
/// standard DFT order (0..N/2-1 then -N/2..-1) per axis.
struct GridSpec {
    int dim = 1;
    double half_extent = 1.0; // L
    int samples = 4;          // N per axis, even

    GridSpec() = default;
    GridSpec(int d, double L, int N) : dim(d), half_extent(L), samples(N) { validate(); }

    void validate() const {
        if (dim < 1)
            throw std::domain_error("GridSpec: dim must be >= 1, got " + std::to_string(dim));
        if (!(half_extent > 0))
            throw std::domain_error("GridSpec: half_extent must be positive");
        if (samples < 4 || samples % 2 != 0)
            throw std::domain_error("GridSpec: samples must be even and >= 4, got " +
                                    std::to_string(samples));
    }

    double spacing() const { return 2.0 * half_extent / samples; }
    double freq_spacing() const { return pi / half_extent; }
    double nyquist() const { return pi * samples / (2.0 * half_extent); }

    std::size_t size() const {
        std::size_t n = 1;
        for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(samples);
        return n;
    }

    double coord(int i) const { return -half_extent + i * spacing(); }

    /// Signed integer frequency index for DFT-ordered position j.
    int freq_index(int j) const { return j < samples / 2 ? j : j - samples; }
    double freq(int j) const { return freq_spacing() * freq_index(j); }

    bool operator==(const GridSpec& o) const = default;
};

namespace detail {

inline void check_finite(const std::vector<cdouble>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            throw std::invalid_argument(std::string(what) +
                                        ": non-finite value at flat index " + std::to_string(i));
    }
}

} // namespace detail

/// Complex samples of a function on the grid, row-major over axes.
struct SampledField {
    GridSpec grid;
    std::vector<cdouble> values;

    SampledField() = default;
    SampledField(GridSpec g, std::vector<cdouble> v) : grid(g), values(std::move(v)) {
        grid.validate();
        if (values.size() != grid.size())
            throw std::invalid_argument("SampledField: expected " + std::to_string(grid.size()) +
                                        " values, got " + std::to_string(values.size()));
        detail::check_finite(values, "SampledField");
    }

    static SampledField zeros(GridSpec g) {
        return SampledField(g, std::vector<cdouble>(g.size(), cdouble{0.0, 0.0}));
    }

    /// Sample a callable f(x) with x given as a pointer to dim coordinates.
    template <class F>
    static SampledField from_function(GridSpec g, F&& f) {
        g.validate();
        std::vector<cdouble> v(g.size());
        std::vector<double> x(g.dim, 0.0);
        std::vector<int> idx(g.dim, 0);
        for (std::size_t flat = 0; flat < v.size(); ++flat) {
            std::size_t rem = flat;
            for (int a = g.dim - 1; a >= 0; --a) {
                idx[a] = static_cast<int>(rem % g.samples);
                rem /= g.samples;
            }
            for (int a = 0; a < g.dim; ++a) x[a] = g.coord(idx[a]);
            v[flat] = f(std::span<const double>(x));
        }
        return SampledField(g, std::move(v));
    }
};

/// Discrete approximation of the forward transform
///   fhat(xi) = int e^{-i xi.x} f(x) dx,
/// i.e. coeffs[j] = spacing^d * sum_x e^{-i xi_j . x} values[x].
struct Spectrum {
    GridSpec grid;
    std::vector<cdouble> coeffs;

    Spectrum() = default;
    Spectrum(GridSpec g, std::vector<cdouble> c) : grid(g), coeffs(std::move(c)) {
        grid.validate();
        if (coeffs.size() != grid.size())
            throw std::invalid_argument("Spectrum: expected " + std::to_string(grid.size()) +
                                        " coeffs, got " + std::to_string(coeffs.size()));
        detail::check_finite(coeffs, "Spectrum");
    }

    static Spectrum zeros(GridSpec g) {
        return Spectrum(g, std::vector<cdouble>(g.size(), cdouble{0.0, 0.0}));
    }

    /// Sample a callable fhat(xi) on the frequency grid (DFT ordering).
    template <class F>
    static Spectrum from_function(GridSpec g, F&& f) {
        g.validate();
        std::vector<cdouble> c(g.size());
        std::vector<double> xi(g.dim, 0.0);
        std::vector<int> idx(g.dim, 0);
        for (std::size_t flat = 0; flat < c.size(); ++flat) {
            std::size_t rem = flat;
            for (int a = g.dim - 1; a >= 0; --a) {
                idx[a] = static_cast<int>(rem % g.samples);
                rem /= g.samples;
            }
            for (int a = 0; a < g.dim; ++a) xi[a] = g.freq(idx[a]);
            c[flat] = f(std::span<const double>(xi));
        }
        return Spectrum(g, std::move(c));
    }
};

/// Riemann-sum L^p norm: (sum |f|^p spacing^d)^{1/p}; grid max for p = inf.
inline double lp_norm(const SampledField& field, double p) {
    if (std::isinf(p)) {
        double best = 0.0;
        for (const auto& v : field.values) best = std::max(best, std::abs(v));
        return best;
    }
    if (!(p >= 1.0))
        throw std::domain_error("lp_norm: p must satisfy p >= 1 or p = inf");
    CompensatedSum acc;
    for (const auto& v : field.values) acc.add(pow_real(std::abs(v), p));
    double cell = pow_real(field.grid.spacing(), double(field.grid.dim));
    return std::pow(acc.value() * cell, 1.0 / p);
}

/// Frequency-side L^2 norm of the field via the grid Plancherel identity:
/// ||f||_2^2 = (2 pi)^{-d} sum_xi |coeffs|^2 dxi^d.
inline double l2_norm_spectral(const Spectrum& spec) {
    CompensatedSum acc;
    for (const auto& c : spec.coeffs) acc.add(std::norm(c));
    int d = spec.grid.dim;
    double w = pow_real(spec.grid.freq_spacing() / (2.0 * pi), double(d));
    return std::sqrt(acc.value() * w);
}

} // namespace ftmc
