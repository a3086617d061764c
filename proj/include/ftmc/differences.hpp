#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "ftmc/fft.hpp"
#include "ftmc/grid.hpp"

namespace ftmc {

/// Order of a difference operator; any positive real, integer orders get the
/// direct alternating-binomial form in space.
struct DifferenceOrder {
    double m = 1.0;

    DifferenceOrder() = default;
    DifferenceOrder(double order) : m(order) {
        if (!(m > 0)) throw std::domain_error("DifferenceOrder: order must be positive");
    }
    bool is_integer() const { return is_integer_order(m); }
    int as_integer() const { return static_cast<int>(std::llround(m)); }
};

/// Result of snapping a step vector to whole grid cells.
struct SnappedStep {
    std::vector<int> cells;     // per-axis shift in cells
    std::vector<double> step;   // snapped step = cells * spacing
    double distance = 0.0;      // |y - snapped|
    bool zero = true;           // snapped to the zero vector
};

inline SnappedStep snap_step(const GridSpec& grid, std::span<const double> y) {
    if (static_cast<int>(y.size()) != grid.dim)
        throw std::invalid_argument("snap_step: step dimension mismatch");
    SnappedStep s;
    s.cells.resize(grid.dim);
    s.step.resize(grid.dim);
    const double h = grid.spacing();
    double dist2 = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
        s.cells[a] = static_cast<int>(std::llround(y[a] / h));
        s.step[a] = s.cells[a] * h;
        const double e = y[a] - s.step[a];
        dist2 += e * e;
        if (s.cells[a] != 0) s.zero = false;
    }
    s.distance = std::sqrt(dist2);
    return s;
}

namespace detail {

/// Shift the row-major array by `cells` with periodic wraparound:
/// out[i] = in[i + cells mod N] per axis (a shift of the argument, f(x + y)).
inline std::vector<cdouble> periodic_shift(const GridSpec& g, const std::vector<cdouble>& in,
                                           const std::vector<int>& cells) {
    const int N = g.samples;
    std::vector<int> offs(g.dim);
    for (int a = 0; a < g.dim; ++a) offs[a] = ((cells[a] % N) + N) % N;
    std::vector<cdouble> out(in.size());
    std::vector<int> idx(g.dim, 0);
    for (std::size_t flat = 0; flat < in.size(); ++flat) {
        std::size_t src = 0;
        std::size_t rem = flat;
        // decode indices most-significant axis first
        std::size_t stride = in.size();
        for (int a = 0; a < g.dim; ++a) {
            stride /= N;
            int ia = static_cast<int>(rem / stride);
            rem %= stride;
            int ja = ia + offs[a];
            if (ja >= N) ja -= N;
            src = src * N + static_cast<std::size_t>(ja);
        }
        out[flat] = in[src];
    }
    return out;
}

} // namespace detail

/// Integer-order difference sum_k (-1)^{m-k} C(m,k) f(x + k y) with periodic
/// wraparound.  y is snapped to the nearest grid vector; the zero step yields
/// the zero field (the binomial coefficients cancel).
inline SampledField finite_difference(const SampledField& field, std::span<const double> y,
                                      const DifferenceOrder& order) {
    if (!order.is_integer())
        throw std::invalid_argument(
            "finite_difference: non-integer order; use fractional_difference");
    const GridSpec& g = field.grid;
    const int m = order.as_integer();
    SnappedStep snapped = snap_step(g, y);
    if (snapped.zero) return SampledField::zeros(g);

    std::vector<cdouble> acc(g.size(), cdouble{0.0, 0.0});
    std::vector<int> cells(g.dim);
    for (int k = 0; k <= m; ++k) {
        const double coef = ((m - k) % 2 == 0 ? 1.0 : -1.0) * binomial(m, k);
        for (int a = 0; a < g.dim; ++a) cells[a] = k * snapped.cells[a];
        auto shifted = detail::periodic_shift(g, field.values, cells);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coef * shifted[i];
    }
    return SampledField(g, std::move(acc));
}

/// Difference multiplier (e^{i y.xi} - 1)^m at a single frequency, principal
/// branch for fractional m with the convention 0^m = 0.
inline cdouble difference_multiplier(double y_dot_xi, double m) {
    const cdouble z = std::polar(1.0, y_dot_xi) - 1.0;
    if (z == cdouble{0.0, 0.0}) return {0.0, 0.0};
    if (is_integer_order(m) && m <= 64) {
        cdouble r{1.0, 0.0};
        for (int k = 0; k < static_cast<int>(m); ++k) r *= z;
        return r;
    }
    return std::exp(m * std::log(z)); // principal log
}

/// Frequency-side difference of any positive order: multiply coefficients
/// pointwise by (e^{i y.xi} - 1)^m.  y is not snapped.
inline Spectrum fractional_difference(const Spectrum& spectrum, std::span<const double> y,
                                      const DifferenceOrder& order) {
    const GridSpec& g = spectrum.grid;
    if (static_cast<int>(y.size()) != g.dim)
        throw std::invalid_argument("fractional_difference: step dimension mismatch");
    const int N = g.samples;
    std::vector<cdouble> out(spectrum.coeffs.size());
    std::vector<double> axis(g.dim * N);
    for (int a = 0; a < g.dim; ++a)
        for (int j = 0; j < N; ++j) axis[a * N + j] = y[a] * g.freq(j);
    std::vector<int> idx(g.dim, 0);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        double dot = 0.0;
        std::size_t rem = flat;
        for (int a = g.dim - 1; a >= 0; --a) {
            dot += axis[a * N + static_cast<int>(rem % N)];
            rem /= N;
        }
        out[flat] = spectrum.coeffs[flat] * difference_multiplier(dot, order.m);
    }
    return Spectrum(g, std::move(out));
}

namespace detail {

/// Apply fn(flat_index, y_dot_xi) over the whole frequency grid.
template <class Fn>
void for_each_freq_dot(const GridSpec& g, std::span<const double> y, Fn&& fn) {
    const int N = g.samples;
    std::vector<double> axis(static_cast<std::size_t>(g.dim) * N);
    for (int a = 0; a < g.dim; ++a)
        for (int j = 0; j < N; ++j) axis[static_cast<std::size_t>(a) * N + j] = y[a] * g.freq(j);
    if (g.dim == 1) {
        for (int j = 0; j < N; ++j) fn(static_cast<std::size_t>(j), axis[j]);
        return;
    }
    if (g.dim == 2) {
        std::size_t flat = 0;
        for (int j0 = 0; j0 < N; ++j0) {
            const double d0 = axis[j0];
            const double* a1 = axis.data() + N;
            for (int j1 = 0; j1 < N; ++j1, ++flat) fn(flat, d0 + a1[j1]);
        }
        return;
    }
    std::vector<int> idx(g.dim, 0);
    std::vector<double> partial(g.dim + 1, 0.0);
    std::size_t flat = 0;
    const std::size_t total = g.size();
    while (flat < total) {
        for (int a = 0; a < g.dim; ++a)
            partial[a + 1] = partial[a] + axis[static_cast<std::size_t>(a) * N + idx[a]];
        fn(flat, partial[g.dim]);
        ++flat;
        for (int a = g.dim - 1; a >= 0; --a) {
            if (++idx[a] < N) break;
            idx[a] = 0;
        }
    }
}

} // namespace detail

/// Nonnegative weights (2 pi)^{-d} |coeffs|^2 dxi^d used by every p=2
/// frequency-side evaluation; build once per spectrum and reuse.
struct SpectralWeights {
    GridSpec grid;
    std::vector<double> w;

    explicit SpectralWeights(const Spectrum& spec) : grid(spec.grid), w(spec.coeffs.size()) {
        const double scale =
            pow_real(spec.grid.freq_spacing() / (2.0 * pi), double(spec.grid.dim));
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(spec.coeffs[i]) * scale;
    }

    /// ||Delta_y^m f||_2^2 = sum w * |2 sin(y.xi/2)|^{2m}; exact for any real
    /// y because only the multiplier modulus enters.
    double delta2(std::span<const double> y, double m) const {
        CompensatedSum acc;
        const double* wp = w.data();
        if (m == 1.0) {
            detail::for_each_freq_dot(grid, y, [&](std::size_t i, double u) {
                acc.add(wp[i] * (2.0 - 2.0 * std::cos(u)));
            });
        } else if (m == 2.0) {
            detail::for_each_freq_dot(grid, y, [&](std::size_t i, double u) {
                const double b = 2.0 - 2.0 * std::cos(u);
                acc.add(wp[i] * b * b);
            });
        } else {
            detail::for_each_freq_dot(grid, y, [&](std::size_t i, double u) {
                acc.add(wp[i] * pow_real(2.0 - 2.0 * std::cos(u), m));
            });
        }
        return acc.value();
    }
};

/// delta_{p,m}[f](y) = ||Delta_y^m f||_p.
///
/// p = 2 goes through frequency space (no snapping, any order); integer
/// orders with p != 2 use the spatial path on the snapped step; fractional
/// orders with p != 2 materialize the difference by idft first.
inline double delta(const SampledField& field, std::span<const double> y, double p,
                    const DifferenceOrder& order) {
    if (p == 2.0) {
        SpectralWeights sw(dft(field));
        return std::sqrt(sw.delta2(y, order.m));
    }
    if (order.is_integer()) return lp_norm(finite_difference(field, y, order), p);
    return lp_norm(idft(fractional_difference(dft(field), y, order)), p);
}

inline double delta(const Spectrum& spectrum, std::span<const double> y, double p,
                    const DifferenceOrder& order) {
    if (p == 2.0) {
        SpectralWeights sw(spectrum);
        return std::sqrt(sw.delta2(y, order.m));
    }
    if (order.is_integer()) return lp_norm(finite_difference(idft(spectrum), y, order), p);
    return lp_norm(idft(fractional_difference(spectrum, y, order)), p);
}

} // namespace ftmc
