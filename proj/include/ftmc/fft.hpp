#pragma once

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "ftmc/grid.hpp"

namespace ftmc {

namespace detail {

// FFTW planning is not thread-safe; execution of a private plan is.
inline std::mutex& fftw_plan_mutex() {
    static std::mutex mu;
    return mu;
}

struct FftwBuffer {
    fftw_complex* data = nullptr;
    explicit FftwBuffer(std::size_t n) {
        data = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (!data) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

/// Raw unnormalized DFT of the row-major array, any even size, out of place.
/// sign = FFTW_FORWARD gives sum_i v_i e^{-2 pi i i.j / N}.
inline std::vector<cdouble> raw_dft(const GridSpec& g, const std::vector<cdouble>& v, int sign) {
    const std::size_t n = g.size();
    FftwBuffer in(n), out(n);
    for (std::size_t i = 0; i < n; ++i) {
        in.data[i][0] = v[i].real();
        in.data[i][1] = v[i].imag();
    }
    std::vector<int> dims(g.dim, g.samples);
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_plan_mutex());
        plan = fftw_plan_dft(g.dim, dims.data(), in.data, out.data, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<cdouble> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = cdouble{out.data[i][0], out.data[i][1]};
    return r;
}

/// Multiply entry j by (-1)^{sum of signed frequency indices}.  This is the
/// phase e^{+-i pi sum j} linking the DFT (origin at index 0) to the grid
/// convention (origin at the box center).
inline void apply_center_phase(const GridSpec& g, std::vector<cdouble>& v) {
    const int N = g.samples;
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        std::size_t rem = flat;
        int parity = 0;
        for (int a = 0; a < g.dim; ++a) {
            parity += static_cast<int>(rem % N);
            rem /= N;
        }
        if (parity & 1) v[flat] = -v[flat];
    }
}

} // namespace detail

/// Forward transform: coeffs[j] = spacing^d sum_x e^{-i xi_j . x} values[x].
inline Spectrum dft(const SampledField& field) {
    detail::check_finite(field.values, "dft input");
    const GridSpec& g = field.grid;
    auto c = detail::raw_dft(g, field.values, FFTW_FORWARD);
    detail::apply_center_phase(g, c);
    const double scale = pow_real(g.spacing(), double(g.dim));
    for (auto& z : c) z *= scale;
    return Spectrum(g, std::move(c));
}

/// Inverse of dft: values[x] = (2 pi)^{-d} sum_xi e^{+i xi . x} coeffs[xi] dxi^d.
inline SampledField idft(const Spectrum& spectrum) {
    detail::check_finite(spectrum.coeffs, "idft input");
    const GridSpec& g = spectrum.grid;
    auto tmp = spectrum.coeffs;
    detail::apply_center_phase(g, tmp);
    auto v = detail::raw_dft(g, tmp, FFTW_BACKWARD);
    const double scale = pow_real(g.freq_spacing() / (2.0 * pi), double(g.dim));
    for (auto& z : v) z *= scale;
    return SampledField(g, std::move(v));
}

} // namespace ftmc
