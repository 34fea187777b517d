#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "fdref.hpp"
#include "motion.hpp"
#include "quadrature.hpp"
#include "spectral.hpp"

namespace movwall {

inline constexpr std::size_t kQuadraturePoints = 2001;

/// A sampled observable: values[i] is the value at times[i].
struct TimeSeries {
    std::string name;
    std::vector<double> times;
    std::vector<double> values;
};

using Sampler = std::function<cplx(double)>;

inline std::vector<double> uniform_grid(double l, std::size_t n_points)
{
    std::vector<double> xs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) xs[i] = l * double(i) / double(n_points - 1);
    xs.back() = l;
    return xs;
}

inline Sampler spectral_sampler(const SpectralState& s, const WallMotion& m)
{
    return SpectralWave(s, m);
}

// ---- norm: spectral norm(SpectralState) lives in spectral.hpp, grid norm in fdref.hpp.

/// Simpson norm of the reconstructed spectral wavefunction.
inline double quadrature_norm(const SpectralState& s, const WallMotion& m, std::size_t n_points = kQuadraturePoints)
{
    const double l = m.length(s.t);
    const auto xs = uniform_grid(l, n_points);
    const auto psi = reconstruct(s, m, xs);
    std::vector<double> dens(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) dens[i] = std::norm(psi[i]);
    return quad::simpson<double>(dens, l / double(n_points - 1));
}

namespace detail {

inline double position_from_density(std::span<const double> xs, std::span<const double> dens, double h)
{
    std::vector<double> weighted(dens.size());
    for (std::size_t i = 0; i < dens.size(); ++i) weighted[i] = xs[i] * dens[i];
    const double p = quad::simpson<double>(dens, h);
    if (!(p > 0.0)) throw DomainError("mean_position: zero norm");
    return quad::simpson<double>(weighted, h) / p;
}

} // namespace detail

inline double mean_position(const SpectralState& s, const WallMotion& m, std::size_t n_points = kQuadraturePoints)
{
    const double l = m.length(s.t);
    const auto xs = uniform_grid(l, n_points);
    const auto psi = reconstruct(s, m, xs);
    std::vector<double> dens(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) dens[i] = std::norm(psi[i]);
    return detail::position_from_density(xs, dens, l / double(n_points - 1));
}

/// Grid states integrate on their own nodes (N + 1 points, boundaries included).
inline double mean_position(const GridState& s, const WallMotion& m)
{
    const double l = m.length(s.t);
    const auto xs = uniform_grid(l, std::size_t(s.N) + 1);
    std::vector<double> dens(xs.size(), 0.0);
    for (std::size_t i = 0; i < s.phi.size(); ++i) dens[i + 1] = std::norm(s.phi[i]);
    return detail::position_from_density(xs, dens, l / s.N);
}

/// <H> = sum_k |b_k|^2 E_k(t) / sum_k |b_k|^2.
inline double mean_energy(const SpectralState& s, const WallMotion& m)
{
    const double l = m.length(s.t);
    double num = 0.0, den = 0.0;
    for (int k = 1; k <= s.k_max(); ++k) {
        const double w = std::norm(s.b(k));
        num += w * energy(k, l);
        den += w;
    }
    if (!(den > 0.0)) throw DomainError("mean_energy: zero norm");
    return num / den;
}

/// <H> = int conj(psi) (-psi_xx) dx / int |psi|^2 dx with central differences on the grid.
inline double mean_energy(const GridState& s, const WallMotion& m)
{
    const double l = m.length(s.t);
    const double h = l / s.N;
    const std::size_t M = s.phi.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const cplx left = i == 0 ? cplx{} : s.phi[i - 1];
        const cplx right = i + 1 == M ? cplx{} : s.phi[i + 1];
        const cplx minus_d2 = -(right - 2.0 * s.phi[i] + left) / (h * h);
        num += (std::conj(s.phi[i]) * minus_d2).real();
        den += std::norm(s.phi[i]);
    }
    if (!(den > 0.0)) throw DomainError("mean_energy: zero norm");
    return num / den;
}

/// |psi|^2 on n_points uniformly spaced positions over [0, l(t)].
inline std::vector<double> density(const Sampler& psi, double l, std::size_t n_points)
{
    std::vector<double> out;
    out.reserve(n_points);
    for (double x : uniform_grid(l, n_points)) out.push_back(std::norm(psi(x)));
    return out;
}

inline std::vector<double> density(const SpectralState& s, const WallMotion& m, std::size_t n_points)
{
    const double l = m.length(s.t);
    const auto psi = reconstruct(s, m, uniform_grid(l, n_points));
    std::vector<double> out(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) out[i] = std::norm(psi[i]);
    return out;
}

inline std::vector<double> density(const GridState& s, const WallMotion& m, std::size_t n_points)
{
    return density(fd_sampler(s, m), m.length(s.t), n_points);
}

/// (1/l) int_0^l |reference - approx|^2 dx by Simpson on n_points.
inline double average_error(const Sampler& approx, const Sampler& reference, double l,
                            std::size_t n_points = kQuadraturePoints)
{
    const auto xs = uniform_grid(l, n_points);
    std::vector<double> diff(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) diff[i] = std::norm(reference(xs[i]) - approx(xs[i]));
    return quad::simpson<double>(diff, l / double(n_points - 1)) / l;
}

/// Pointwise |1 - approx / reference| on a shared time grid.
inline TimeSeries relative_x_error(const TimeSeries& approx, const TimeSeries& reference)
{
    if (approx.times.size() != reference.times.size() || approx.values.size() != reference.values.size() ||
        approx.values.size() != approx.times.size())
        throw DomainError("relative_x_error: time grids differ in length");
    TimeSeries out{"relative_x_error", approx.times, {}};
    out.values.reserve(approx.values.size());
    for (std::size_t i = 0; i < approx.times.size(); ++i) {
        const double tol = 1e-12 * std::max(1.0, std::abs(reference.times[i]));
        if (std::abs(approx.times[i] - reference.times[i]) > tol)
            throw DomainError("relative_x_error: time grids differ at index " + std::to_string(i));
        out.values.push_back(std::abs(1.0 - approx.values[i] / reference.values[i]));
    }
    return out;
}

} // namespace movwall
